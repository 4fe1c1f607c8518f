"""Command-line front end emitting deterministic JSON and CSV artifacts.

Four subcommands: ``measures`` (one state file to a measure report),
``simulate`` (two-qutrit trace CSV), ``stats`` (correlation report for a
pair of local observables), ``verify`` (partial-order sweep report).

Every float is printed with 17 significant digits and no locale
dependence, so reruns with identical inputs are byte-identical. Exit
codes: 0 success, 2 usage or parse failure, 3 domain failure
(normalization, Hermiticity, degenerate dimension).
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from dataclasses import asdict
from typing import Any, Sequence

import numpy as np

from .errors import DegenerateDimensionError, NormalizationError
from .measures import all_measures
from .order import run_order_sweep
from .qutrit import BASIS_LABELS, case_initial_state, simulate, spin1_matrices
from .schmidt import BipartiteState
from .stats import ObservableOperator, lift_a, lift_b, uncertainty_check

FILE_NORM_TOL = 1e-8

TRACE_HEADER = (
    "t,lambda1,lambda2,lambda3,concurrence,tangle,robustness,schmidt_number,"
    + ",".join(f"p_{label}" for label in BASIS_LABELS)
)

_PAULI = {
    "sx": np.array([[0, 1], [1, 0]], dtype=np.complex128),
    "sy": np.array([[0, -1j], [1j, 0]], dtype=np.complex128),
    "sz": np.array([[1, 0], [0, -1]], dtype=np.complex128),
}


class UsageError(Exception):
    """Bad flags or unparseable input files (exit 2)."""


def _format_float(value: float) -> str:
    return format(float(value), ".17g")


def _render_json(value: Any, indent: int = 0) -> str:
    """Serialize with .17g floats; dict order is preserved as given."""
    pad = " " * indent
    inner = " " * (indent + 2)
    if isinstance(value, dict):
        if not value:
            return "{}"
        rows = [f'{inner}{json.dumps(key)}: {_render_json(item, indent + 2)}' for key, item in value.items()]
        return "{\n" + ",\n".join(rows) + "\n" + pad + "}"
    if isinstance(value, (list, tuple)):
        if not value:
            return "[]"
        rows = [f"{inner}{_render_json(item, indent + 2)}" for item in value]
        return "[\n" + ",\n".join(rows) + "\n" + pad + "]"
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, (int, np.integer)):
        return str(int(value))
    if isinstance(value, complex):
        return "[" + _format_float(value.real) + ", " + _format_float(value.imag) + "]"
    if isinstance(value, (float, np.floating)):
        return _format_float(value)
    if isinstance(value, str):
        return json.dumps(value)
    raise TypeError(f"cannot render {type(value)!r}")


def _emit_json(document: dict[str, Any]) -> None:
    sys.stdout.write(_render_json({"format_version": 1, **document}) + "\n")


def _load_state_file(path: str) -> BipartiteState:
    """Parse a StateFile: dims plus row-major [re, im] amplitude pairs.

    Schema problems are usage errors; a norm off by more than 1e-8 is a
    domain error. Inside that tolerance the amplitudes are renormalized,
    since file rounding is expected.
    """
    try:
        with open(path, "r", encoding="utf-8") as handle:
            raw = json.load(handle)
    except OSError as exc:
        raise UsageError(f"cannot read state file {path}: {exc}") from exc
    except json.JSONDecodeError as exc:
        raise UsageError(f"state file {path} is not valid JSON: {exc}") from exc
    if not isinstance(raw, dict):
        raise UsageError("state file must be a JSON object")
    try:
        dim_a = int(raw["dim_a"])
        dim_b = int(raw["dim_b"])
        pairs = raw["amplitudes"]
    except (KeyError, TypeError, ValueError) as exc:
        raise UsageError(f"state file is missing or mistypes a field: {exc}") from exc
    if dim_a < 1 or dim_b < 1:
        raise UsageError(f"dimensions must be positive, got {dim_a} x {dim_b}")
    if not isinstance(pairs, list) or len(pairs) != dim_a * dim_b:
        raise UsageError(
            f"expected {dim_a * dim_b} amplitude pairs, got "
            f"{len(pairs) if isinstance(pairs, list) else type(pairs).__name__}"
        )
    amplitudes = np.empty(dim_a * dim_b, dtype=np.complex128)
    for k, pair in enumerate(pairs):
        if not isinstance(pair, list) or len(pair) != 2:
            raise UsageError(f"amplitude {k} must be a [re, im] pair")
        try:
            amplitudes[k] = complex(float(pair[0]), float(pair[1]))
        except (TypeError, ValueError) as exc:
            raise UsageError(f"amplitude {k} is not numeric: {exc}") from exc
    norm = float(np.linalg.norm(amplitudes))
    if abs(norm - 1.0) > FILE_NORM_TOL:
        raise NormalizationError(abs(norm - 1.0), what=f"state file {path}")
    return BipartiteState.renormalized(dim_a, dim_b, amplitudes)


def _parse_matrix_entry(entry: Any, where: str) -> complex:
    if isinstance(entry, (int, float)):
        return complex(entry)
    if isinstance(entry, list) and len(entry) == 2:
        try:
            return complex(float(entry[0]), float(entry[1]))
        except (TypeError, ValueError):
            pass
    raise UsageError(f"{where} must be a number or a [re, im] pair")


def _parse_observable(spec: str, dim: int, which: str) -> ObservableOperator:
    """Resolve an observable spec for one factor of dimension ``dim``.

    Builtins: sx, sy, sz (Pauli matrices for dimension 2, spin-1 matrices
    for dimension 3) and p0..p<dim-1> (basis projectors). Anything
    starting with "[" is an inline JSON matrix whose entries are numbers
    or [re, im] pairs; it must be Hermitian.
    """
    name = spec.strip()
    if name in ("sx", "sy", "sz"):
        if dim == 2:
            matrix = _PAULI[name]
        elif dim == 3:
            matrix = getattr(spin1_matrices(), name)
        else:
            raise UsageError(f"{which}: builtin {name} exists for dimensions 2 and 3, not {dim}")
    elif name.startswith("p") and name[1:].isdigit():
        index = int(name[1:])
        if index >= dim:
            raise UsageError(f"{which}: projector {name} is out of range for dimension {dim}")
        matrix = np.zeros((dim, dim), dtype=np.complex128)
        matrix[index, index] = 1.0
    elif name.startswith("["):
        try:
            rows = json.loads(name)
        except json.JSONDecodeError as exc:
            raise UsageError(f"{which}: inline matrix is not valid JSON: {exc}") from exc
        if not isinstance(rows, list) or len(rows) != dim or any(
            not isinstance(row, list) or len(row) != dim for row in rows
        ):
            raise UsageError(f"{which}: inline matrix must be {dim} x {dim}")
        matrix = np.array(
            [
                [_parse_matrix_entry(entry, f"{which} entry ({i},{j})") for j, entry in enumerate(row)]
                for i, row in enumerate(rows)
            ],
            dtype=np.complex128,
        )
    else:
        raise UsageError(f"{which}: unknown observable spec {spec!r}")
    return ObservableOperator(matrix)  # Hermiticity failures are domain errors


def _parse_dims(text: str) -> list[tuple[int, int]]:
    dims = []
    for chunk in text.split(","):
        parts = chunk.strip().lower().split("x")
        if len(parts) != 2 or not all(p.isdigit() for p in parts):
            raise UsageError(f"bad dimension pair {chunk!r}; expected forms like 3x3")
        dims.append((int(parts[0]), int(parts[1])))
    if not dims:
        raise UsageError("empty dimension list")
    return dims


def _default_seed(explicit: int | None) -> int:
    if explicit is not None:
        return explicit
    env = os.environ.get("SCHMIDT_LAB_SEED")
    if env is not None:
        try:
            return int(env)
        except ValueError as exc:
            raise UsageError(f"SCHMIDT_LAB_SEED must be an integer, got {env!r}") from exc
    return 0


def _cmd_measures(args: argparse.Namespace) -> int:
    state = _load_state_file(args.state)
    report = all_measures(state)
    _emit_json(asdict(report))
    return 0


def _cmd_simulate(args: argparse.Namespace) -> int:
    if args.steps < 2:
        raise UsageError(f"--steps must be >= 2, got {args.steps}")
    if not args.t_max > 0:
        raise UsageError(f"--t-max must be positive, got {args.t_max}")
    if args.case is not None:
        psi0 = case_initial_state(args.case)
    else:
        state = _load_state_file(args.state)
        if (state.dim_a, state.dim_b) != (3, 3):
            raise UsageError(
                f"simulate needs a 3 x 3 state, got {state.dim_a} x {state.dim_b}"
            )
        psi0 = state.amplitudes
    grid = np.linspace(0.0, args.t_max, args.steps)
    trace = simulate(psi0, grid, omega=args.omega)
    lines = [TRACE_HEADER]
    for k in range(trace.times.size):
        report = trace.measures[k]
        row = [
            trace.times[k],
            *trace.lambdas[k],
            report.concurrence_norm,
            report.tangle_norm,
            report.robustness_norm,
            report.schmidt_number_norm,
            *trace.projector_expectations[k],
        ]
        lines.append(",".join(_format_float(value) for value in row))
    text = "\n".join(lines) + "\n"
    if args.out is not None:
        try:
            with open(args.out, "w", encoding="utf-8", newline="") as handle:
                handle.write(text)
        except OSError as exc:
            raise UsageError(f"cannot write {args.out}: {exc}") from exc
    else:
        sys.stdout.write(text)
    return 0


def _cmd_stats(args: argparse.Namespace) -> int:
    state = _load_state_file(args.state)
    obs_a = _parse_observable(args.observable_a, state.dim_a, "--observable-a")
    obs_b = _parse_observable(args.observable_b, state.dim_b, "--observable-b")
    report = uncertainty_check(
        lift_a(obs_a, state.dim_b),
        lift_b(obs_b, state.dim_a),
        state.amplitudes,
    )
    _emit_json(asdict(report))
    return 0


def _cmd_verify(args: argparse.Namespace) -> int:
    if args.samples < 1:
        raise UsageError(f"--samples must be >= 1, got {args.samples}")
    dims = _parse_dims(args.dims)
    seed = _default_seed(args.seed)
    report = run_order_sweep(dims, args.samples, seed)
    _emit_json(asdict(report))
    clean = report.violations_k_t_c == 0 and report.violations_k_r_c == 0
    witnessed = (
        report.witness_r_gt_t.robustness_norm > report.witness_r_gt_t.tangle_norm
        and report.witness_t_gt_r.tangle_norm > report.witness_t_gt_r.robustness_norm
    )
    return 0 if clean and witnessed else 1


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="schmidt-lab",
        description=(
            "Schmidt decompositions, normalized entanglement measures, "
            "two-qutrit Heisenberg dynamics, and observable statistics."
        ),
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p_measures = sub.add_parser("measures", help="measure report for one state file")
    p_measures.add_argument("state", help="path to a state JSON file")
    p_measures.set_defaults(func=_cmd_measures)

    p_simulate = sub.add_parser("simulate", help="two-qutrit Heisenberg trace CSV")
    source = p_simulate.add_mutually_exclusive_group(required=True)
    source.add_argument("--case", type=int, choices=(0, 1, 2, 3), help="canonical initial state")
    source.add_argument("--state", help="path to a 3x3 state JSON file")
    p_simulate.add_argument("--t-max", type=float, required=True, help="final time in ps")
    p_simulate.add_argument("--steps", type=int, required=True, help="number of grid points (>= 2)")
    p_simulate.add_argument("--omega", type=float, default=1.0, help="coupling in rad/ps (default 1)")
    p_simulate.add_argument("--out", help="write CSV here instead of standard output")
    p_simulate.set_defaults(func=_cmd_simulate)

    p_stats = sub.add_parser("stats", help="correlation report for two local observables")
    p_stats.add_argument("state", help="path to a state JSON file")
    p_stats.add_argument("--observable-a", required=True, help="spec for the factor-1 observable")
    p_stats.add_argument("--observable-b", required=True, help="spec for the factor-2 observable")
    p_stats.set_defaults(func=_cmd_stats)

    p_verify = sub.add_parser("verify", help="partial-order sweep over Haar states")
    p_verify.add_argument("--samples", type=int, default=1000, help="Haar samples per dimension pair")
    p_verify.add_argument("--dims", default="2x2,3x3,4x4", help="comma list like 2x2,3x3")
    p_verify.add_argument("--seed", type=int, default=None, help="RNG seed (falls back to SCHMIDT_LAB_SEED, then 0)")
    p_verify.set_defaults(func=_cmd_verify)
    return parser


def main(argv: Sequence[str] | None = None) -> int:
    parser = _build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except (NormalizationError, DegenerateDimensionError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 3
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 3


def entry_point() -> None:
    raise SystemExit(main())


if __name__ == "__main__":
    entry_point()
