"""Command-line interface.

Exit codes: 0 success, 1 verification violation, 2 input error.
"""

from __future__ import annotations

import argparse
import json
import sys

from . import __version__
from .bounds import BoundReport, bound_corollary, bound_theorem1, bound_theorem2
from .gpt import CATALOG, gpt_norm, parse_operation
from .statefile import StateFileError, dumps, read_state
from .states import EXAMPLE_DCT_WEIGHTS, dct_state, random_mixed_state, random_pure_state
from .tensor_core import PureState, SystemDims, outer_product
from .verify import SUITES, run_suite

EXIT_OK, EXIT_VIOLATION, EXIT_INPUT = 0, 1, 2
THEOREMS = {"t1": bound_theorem1, "t2": bound_theorem2, "corollary": bound_corollary}


class InputError(Exception):
    pass


def _fmt(x: float) -> str:
    return f"{x:.6g}"


def _load_density(path: str):
    if not path:
        raise InputError("--state is required")
    try:
        state = read_state(path)
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc.strerror or exc}") from exc
    except StateFileError as exc:
        raise InputError(f"{path}: {exc}") from exc
    return outer_product(state) if isinstance(state, PureState) else state


def _is_named(token: str) -> bool:
    key = token.strip().upper().replace("_", "")
    return key in CATALOG or key in ("IDENTITY", "ID")


def _parse_ops(text: str | None):
    if not text:
        return list(CATALOG.values())
    ops = []
    try:
        # "Y1,Y4" lists named operations; "cA,rBC" is one operation given by its slots
        for group in filter(str.strip, text.split(";")):
            tokens = [t for t in group.split(",") if t.strip()]
            if all(_is_named(t) for t in tokens):
                ops += [parse_operation(t) for t in tokens]
            else:
                ops.append(parse_operation(group))
    except ValueError as exc:
        raise InputError(str(exc)) from exc
    return ops


def _parse_dims(text: str) -> SystemDims:
    try:
        return SystemDims.coerce(int(x) for x in text.split(","))
    except ValueError as exc:
        raise InputError(f"bad --dims {text!r}: {exc}") from exc


def _emit(payload: dict, table: list[str], fmt: str) -> None:
    if fmt == "json":
        print(json.dumps(payload, indent=2))
    else:
        print("\n".join(table))


def _norms_payload(state, ops, tol: float) -> dict:
    norms = {y.name: gpt_norm(state, y) for y in ops}
    flags = {k: v > 1.0 + tol for k, v in norms.items()}
    return {"dims": list(state.dims), "norms": norms, "entangled_flags": flags, "entangled": any(flags.values())}


def _norms_table(payload: dict) -> list[str]:
    lines = [f"dims {tuple(payload['dims'])}", f"{'operation':<16} {'trace norm':>12}  >1"]
    for k, v in payload["norms"].items():
        lines.append(f"{k:<16} {_fmt(v):>12}  {'yes' if payload['entangled_flags'][k] else 'no'}")
    lines.append(f"entangled: {'true' if payload['entangled'] else 'false'}")
    return lines


def _report_table(rep: BoundReport) -> list[str]:
    lines = [f"theorem {rep.theorem}  dims {rep.dims}"]
    lines.append(f"{'operation':<10} {'norm':>10} {'coeff':>10} {'term':>12}")
    for k in rep.bound_terms:
        lines.append(f"{k:<10} {_fmt(rep.norms[k]):>10} {_fmt(rep.coefficients[k]):>10} {_fmt(rep.bound_terms[k]):>12}")
    lines.append(f"lower bound: {_fmt(rep.lower_bound)}" + ("  (conditional)" if rep.conditional else ""))
    lines += [f"note: {n}" for n in rep.notes]
    return lines


def cmd_norms(args) -> int:
    state = _load_density(args.state)
    payload = _norms_payload(state, _parse_ops(args.ops), args.tolerance)
    _emit(payload, _norms_table(payload), args.format)
    return EXIT_OK


def cmd_bound(args) -> int:
    state = _load_density(args.state)
    try:
        rep = THEOREMS[args.theorem](state)
    except ValueError as exc:
        raise InputError(str(exc)) from exc
    _emit(rep.to_dict(), _report_table(rep), args.format)
    return EXIT_OK


def cmd_verify(args) -> int:
    try:
        res = run_suite(args.suite, samples=args.samples, seed=args.seed, tolerance=args.tolerance)
    except ValueError as exc:
        raise InputError(str(exc)) from exc
    lines = [
        f"suite {res.suite}: samples={res.samples} seed={res.seed} tolerance={res.tolerance:g}",
        f"{'check':<28} {'violations':>10} {'worst':>14}",
    ]
    for name, c in res.checks.items():
        lines.append(f"{name:<28} {c['violations']:>10} {c['worst']:>14.6g}")
    lines.append(f"violations: {res.violations}  worst residual: {res.worst_residual:.6g}  wall time: {res.wall_time:.2f}s")
    lines.append("PASS" if res.passed else "FAIL")
    _emit(res.to_dict(), lines, args.format)
    return EXIT_OK if res.passed else EXIT_VIOLATION


def cmd_demo_dct(args) -> int:
    state = dct_state(EXAMPLE_DCT_WEIGHTS)
    norms = _norms_payload(state, CATALOG.values(), args.tolerance)
    rep = bound_theorem1(state)
    w = EXAMPLE_DCT_WEIGHTS
    payload = {
        "weights": {"lambda0_plus": w.lambda0_plus, "lambda0_minus": w.lambda0_minus, "lambdas": list(w.lambdas)},
        **norms,
        "bound_terms": rep.bound_terms,
        "lower_bound": rep.lower_bound,
        "theorem": rep.theorem,
        "conditional": rep.conditional,
    }
    lines = ["DCT state  l0+=1/3  l1=l3=1/6  l0-=l2=0"] + _norms_table(norms)[1:-1] + [""] + _report_table(rep)
    lines.append(f"verdict: {'entangled' if norms['entangled'] else 'no violation detected'}")
    _emit(payload, lines, args.format)
    return EXIT_OK


def cmd_random(args) -> int:
    dims = _parse_dims(args.dims)
    seed = args.seed
    if args.kind == "pure":
        state = random_pure_state(dims, seed)
    else:
        rank = args.rank or dims.total
        try:
            state = random_mixed_state(dims, rank, seed)
        except ValueError as exc:
            raise InputError(str(exc)) from exc
    text = dumps(state)
    if args.output:
        with open(args.output, "w", encoding="utf-8") as fh:
            fh.write(text + "\n")
    else:
        print(text)
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="triconc", description="GPT-based concurrence lower bounds for tripartite states")
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("table", "json"), default="table")
    common.add_argument("--tolerance", type=float, default=1e-9)
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("norms", parents=[common], help="trace norms of GPT images")
    p.add_argument("--state", required=True)
    p.add_argument("--ops", help="e.g. 'Y1,Y4', 'identity' or a slot list 'cA,rBC' (separate several with ';')")
    p.set_defaults(func=cmd_norms)

    p = sub.add_parser("bound", parents=[common], help="concurrence lower bound")
    p.add_argument("--state", required=True)
    p.add_argument("--theorem", choices=tuple(THEOREMS), default="t1")
    p.set_defaults(func=cmd_bound)

    p = sub.add_parser("verify", parents=[common], help="Monte-Carlo verification suite")
    p.add_argument("--suite", choices=SUITES, required=True)
    p.add_argument("--samples", type=int, default=100_000)
    p.add_argument("--seed", type=int, default=42)
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("demo-dct", parents=[common], help="worked DCT example")
    p.set_defaults(func=cmd_demo_dct)

    p = sub.add_parser("random", help="emit a random state file")
    p.add_argument("--dims", default="2,2,2")
    p.add_argument("--seed", type=int, default=42)
    p.add_argument("--kind", choices=("pure", "mixed"), default="pure")
    p.add_argument("--rank", type=int, default=0, help="mixture rank (default: full)")
    p.add_argument("--output", "-o")
    p.set_defaults(func=cmd_random)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    if getattr(args, "tolerance", 1.0) <= 0:
        print("error: --tolerance must be > 0", file=sys.stderr)
        return EXIT_INPUT
    try:
        return args.func(args)
    except InputError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
