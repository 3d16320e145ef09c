"""Command-line front end.  Every invocation prints one JSON document.

Exit codes: 0 success, 1 domain error (``{"error": code, "detail": ...}``),
2 usage error.  Matrices are given as ``"a,b;c,d"``; a leading minus sign is
fine (``"-2,-1;-1,-1"``).
"""

from __future__ import annotations

import argparse
import json
import sys
from typing import Sequence

from .counting import Radius, brute_force_class_census, enumerate_classes, h2_formula, h2_lower
from .errors import Gl2StretchError, NotFullyIrreducible
from .exactnum import DEFAULT_BITS
from .gl2core import MATRIX_RE, Mat2, antitr2, classify, det2, is_fully_irreducible, tr2
from .penner import handlebody_stretch
from .spectra import lift_form, report, sweep
from .standardform import Mode, assemble, canonical_key, standard_form
from .verify import run_all


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def _matrix(text: str) -> Mat2:
    try:
        return Mat2.parse(text)
    except ValueError as exc:
        raise argparse.ArgumentTypeError(str(exc)) from None


def _positive(text: str) -> int:
    n = int(text)
    if n < 1:
        raise argparse.ArgumentTypeError(f"expected a positive integer, got {text}")
    return n


def _radius(text: str) -> Radius:
    try:
        return Radius.parse(text)
    except ValueError as exc:
        raise argparse.ArgumentTypeError(str(exc)) from None


def _common() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(add_help=False)
    p.add_argument("--bits", type=_positive, default=DEFAULT_BITS, help="working precision")
    p.add_argument("--json-indent", type=int, default=2, help="JSON indentation (negative: compact)")
    return p


def build_parser() -> argparse.ArgumentParser:
    common = _common()
    parser = _Parser(prog="gl2stretch", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("classify", parents=[common], help="isometry type, det, trace")
    p.add_argument("matrix", type=_matrix)

    p = sub.add_parser("stdform", parents=[common], help="standard form and canonical keys")
    p.add_argument("matrix", type=_matrix)

    p = sub.add_parser("penner", parents=[common], help="Penner lift and its stretch factor")
    p.add_argument("matrix", type=_matrix)

    p = sub.add_parser("ratio", parents=[common], help="mu, lambda and certified lambda/mu")
    p.add_argument("matrix", type=_matrix)

    p = sub.add_parser("sweep", parents=[common], help="certify lambda/mu over all small forms")
    p.add_argument("--syllables", type=_positive, required=True)
    p.add_argument("--max-exp", type=_positive, required=True)

    p = sub.add_parser("count", parents=[common], help="count conjugacy classes by stretch")
    p.add_argument("--mode", choices=["sl2", "gl2", "h2-lower"], required=True)
    p.add_argument(
        "--radius",
        type=_radius,
        required=True,
        help="decimal, log:p,q,D,r for log((p+q*sqrt(D))/r), log10, joined by +",
    )
    p.add_argument("--epsilon", default=None, help="h2-lower: epsilon of the formula bound")
    p.add_argument(
        "--formula-only", action="store_true", help="h2-lower: skip the constructive count"
    )
    p.add_argument("--list", action="store_true", help="list the classes")

    p = sub.add_parser("census", parents=[common], help="brute-force class census")
    p.add_argument("--entries", type=_positive, required=True)
    p.add_argument("--trace", type=_positive, required=True)
    p.add_argument("--conj-bound", type=_positive, required=True)
    p.add_argument("--mode", choices=["sl2", "gl2"], default="sl2")
    p.add_argument("--list", action="store_true")

    p = sub.add_parser("verify", parents=[common], help="run every lemma sweep")
    p.add_argument("--syllables", type=_positive, default=3)
    p.add_argument("--max-exp", type=_positive, default=4)
    return parser


def _require_fi(m: Mat2) -> None:
    if not is_fully_irreducible(m):
        raise NotFullyIrreducible(f"{m} is {classify(m).value}")


def dispatch(args: argparse.Namespace) -> tuple[int, dict]:
    cmd = args.command
    if cmd == "classify":
        m = args.matrix
        return 0, {"type": classify(m).value, "det": det2(m), "trace": tr2(m)}
    if cmd == "stdform":
        m = args.matrix
        _require_fi(m)
        sf = standard_form(m)
        return 0, {
            "input": str(m),
            "sform": sf.to_json(),
            "assembled": str(assemble(sf)),
            "keys": {mode.value: canonical_key(sf, mode).to_json() for mode in Mode},
            "trace": tr2(m),
            "antitrace": antitr2(m),
        }
    if cmd == "penner":
        m = args.matrix
        _require_fi(m)
        sf = lift_form(m)
        out = handlebody_stretch(sf, args.bits).to_json()
        out["sform"] = sf.to_json()
        return 0, out
    if cmd == "ratio":
        _require_fi(args.matrix)
        return 0, report(args.matrix, args.bits).to_json()
    if cmd == "sweep":
        summary = sweep(args.syllables, args.max_exp, args.bits)
        return (0 if summary.ok else 1), summary.to_json()
    if cmd == "count":
        if args.mode == "h2-lower":
            eps = args.epsilon if args.epsilon is not None else "0"
            if args.formula_only:
                f = h2_formula(args.radius, eps, args.bits)
                return 0, {"mode": "h2-lower", "radius": args.radius.to_json(),
                           "formula": f.to_json(), "formula_approx": float(f.mid)}
            return 0, h2_lower(args.radius, eps, args.bits).to_json(args.list)
        rep = enumerate_classes(args.mode, args.radius, args.bits)
        return 0, rep.to_json(args.list)
    if cmd == "census":
        rep = brute_force_class_census(args.entries, args.trace, args.conj_bound, args.mode)
        return 0, rep.to_json(args.list)
    if cmd == "verify":
        results = run_all(args.syllables, args.max_exp, args.bits)
        ok = all(r.passed for r in results)
        return (0 if ok else 1), {
            "passed": ok,
            "table": [{"check": r.name, "passed": r.passed, "checked": r.checked} for r in results],
            "results": [r.to_json() for r in results],
        }
    raise UsageError(f"unknown command {cmd}")


def _emit(doc: dict, indent: int | None) -> None:
    if indent is not None and indent < 0:
        text = json.dumps(doc, separators=(",", ":"))
    else:
        text = json.dumps(doc, indent=indent)
    sys.stdout.write(text + "\n")


def _shield_negative_matrices(argv: Sequence[str]) -> list[str]:
    # argparse reads "-2,1;..." as an option; a leading space keeps it positional
    return [" " + a if a.startswith("-") and MATRIX_RE.match(a) else a for a in argv]


def run(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    argv = _shield_negative_matrices(sys.argv[1:] if argv is None else argv)
    try:
        args = parser.parse_args(argv)
    except UsageError as exc:
        _emit({"error": "usage", "detail": str(exc)}, 2)
        return 2
    try:
        code, doc = dispatch(args)
    except Gl2StretchError as exc:
        code, doc = 1, {"error": exc.code, "detail": str(exc)}
    except ValueError as exc:
        code, doc = 1, {"error": "invalid_argument", "detail": str(exc)}
    _emit(doc, args.json_indent)
    return code


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
