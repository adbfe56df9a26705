"""Command-line entry point.

Exit codes: 0 dominates, 1 not dominates, 2 unknown, 3 usage or parse error.
Commands without a verdict (pinv, tilde) exit 0 on success.
"""

from __future__ import annotations

import argparse
import sys
import time
from fractions import Fraction
from typing import Optional, Sequence

import numpy as np

from . import hormander
from .domination import decide_compact_domination, decide_domination, lsc_hypothesis_check
from .errors import PolydomError
from .hormander import Outcome
from .matpoly import pseudoinverse
from .parser import parse_any, parse_poly
from .poly import tilde_squared
from .probe import ratio_estimate, ray_oscillation_probe
from .report import emit_report

EXIT_CODES = {Outcome.DOMINATES: 0, Outcome.NOT_DOMINATES: 1, Outcome.UNKNOWN: 2}
EXIT_USAGE = 3


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def _read(arg: str) -> str:
    """Inline text, or the contents of a file when written as @path."""
    if arg.startswith("@"):
        with open(arg[1:], encoding="utf-8") as fh:
            return fh.read()
    return arg


def _direction(text: str) -> np.ndarray:
    try:
        v = np.array([float(Fraction(s)) for s in text.split(",")])
    except (ValueError, ZeroDivisionError) as exc:
        raise argparse.ArgumentTypeError(f"bad direction {text!r}") from exc
    norm = np.linalg.norm(v)
    if norm == 0:
        raise argparse.ArgumentTypeError("direction must be nonzero")
    return v / norm


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", action="store_true", help="emit a JSON report")
    common.add_argument("--seed", type=int, default=0, help="seed for all randomness (default 0)")
    common.add_argument("--dim", type=int, default=None, help="override the inferred dimension d")
    common.add_argument("--max-random-weights", type=int, default=hormander.DEFAULT_RANDOM_WEIGHTS,
                        metavar="R", help="random weight vectors in the refutation sweep")
    common.add_argument("--heuristic", action="store_true",
                        help="allow sampled (uncertified) ellipticity checks for d >= 3")

    parser = _Parser(prog="polydom", description="Symbolic domination checks for "
                     "constant-coefficient differential operators P(D), Q(D).")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("pinv", parents=[common], help="pseudoinverse representation A / Delta")
    p.add_argument("P")
    for name, helptext in (("dominates", "does P dominate Q?"),
                           ("compactly-dominates", "does P compactly dominate Q?")):
        p = sub.add_parser(name, parents=[common], help=helptext)
        p.add_argument("P")
        p.add_argument("Q")
    p = sub.add_parser("tilde", parents=[common], help="the weight p~^2 = sum |d^a p|^2")
    p.add_argument("p")
    p = sub.add_parser("lsc-check", parents=[common],
                       help="does P compactly dominate every derivative P^(alpha)?")
    p.add_argument("P")
    p = sub.add_parser("probe", parents=[common], help="empirical L2 ratio probe")
    p.add_argument("P")
    p.add_argument("Q")
    p.add_argument("--trials", type=int, default=20)
    p.add_argument("--grid", type=int, default=None, help="samples per axis (power of two)")
    p.add_argument("--ray", type=_direction, default=None, metavar="V1,V2,...",
                   help="oscillate along this direction instead of random trials")
    p.add_argument("--csv", default=None, help="dump per-trial ratios to this file")
    return parser


def _operands(args, *names):
    texts = [_read(getattr(args, n)) for n in names]
    if args.dim is None:
        # a common dimension: the largest variable index over all operands
        dims = [parse_any(t).dim for t in texts]
        dim = max(dims)
    else:
        dim = args.dim
    return texts, [parse_any(t, dim) for t in texts]


def run(argv: Optional[Sequence[str]] = None, out=None) -> int:
    out = out if out is not None else sys.stdout.buffer
    parser = build_parser()
    args = parser.parse_args(argv)
    fmt = "json" if args.json else "text"
    kw = {"seed": args.seed, "n_random": args.max_random_weights, "heuristic": args.heuristic}
    try:
        start = time.perf_counter()
        code = 0
        if args.command == "pinv":
            _, (P,) = _operands(args, "P")
            result, inputs = pseudoinverse(P), {"P": str(P)}
        elif args.command == "tilde":
            P = parse_poly(_read(args.p).strip(), args.dim)
            result, inputs = tilde_squared(P), {"p": str(P)}
        elif args.command in ("dominates", "compactly-dominates"):
            _, (P, Q) = _operands(args, "P", "Q")
            fn = decide_domination if args.command == "dominates" else decide_compact_domination
            result, inputs = fn(P, Q, **kw), {"P": str(P), "Q": str(Q)}
            code = EXIT_CODES[result.overall]
        elif args.command == "lsc-check":
            _, (P,) = _operands(args, "P")
            result, inputs = lsc_hypothesis_check(P, **kw), {"P": str(P)}
            code = {"satisfied": 0, "fails": 1, "unknown": 2}[result.status]
        else:
            _, (P, Q) = _operands(args, "P", "Q")
            inputs = {"P": str(P), "Q": str(Q)}
            if args.ray is not None:
                if len(args.ray) != P.dim:
                    parser.error(f"--ray needs {P.dim} components")
                result = ray_oscillation_probe(P, Q, args.ray, seed=args.seed, n=args.grid or 256)
            else:
                result = ratio_estimate(P, Q, trials=args.trials, n=args.grid or 64, seed=args.seed)
                if args.csv:
                    result.to_csv(args.csv)
        elapsed = {"total": round((time.perf_counter() - start) * 1000, 3)}
    except (PolydomError, ValueError, OSError) as exc:
        sys.stderr.write(f"polydom: error: {exc}\n")
        return EXIT_USAGE
    inputs["d"] = str(P.dim)
    out.write(emit_report(result, fmt, command=args.command, inputs=inputs,
                          seed=args.seed, timings_ms=elapsed))
    out.flush()
    return code


def main(argv: Optional[Sequence[str]] = None):
    sys.exit(run(argv))


if __name__ == "__main__":
    main()
