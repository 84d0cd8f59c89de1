"""Command-line front end.

Exit codes: 0 success, 1 parse or usage error, 2 infeasible instance,
3 singular or degenerate input, 4 overflow, 5 failed cross-check.
"""
from __future__ import annotations

import argparse
import hashlib
import json
import sys
import time
from dataclasses import asdict, dataclass, field
from pathlib import Path

from . import convolution as conv
from .bench import CSV_HEADER, SUITES, BenchConfig, run_bench
from .errors import MalformedPLF, ParseError, SingularMatrix, SizeError, TooLarge
from .formats import format_sequence, parse_knapsack, parse_matrix, parse_sequence
from .knapsack import knapsack_bruteforce, knapsack_solve
from .lattice import (
    abs_objective,
    cvp_solve,
    in_lattice,
    lattice_bruteforce,
    polynomial_objective,
    snf,
    square_objective,
    svp_solve,
)
from .sign_partition import IntPolynomial
from .values import format_ext, parse_rat

EXIT_OK, EXIT_PARSE, EXIT_INFEASIBLE, EXIT_SINGULAR, EXIT_OVERFLOW, EXIT_CHECK = range(6)
CASES = ("naive", "linear", "convex", "concave", "pwl", "poly")


@dataclass
class RunReport:
    command: str
    digest: str
    algorithm: str
    value: object = None
    vector: list = None
    wall_ns: int = 0
    counters: dict = field(default_factory=dict)

    def to_json(self) -> str:
        d = asdict(self)
        d["value"] = None if self.value is None else format_ext(self.value)
        return json.dumps(d, sort_keys=True)


def _read(path: str):
    data = Path(path).read_bytes()
    return data.decode(), hashlib.sha256(data).hexdigest()[:16]


def _ints(text: str, what: str) -> list:
    try:
        return [int(t) for t in text.replace(",", " ").split()]
    except ValueError:
        raise ParseError(f"bad {what} list {text!r}") from None


def _rats(text: str, what: str) -> list:
    try:
        return [parse_rat(t) for t in text.replace(",", " ").split()]
    except (ValueError, ZeroDivisionError):
        raise ParseError(f"bad {what} list {text!r}") from None


def _need(args, *names):
    missing = [n for n in names if getattr(args, n) is None]
    if missing:
        raise ParseError("missing option(s): " + ", ".join("--" + n.replace("_", "-") for n in missing))


def _conv(args, a, stats):
    """Dispatch one convolution; returns ``(sequence, algorithm tag)``."""
    case, full = args.case, args.mode == "full"
    if case in ("naive", "convex", "concave"):
        _need(args, "b")
        b, _ = _read(args.b)
        b = parse_sequence(b)
        if case == "naive":
            return (conv.minconv_naive(a, b) if full else conv.reduced_naive(a, b)), "naive"
        if case == "convex":
            if full:
                return conv.minconv_convex(a, b, stats), "smawk"
            # reduced form is the middle of the full product with reversed b
            c = conv.minconv_convex(a, b[::-1], stats)
            if len(a) < len(b):
                raise SizeError("reduced convolution needs n >= m")
            return c[len(b) - 1:len(a)], "smawk"
        if full:
            return conv.full_concave(a, b, stats), "block-concave"
        return conv.reduced_concave(a, b, len(b), stats), "block-concave"
    if case == "linear":
        _need(args, "alpha", "beta", "m")
        alpha, beta = parse_rat(args.alpha), parse_rat(args.beta)
        if full:
            return conv.full_linear(a, alpha, beta, args.m, stats), "queue"
        return conv.reduced_linear(a, alpha, beta, args.m, stats), "queue"
    if case == "poly":
        _need(args, "deg_coeffs", "m")
        f = IntPolynomial(_ints(args.deg_coeffs, "coefficient"))
        if full:
            return conv.full_polynomial(a, f, args.m, stats), "block-poly"
        return conv.reduced_polynomial(a, f, args.m, stats), "block-poly"
    _need(args, "breaks", "slopes", "intercepts")
    try:
        f = conv.PiecewiseLinearFn(tuple(_ints(args.breaks, "breakpoint")),
                                   tuple(_rats(args.slopes, "slope")),
                                   tuple(_rats(args.intercepts, "intercept")))
    except MalformedPLF as exc:
        raise ParseError(str(exc)) from None
    if full:
        return conv.full_piecewise(a, f, stats), "segtree"
    return conv.reduced_piecewise(a, f, stats), "segtree"


def cmd_conv(args, out) -> int:
    text, digest = _read(args.file)
    a = parse_sequence(text)
    stats = {}
    t0 = time.perf_counter_ns()
    c, tag = _conv(args, a, stats)
    report = RunReport("conv", digest, tag, wall_ns=time.perf_counter_ns() - t0, counters=stats)
    print(format_sequence(c), file=out)
    _emit_report(args, report)
    return EXIT_OK


def cmd_knapsack(args, out) -> int:
    text, digest = _read(args.file)
    inst = parse_knapsack(text)
    stats = {}
    t0 = time.perf_counter_ns()
    sol = knapsack_solve(inst, at_most=args.leq, stats=stats)
    report = RunReport("knapsack", digest, "residue-conv", sol.value, sol.x,
                       time.perf_counter_ns() - t0, stats)
    code = EXIT_OK
    if not sol.feasible:
        print("INFEASIBLE", file=out)
        code = EXIT_INFEASIBLE
    else:
        weight = sum(w * x for w, x in zip(inst.w, sol.x))
        ok = all(0 <= x <= u for x, u in zip(sol.x, inst.u))
        ok = ok and (weight <= inst.W if args.leq else weight == inst.W)
        if not ok or inst.value(sol.x) != sol.value:
            print("CHECK FAIL: solution does not validate", file=out)
            return EXIT_CHECK
        print(f"value {format_ext(sol.value)}", file=out)
        print("x " + " ".join(map(str, sol.x)), file=out)
    if args.brute:
        try:
            ref = knapsack_bruteforce(inst, at_most=args.leq)
        except TooLarge:
            print("CHECK SKIPPED (instance too large for enumeration)", file=out)
        else:
            if ref.feasible == sol.feasible and ref.value == sol.value:
                print("CHECK OK", file=out)
            else:
                print(f"CHECK FAIL: enumeration gives {format_ext(ref.value)}", file=out)
                code = EXIT_CHECK
    _emit_report(args, report)
    return code


def _objective(spec: str):
    s = spec.strip().lower()
    if s == "abs":
        return abs_objective
    if s in ("square", "sq"):
        return square_objective
    return polynomial_objective(_ints(spec, "coefficient"))


def _lattice(args, out, closest: bool) -> int:
    text, digest = _read(args.file)
    parsed = parse_matrix(text, with_target=closest)
    A, q = parsed if closest else (parsed, None)
    f = _objective(args.f)
    stats = {}
    dec = snf(A)
    t0 = time.perf_counter_ns()
    sol = cvp_solve(A, q, f, stats) if closest else svp_solve(A, f, stats)
    wall = time.perf_counter_ns() - t0
    if not in_lattice(dec, sol.x) or (not closest and not any(sol.x)):
        print("CHECK FAIL: solution is not a valid lattice vector", file=out)
        return EXIT_CHECK
    print(f"delta {sol.delta}", file=out)
    print("snf " + " ".join(map(str, dec.diagonal)), file=out)
    print(f"value {format_ext(sol.value)}", file=out)
    print("x " + " ".join(map(str, sol.x)), file=out)
    code = EXIT_OK
    if args.brute:
        try:
            ref = lattice_bruteforce(A, f, q)
        except TooLarge:
            print("CHECK SKIPPED (instance too large for enumeration)", file=out)
        else:
            ok = ref.value == sol.value
            print("CHECK OK" if ok else f"CHECK FAIL: enumeration gives {format_ext(ref.value)}",
                  file=out)
            code = EXIT_OK if ok else EXIT_CHECK
    tag = "group-dp-cvp" if closest else "group-dp-svp"
    _emit_report(args, RunReport(args.command, digest, tag, sol.value, sol.x, wall, stats))
    return code


def cmd_svp(args, out) -> int:
    return _lattice(args, out, closest=False)


def cmd_cvp(args, out) -> int:
    return _lattice(args, out, closest=True)


def cmd_bench(args, out) -> int:
    sizes = tuple(_ints(args.sizes, "size"))
    if not sizes or any(n < 2 for n in sizes):
        raise ParseError("sizes must be integers >= 2")
    cfg = BenchConfig(args.suite, sizes, args.seed, args.trials, args.window)
    print(CSV_HEADER, file=out)
    for row in run_bench(cfg):
        print(row.csv(), file=out, flush=True)
    return EXIT_OK


def _emit_report(args, report: RunReport):
    if getattr(args, "report", False):
        print(report.to_json(), file=sys.stderr)


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="minplus", description="Structured (min,+)-convolution tools.")
    sub = p.add_subparsers(dest="command", required=True)

    c = sub.add_parser("conv", help="convolve a sequence with a structured kernel")
    c.add_argument("file", help="sequence file for a")
    c.add_argument("--case", choices=CASES, required=True)
    c.add_argument("--mode", choices=("full", "reduced"), default="full")
    c.add_argument("--b", help="sequence file for b (naive, convex, concave)")
    c.add_argument("--alpha")
    c.add_argument("--beta")
    c.add_argument("--m", type=int, help="kernel length")
    c.add_argument("--deg-coeffs", help='polynomial coefficients, constant first, e.g. "0 -10 1"')
    c.add_argument("--breaks", help="piece breakpoints u_0 = 0 < ... < u_p = m")
    c.add_argument("--slopes", help="per-piece slopes")
    c.add_argument("--intercepts", help="per-piece intercepts")
    c.set_defaults(func=cmd_conv)

    k = sub.add_parser("knapsack", help="solve a bounded knapsack instance")
    k.add_argument("file")
    k.add_argument("--brute", action="store_true", help="cross-check by enumeration")
    k.add_argument("--leq", action="store_true", help="use w.x <= W instead of w.x = W")
    k.set_defaults(func=cmd_knapsack)

    for name, func in (("svp", cmd_svp), ("cvp", cmd_cvp)):
        s = sub.add_parser(name, help=f"{'shortest' if name == 'svp' else 'closest'} lattice vector")
        s.add_argument("file")
        s.add_argument("--f", default="square", help='abs, square, or coefficients "c0 c1 ..."')
        s.add_argument("--brute", action="store_true", help="cross-check by enumeration")
        s.set_defaults(func=func)

    b = sub.add_parser("bench", help="emit scaling CSV")
    b.add_argument("--suite", choices=SUITES, required=True)
    b.add_argument("--sizes", required=True, help='e.g. "4096 8192 16384"')
    b.add_argument("--seed", type=int, default=0)
    b.add_argument("--trials", type=int, default=1)
    b.add_argument("--window", type=float, default=0.5, help="kernel length as a fraction of n")
    b.set_defaults(func=cmd_bench)

    for sp in (c, k, sub.choices["svp"], sub.choices["cvp"]):
        sp.add_argument("--report", action="store_true", help="print a JSON run report to stderr")
    return p


def main(argv=None, out=None) -> int:
    out = sys.stdout if out is None else out
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_OK if exc.code == 0 else EXIT_PARSE
    try:
        return args.func(args, out)
    except ParseError as exc:
        print(f"parse error: {exc}", file=sys.stderr)
        return EXIT_PARSE
    except SingularMatrix as exc:
        print(f"singular input: {exc}", file=sys.stderr)
        return EXIT_SINGULAR
    except OverflowError as exc:
        print(f"overflow: {exc}", file=sys.stderr)
        return EXIT_OVERFLOW
    except (OSError, ValueError) as exc:
        # class validation failures and malformed arguments
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_PARSE

if __name__ == "__main__":
    sys.exit(main())
