"""Plain-text instance formats.

Blank lines and lines starting with ``#`` are ignored; error messages carry
the 1-based line number of the original file.

Sequence::

    n
    v_1 ... v_n            integers or ``inf``

Knapsack::

    n W sense              sense is ``min`` or ``max``
    w u LIN c
    w u POLY d c_0 ... c_d
    w u CONVEX f(0) ... f(u)
    w u CONCAVE f(0) ... f(u)
    w u PWL p              followed by three lines:
    u_0 ... u_p            breakpoints, u_0 = 0 and u_p = u + 1
    alpha_1 ... alpha_p
    beta_1 ... beta_p

Matrix (closest vector adds one target line of ``p/q`` rationals)::

    n
    a_11 ... a_1n
    ...
"""
from __future__ import annotations

from .convolution import PiecewiseLinearFn
from .errors import MalformedPLF, ParseError
from .knapsack import Concave, Convex, KnapsackInstance, Linear, PiecewiseLinear, Polynomial
from .sign_partition import IntPolynomial
from .values import format_ext, parse_ext, parse_rat


def _lines(text: str):
    for no, raw in enumerate(text.splitlines(), 1):
        line = raw.strip()
        if line and not line.startswith("#"):
            yield no, line.split()


class _Reader:
    def __init__(self, text):
        self._it = _lines(text)
        self.line = 0

    def next(self, what):
        try:
            self.line, toks = next(self._it)
        except StopIteration:
            raise ParseError(f"unexpected end of input, expected {what}", self.line + 1) from None
        return toks

    def done(self):
        for no, _ in self._it:
            raise ParseError("unexpected trailing content", no)


def _int(tok, line, what="integer"):
    try:
        return int(tok)
    except ValueError:
        raise ParseError(f"bad {what} {tok!r}", line) from None


def _rat(tok, line):
    try:
        return parse_rat(tok)
    except (ValueError, ZeroDivisionError):
        raise ParseError(f"bad rational {tok!r}", line) from None


def _count(toks, k, line, what):
    if len(toks) != k:
        raise ParseError(f"expected {k} {what}, found {len(toks)}", line)


def parse_sequence(text: str) -> list:
    r = _Reader(text)
    toks = r.next("length")
    _count(toks, 1, r.line, "length")
    n = _int(toks[0], r.line, "length")
    if n < 1:
        raise ParseError("length must be positive", r.line)
    toks = r.next("values")
    _count(toks, n, r.line, "values")
    out = []
    for t in toks:
        try:
            out.append(parse_ext(t))
        except ValueError:
            raise ParseError(f"bad value {t!r}", r.line) from None
    r.done()
    return out


def format_sequence(values) -> str:
    return "\n".join(format_ext(v) for v in values)


def parse_knapsack(text: str) -> KnapsackInstance:
    r = _Reader(text)
    head = r.next("header")
    _count(head, 3, r.line, "header fields")
    n = _int(head[0], r.line, "item count")
    W = _int(head[1], r.line, "capacity")
    sense = head[2].lower()
    if sense not in ("min", "max"):
        raise ParseError(f"sense must be min or max, got {head[2]!r}", r.line)
    if n < 1 or W < 0:
        raise ParseError("need n >= 1 and W >= 0", r.line)
    w, u, objs = [], [], []
    for _ in range(n):
        toks = r.next("item line")
        line = r.line
        if len(toks) < 3:
            raise ParseError("item line needs weight, bound and class", line)
        wk, uk = _int(toks[0], line, "weight"), _int(toks[1], line, "bound")
        if wk < 1 or uk < 0:
            raise ParseError("weight must be positive and bound non-negative", line)
        cls, params = toks[2].upper(), toks[3:]
        if cls == "LIN":
            _count(params, 1, line, "LIN parameters")
            obj = Linear(_rat(params[0], line))
        elif cls == "POLY":
            if not params:
                raise ParseError("POLY needs a degree", line)
            d = _int(params[0], line, "degree")
            _count(params[1:], d + 1, line, "coefficients")
            obj = Polynomial(IntPolynomial([_int(c, line, "coefficient") for c in params[1:]]))
        elif cls in ("CONVEX", "CONCAVE"):
            _count(params, uk + 1, line, "table values")
            table = tuple(_rat(v, line) for v in params)
            obj = Convex(table) if cls == "CONVEX" else Concave(table)
        elif cls == "PWL":
            _count(params, 1, line, "PWL parameters")
            p = _int(params[0], line, "piece count")
            breaks = [_int(t, r.line, "breakpoint") for t in r.next("breakpoints")]
            alpha = [_rat(t, r.line) for t in r.next("slopes")]
            beta = [_rat(t, r.line) for t in r.next("intercepts")]
            if len(breaks) != p + 1 or len(alpha) != p or len(beta) != p:
                raise ParseError(f"PWL with {p} pieces needs {p + 1}/{p}/{p} values", r.line)
            if breaks[-1] != uk + 1:
                raise ParseError("last breakpoint must equal u + 1", r.line)
            try:
                obj = PiecewiseLinear(PiecewiseLinearFn(tuple(breaks), tuple(alpha), tuple(beta)))
            except MalformedPLF as exc:
                raise ParseError(str(exc), r.line) from None
        else:
            raise ParseError(f"unknown objective class {toks[2]!r}", line)
        w.append(wk)
        u.append(uk)
        objs.append(obj)
    r.done()
    return KnapsackInstance(w, W, u, objs, sense)


def parse_matrix(text: str, with_target: bool = False):
    """Returns ``A`` or ``(A, q)``."""
    r = _Reader(text)
    toks = r.next("dimension")
    _count(toks, 1, r.line, "dimension")
    n = _int(toks[0], r.line, "dimension")
    if n < 1:
        raise ParseError("dimension must be positive", r.line)
    A = []
    for _ in range(n):
        toks = r.next("matrix row")
        _count(toks, n, r.line, "entries")
        A.append([_int(t, r.line, "entry") for t in toks])
    q = None
    if with_target:
        toks = r.next("target")
        _count(toks, n, r.line, "target coordinates")
        q = [_rat(t, r.line) for t in toks]
    r.done()
    return (A, q) if with_target else A
