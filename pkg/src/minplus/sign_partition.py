"""Evaluation and sign-partition oracles.

A sign partition of ``g`` over an integer interval ``[lo, hi)`` is a list of
consecutive ``(lo, hi, label)`` triples with ``label`` in {NONNEG, NONPOS}:
``g >= 0`` at every integer of a NONNEG piece and ``g <= 0`` on a NONPOS one.
The oracles below return partitions that are minimal at integer granularity.
Zeros sitting between two opposite strict signs join the later piece.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache
from typing import Callable, Optional, Sequence

from .errors import DomainError, ObjectiveClassError
from .structures import NONNEG, NONPOS

LINEAR = "linear"
CONVEX = "convex"
CONCAVE = "concave"
POLYNOMIAL = "polynomial"
PIECEWISE_LINEAR = "piecewise-linear"
TABLE = "table"


@dataclass(frozen=True)
class IntInterval:
    lo: int
    hi: int

    def __post_init__(self):
        if not self.lo < self.hi:
            raise ValueError(f"empty interval [{self.lo}, {self.hi})")

    def __len__(self):
        return self.hi - self.lo


def _bounds(interval):
    if isinstance(interval, IntInterval):
        return interval.lo, interval.hi
    lo, hi = interval
    if not lo < hi:
        raise ValueError(f"empty interval [{lo}, {hi})")
    return lo, hi


class IntPolynomial:
    """Integer polynomial, coefficients stored constant term first."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Sequence[int]):
        cs = [int(c) for c in coeffs]
        if any(c != cc for c, cc in zip(cs, coeffs)):
            raise ValueError("polynomial coefficients must be integers")
        while cs and cs[-1] == 0:
            cs.pop()
        self.coeffs = tuple(cs)

    @property
    def degree(self) -> int:
        """Degree, with -1 for the zero polynomial."""
        return len(self.coeffs) - 1

    def is_zero(self) -> bool:
        return not self.coeffs

    def __call__(self, x):
        acc = 0
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    def __eq__(self, other):
        return isinstance(other, IntPolynomial) and self.coeffs == other.coeffs

    def __hash__(self):
        return hash(self.coeffs)

    def __repr__(self):
        return f"IntPolynomial({list(self.coeffs)})"

    def __add__(self, other):
        a, b = self.coeffs, other.coeffs
        n = max(len(a), len(b))
        return IntPolynomial([(a[i] if i < len(a) else 0) + (b[i] if i < len(b) else 0)
                              for i in range(n)])

    def __neg__(self):
        return IntPolynomial([-c for c in self.coeffs])

    def __sub__(self, other):
        return self + (-other)

    def add_constant(self, c: int):
        cs = list(self.coeffs) or [0]
        cs[0] += c
        return IntPolynomial(cs)

    def scale(self, k: int):
        return IntPolynomial([k * c for c in self.coeffs])

    def derivative(self):
        return IntPolynomial([i * c for i, c in enumerate(self.coeffs)][1:])

    def derivative_chain(self) -> list:
        """``[g, g', g'', ...]`` down to the last nonzero derivative."""
        chain = [self]
        while chain[-1].degree > 0:
            chain.append(chain[-1].derivative())
        return chain

    def shift(self, a: int):
        """The polynomial ``x -> self(x + a)``."""
        res = []
        for c in reversed(self.coeffs):
            # res = res * (x + a) + c
            nxt = [0] * (len(res) + 1)
            for i, r in enumerate(res):
                nxt[i] += a * r
                nxt[i + 1] += r
            nxt[0] += c
            res = nxt
        return IntPolynomial(res)

    def reflect(self, m: int):
        """The polynomial ``x -> self(m - x)``."""
        # self(m - x) = q(-x) with q(y) = self(y + m)
        q = self.shift(m)
        return IntPolynomial([c if i % 2 == 0 else -c for i, c in enumerate(q.coeffs)])


@dataclass
class CurveOracle:
    """Exact evaluation oracle for ``f`` on the integer domain ``[lo, hi)``.

    ``kind`` is a declared class tag; ``calls`` counts evaluations.
    """

    fn: Callable
    kind: str
    lo: int = 0
    hi: Optional[int] = None
    calls: int = field(default=0, compare=False)

    def __call__(self, x):
        if x < self.lo or (self.hi is not None and x >= self.hi):
            raise DomainError(f"{x} outside [{self.lo}, {self.hi})")
        self.calls += 1
        return self.fn(x)

    def compare(self, x, y) -> int:
        fx, fy = self(x), self(y)
        return (fx > fy) - (fx < fy)

    @classmethod
    def from_polynomial(cls, poly: IntPolynomial, hi=None, lo=0):
        return cls(poly, POLYNOMIAL, lo, hi)

    @classmethod
    def from_table(cls, table: Sequence, kind: str = TABLE):
        table = list(table)
        return cls(table.__getitem__, kind, 0, len(table))

    @classmethod
    def linear(cls, alpha, beta, hi=None):
        return cls(lambda x: beta + alpha * x, LINEAR, 0, hi)


def second_differences(values: Sequence) -> list:
    return [values[i + 1] - 2 * values[i] + values[i - 1] for i in range(1, len(values) - 1)]


def is_convex_seq(values: Sequence) -> bool:
    return all(d >= 0 for d in second_differences(values))


def is_concave_seq(values: Sequence) -> bool:
    return all(d <= 0 for d in second_differences(values))


def _sign(v) -> int:
    return (v > 0) - (v < 0)


def budan_fourier_count(derivs: Sequence[IntPolynomial], x) -> int:
    """Sign changes in ``(g(x), g'(x), g''(x), ...)`` with zeros dropped."""
    changes = 0
    prev = 0
    for p in derivs:
        s = _sign(p(x))
        if s:
            if prev and s != prev:
                changes += 1
            prev = s
    return changes


def partition_from_runs(runs, lo, hi) -> list:
    """Minimal weak-sign partition from runs ``(start, end, sign)`` covering [lo, hi).

    Zero runs are absorbed into the neighbouring piece: leading zeros join
    the first strict piece, zeros between opposite signs join the later one.
    An all-zero interval becomes a single NONNEG piece.
    """
    parts = []
    label = None
    zero_start = None
    for start, _end, s in runs:
        if s == 0:
            if zero_start is None:
                zero_start = start
            continue
        lab = NONNEG if s > 0 else NONPOS
        if label is None:
            parts.append([lo, None, lab])
            label = lab
        elif lab != label:
            cut = zero_start if zero_start is not None else start
            parts[-1][1] = cut
            parts.append([cut, None, lab])
            label = lab
        zero_start = None
    if not parts:
        return [(lo, hi, NONNEG)]
    parts[-1][1] = hi
    return [tuple(p) for p in parts]


def integer_sign_runs(g: IntPolynomial, lo: int, hi: int, counter=None) -> list:
    """Runs of constant sign of ``g`` over the integers of ``[lo, hi)``.

    Dichotomy over ``(lo - 1, hi - 1]`` guided by the Budan-Fourier count:
    whenever ``W(v) - W(t) == 0`` the half-open interval ``(v, t]`` holds no
    root, so every integer in it shares the sign of ``g(t)``.
    """
    chain = g.derivative_chain()

    def W(x):
        if counter is not None:
            counter[0] += 1
        return budan_fourier_count(chain, x)

    runs = []
    stack = [(lo - 1, hi - 1, W(lo - 1), W(hi - 1))]
    while stack:
        v, t, wv, wt = stack.pop()
        if wv == wt:
            s = _sign(g(t))
            _push_run(runs, v + 1, t + 1, s)
        elif t - v == 1:
            _push_run(runs, t, t + 1, _sign(g(t)))
        else:
            mid = (v + t) // 2
            wm = W(mid)
            # right half first so the left half pops first
            stack.append((mid, t, wm, wt))
            stack.append((v, mid, wv, wm))
    return runs


def _push_run(runs, start, end, s):
    if runs and runs[-1][2] == s and runs[-1][1] == start:
        runs[-1] = (runs[-1][0], end, s)
    else:
        runs.append((start, end, s))


def spo_polynomial(g: IntPolynomial, interval) -> list:
    """Minimal sign partition of an integer polynomial over ``interval``."""
    lo, hi = _bounds(interval)
    if g.is_zero():
        return [(lo, hi, NONNEG)]
    return partition_from_runs(integer_sign_runs(g, lo, hi), lo, hi)


def spo_convex_diff(f: CurveOracle, a: int, b: int, c, interval) -> list:
    """Sign partition of ``f(x + a) - f(x + b) + c`` for convex or concave ``f``.

    Such a difference is monotone in ``x``, so at most one sign change
    exists; it is located by binary search with O(log |I|) evaluations.
    """
    if f.kind not in (CONVEX, CONCAVE, LINEAR):
        raise ObjectiveClassError(f"curve of kind {f.kind!r} is not convex or concave")
    lo, hi = _bounds(interval)

    def h(x):
        return f(x + a) - f(x + b) + c

    first, last = h(lo), h(hi - 1)
    if first >= 0 and last >= 0:
        return [(lo, hi, NONNEG)]
    if first <= 0 and last <= 0:
        return [(lo, hi, NONPOS)]
    rising = first < 0
    # first x in [lo, hi) whose sign weakly matches the final piece
    left, right = lo + 1, hi - 1
    while left < right:
        mid = (left + right) // 2
        v = h(mid)
        if (v >= 0) if rising else (v <= 0):
            right = mid
        else:
            left = mid + 1
    if rising:
        return [(lo, left, NONPOS), (left, hi, NONNEG)]
    return [(lo, left, NONNEG), (left, hi, NONPOS)]


class PolynomialDiffSPO:
    """Tree adapter: partitions of ``f(x + a) - f(x + b) + c`` for polynomial ``f``.

    Identically zero differences map to NONPOS so the left child's piece is
    kept.
    """

    def __init__(self, f: IntPolynomial):
        self.f = f
        self.calls = 0
        self.bf_evals = [0]
        self._shift = lru_cache(maxsize=None)(f.shift)

    def __call__(self, a, b, c, lo, hi):
        self.calls += 1
        h = (self._shift(a) - self._shift(b)).add_constant(c)
        if h.is_zero():
            return ((lo, hi, NONPOS),)
        if h.degree == 0:
            return ((lo, hi, NONNEG if h.coeffs[0] > 0 else NONPOS),)
        return partition_from_runs(integer_sign_runs(h, lo, hi, self.bf_evals), lo, hi)


class ConvexDiffSPO:
    """Tree adapter around :func:`spo_convex_diff`."""

    def __init__(self, f: CurveOracle):
        self.f = f
        self.calls = 0

    def __call__(self, a, b, c, lo, hi):
        self.calls += 1
        parts = spo_convex_diff(self.f, a, b, c, (lo, hi))
        if len(parts) == 1 and parts[0][2] == NONNEG:
            f = self.f
            if f(lo + a) - f(lo + b) + c == 0 and f(hi - 1 + a) - f(hi - 1 + b) + c == 0:
                return ((lo, hi, NONPOS),)
        return parts
