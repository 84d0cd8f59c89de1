"""Extended integers (finite int or +inf) and exact rationals.

Finite values are plain Python ints, ``INF`` is the float ``math.inf``.
Python ints never wrap, so the 64-bit range is enforced explicitly:
any finite result outside ``[MIN_EXT, MAX_EXT]`` raises ``OverflowError``.
"""
from __future__ import annotations

import math
from fractions import Fraction
from functools import reduce
from typing import Iterable, Union

INF = math.inf
MAX_EXT = 2**63 - 1
MIN_EXT = -(2**63)

Rat = Fraction
ExtScalar = Union[int, float]


def is_inf(x) -> bool:
    return x == INF


def check_ext(x):
    """Return ``x`` unchanged if it is +inf or a finite value in range."""
    if x == INF:
        return x
    if x == -INF or x != x:
        raise ValueError(f"not an extended scalar: {x!r}")
    if not MIN_EXT <= x <= MAX_EXT:
        raise OverflowError(f"value {x} leaves the 64-bit range")
    return x


def ext_add(x, y):
    if x == INF or y == INF:
        return INF
    return check_ext(x + y)


def ext_min(x, y):
    return y if y < x else x


def finite_bounds(values: Iterable) -> tuple:
    """(min, max) over the finite entries, or (None, None) if there are none."""
    lo = hi = None
    for v in values:
        if v == INF:
            continue
        if lo is None or v < lo:
            lo = v
        if hi is None or v > hi:
            hi = v
    return lo, hi


def check_sum_range(xs: Iterable, ys: Iterable) -> None:
    """Raise ``OverflowError`` if some finite x + y could leave the range.

    Checked once up front so inner loops can add plain ints.
    """
    xlo, xhi = finite_bounds(xs)
    ylo, yhi = finite_bounds(ys)
    if xlo is None or ylo is None:
        return
    if xhi + yhi > MAX_EXT or xlo + ylo < MIN_EXT:
        raise OverflowError("sequence sums leave the 64-bit range")


def check_seq(values: Iterable) -> list:
    return [check_ext(v) for v in values]


def parse_ext(token: str):
    t = token.strip().lower()
    if t in ("inf", "+inf", "infinity"):
        return INF
    return check_ext(int(t))


def format_ext(x) -> str:
    if x == INF:
        return "inf"
    if isinstance(x, Fraction):
        return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"
    return str(x)


def parse_rat(token: str) -> Fraction:
    return Fraction(token.strip())


def common_denominator(values: Iterable) -> int:
    """Least common multiple of the denominators of ``values``."""
    dens = [Fraction(v).denominator for v in values if v != INF]
    return reduce(lambda p, q: p * q // math.gcd(p, q), dens, 1)


def unscale(x, scale: int):
    """Divide an integer-scaled result by ``scale``; ints stay ints when exact."""
    if x == INF:
        return INF
    if scale == 1 and isinstance(x, int):
        return x
    q = Fraction(x) / scale
    return q.numerator if q.denominator == 1 else q
