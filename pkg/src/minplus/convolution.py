"""(min,+)-convolution: naive oracles and structured algorithms.

Two problem forms are used throughout::

    full     c_k = min_{i + j = k} a_i + b_j            k in [0, n + m - 1)
    reduced  c_k = min_{0 <= i < m} a_{k + i} + b_i     k in [0, n - m + 1)

Structured algorithms take ``b_i = f(i)`` for a structured ``f``. Rational
parameters are scaled to integers by their common denominator before any
sequence arithmetic; results are scaled back exactly.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Optional, Sequence

from .errors import MalformedPLF, NotConcave, NotConvex, SizeError
from .sign_partition import (
    CONCAVE,
    ConvexDiffSPO,
    CurveOracle,
    IntPolynomial,
    PolynomialDiffSPO,
    is_concave_seq,
    is_convex_seq,
)
from .structures import AugSegTree, MinQueue, SegTree
from .values import INF, check_sum_range, common_denominator, finite_bounds, unscale


def _bump(stats, key, amount):
    if stats is not None:
        stats[key] = stats.get(key, 0) + amount


# -- oracles -----------------------------------------------------------------

def minconv_naive(a: Sequence, b: Sequence) -> list:
    """The O(nm) double loop for the full form."""
    if not a or not b:
        raise SizeError("sequences must be non-empty")
    check_sum_range(a, b)
    n, m = len(a), len(b)
    c = [INF] * (n + m - 1)
    for j, bj in enumerate(b):
        if bj == INF:
            continue
        for i, ai in enumerate(a):
            v = ai + bj
            if v < c[i + j]:
                c[i + j] = v
    return c


def reduced_naive(a: Sequence, b: Sequence) -> list:
    """The O(nm) double loop for the reduced form."""
    n, m = len(a), len(b)
    if m < 1 or n < m:
        raise SizeError(f"reduced convolution needs n >= m >= 1, got n={n}, m={m}")
    check_sum_range(a, b)
    c = [INF] * (n - m + 1)
    for k in range(n - m + 1):
        best = INF
        for i in range(m):
            v = a[k + i] + b[i]
            if v < best:
                best = v
        c[k] = best
    return c


def full_from_reduced(a: Sequence, b: Sequence, reduced_algo: Callable = reduced_naive) -> list:
    """Full convolution via a reduced-form algorithm.

    Pads ``a`` with ``m - 1`` infinities on both sides and reverses ``b``;
    ``reduced_algo(padded_a, reversed_b)`` is then exactly the full product.
    """
    if not a or not b:
        raise SizeError("sequences must be non-empty")
    pad = [INF] * (len(b) - 1)
    return reduced_algo(pad + list(a) + pad, list(reversed(b)))


# -- linear ------------------------------------------------------------------

def reduced_linear(a: Sequence, alpha, beta, m: int, stats: Optional[dict] = None) -> list:
    """Reduced form with ``b_i = beta + alpha * i`` by a sliding queue minimum.

    The queue holds ``a_i + alpha * i`` for the current window, so its
    minimum minus ``alpha * k`` is the window answer.
    """
    n = len(a)
    if m < 1 or n < m:
        raise SizeError(f"reduced convolution needs n >= m >= 1, got n={n}, m={m}")
    alpha, beta = Fraction(alpha), Fraction(beta)
    scale = common_denominator([alpha, beta])
    da, db = int(alpha * scale), int(beta * scale)
    xs = [INF if v == INF else v * scale + da * i for i, v in enumerate(_scaled(a, scale))]
    check_sum_range(xs, [db - da * (n - m), db])
    q = MinQueue()
    for i in range(m):
        q.push(xs[i])
    out = [q.min()]
    for k in range(1, n - m + 1):
        q.pop()
        q.push(xs[k + m - 1])
        out.append(q.min())
    _bump(stats, "queue_ops", q.ops)
    _bump(stats, "queue_transfers", q.transfers)
    return [unscale(v - da * k + db, scale) if v != INF else INF for k, v in enumerate(out)]


def _scaled(a, scale):
    """``a`` as plain ints; entries must already be integral after ``scale``."""
    if scale == 1 and all(v == INF or isinstance(v, int) for v in a):
        return list(a)
    out = []
    for v in a:
        if v == INF:
            out.append(INF)
        else:
            q = Fraction(v)
            if q.denominator != 1:
                raise ValueError(f"sequence entry {v} is not an integer")
            out.append(q.numerator)
    return out


def full_linear(a: Sequence, alpha, beta, m: int, stats=None) -> list:
    alpha, beta = Fraction(alpha), Fraction(beta)
    return full_from_reduced(
        a, [beta + alpha * i for i in range(m)],
        lambda ap, _br: reduced_linear(ap, -alpha, beta + alpha * (m - 1), m, stats))


# -- convex via row minima ---------------------------------------------------

def smawk_row_minima(rows: int, cols: int, entry: Callable) -> list:
    """Leftmost row-minimum column of an implicit totally monotone matrix.

    ``entry(r, c)`` is evaluated O(rows + cols) times.
    """
    result = [0] * rows
    if rows == 0 or cols == 0:
        return result

    def solve(rs, cs):
        if not rs:
            return
        stack = []
        for c in cs:
            while stack:
                r = rs[len(stack) - 1]
                if entry(r, stack[-1]) <= entry(r, c):
                    break
                stack.pop()
            if len(stack) < len(rs):
                stack.append(c)
        cs = stack
        solve(rs[1::2], cs)
        k = 0
        for idx in range(0, len(rs), 2):
            r = rs[idx]
            last = result[rs[idx + 1]] if idx + 1 < len(rs) else cs[-1]
            best_c = cs[k]
            best_v = entry(r, best_c)
            while cs[k] != last:
                k += 1
                v = entry(r, cs[k])
                if v < best_v:
                    best_c, best_v = cs[k], v
            result[r] = best_c

    solve(list(range(rows)), list(range(cols)))
    return result


def minconv_convex(a: Sequence, b: Sequence, stats=None) -> list:
    """Full convolution with convex ``b`` through row minima of a Monge matrix.

    Row ``k``, column ``i`` holds ``a_i + b(k - i)``. Out-of-range ``b``
    indices are filled by a steep convex extension and infinite ``a``
    entries by a finite stand-in, both large enough never to win a row
    that has a genuine finite candidate. The matrix is then Monge.
    """
    n, m = len(a), len(b)
    if n < 1 or m < 1:
        raise SizeError("sequences must be non-empty")
    if any(v == INF for v in b) or not is_convex_seq(b):
        raise NotConvex("b is not a convex sequence")
    check_sum_range(a, b)
    alo, ahi = finite_bounds(a)
    if alo is None:
        return [INF] * (n + m - 1)
    blo, bhi = min(b), max(b)
    spread_b = bhi - blo
    a_inf = ahi + spread_b + 1
    steep = a_inf - alo + spread_b + 1
    av = [a_inf if v == INF else v for v in a]
    b0, bl = b[0], b[-1]

    def bx(j):
        if j < 0:
            return b0 - j * steep
        if j >= m:
            return bl + (j - m + 1) * steep
        return b[j]

    calls = [0]

    def entry(k, i):
        calls[0] += 1
        return av[i] + bx(k - i)

    arg = smawk_row_minima(n + m - 1, n, entry)
    _bump(stats, "matrix_entries", calls[0])
    out = []
    for k, i in enumerate(arg):
        j = k - i
        if 0 <= j < m and a[i] != INF:
            out.append(a[i] + b[j])
        else:
            out.append(INF)
    return out


def cyclic_minconv_convex(a: Sequence, b: Sequence, stats=None) -> list:
    """``c_i = min_j a_{(i - j) mod d} + b_j`` for convex ``b`` of length ``d``."""
    d = len(a)
    if len(b) != d or d == 0:
        raise SizeError("cyclic convolution needs equal, non-zero lengths")
    if d == 1:
        return [INF if a[0] == INF else a[0] + b[0]]
    doubled = minconv_convex(list(a) + list(a), b, stats)
    return doubled[d:2 * d]


# -- piecewise linear --------------------------------------------------------

@dataclass(frozen=True)
class PiecewiseLinearFn:
    """``f(x) = beta[k] + alpha[k] * x`` on ``[breaks[k], breaks[k + 1])``."""

    breaks: tuple
    alpha: tuple
    beta: tuple

    def __post_init__(self):
        u, al, be = self.breaks, self.alpha, self.beta
        p = len(al)
        if p < 1 or len(be) != p or len(u) != p + 1:
            raise MalformedPLF("need p slopes, p intercepts and p + 1 breakpoints")
        if u[0] != 0 or any(int(x) != x for x in u):
            raise MalformedPLF("breakpoints must be integers starting at 0")
        if any(u[k] >= u[k + 1] for k in range(p)):
            raise MalformedPLF("breakpoints must be strictly increasing")
        object.__setattr__(self, "breaks", tuple(int(x) for x in u))
        object.__setattr__(self, "alpha", tuple(Fraction(x) for x in al))
        object.__setattr__(self, "beta", tuple(Fraction(x) for x in be))

    @property
    def length(self) -> int:
        return self.breaks[-1]

    @property
    def pieces(self) -> int:
        return len(self.alpha)

    def __call__(self, x):
        u = self.breaks
        if not 0 <= x < u[-1]:
            raise ValueError(f"{x} outside [0, {u[-1]})")
        k = 0
        while x >= u[k + 1]:
            k += 1
        return self.beta[k] + self.alpha[k] * x

    def values(self) -> list:
        out = []
        for k in range(self.pieces):
            al, be = self.alpha[k], self.beta[k]
            out.extend(be + al * x for x in range(self.breaks[k], self.breaks[k + 1]))
        return out

    def reversed(self) -> "PiecewiseLinearFn":
        """The function ``x -> self(m - 1 - x)`` on the same domain."""
        m = self.length
        u = self.breaks
        nb = [0] + [m - u[k] for k in range(self.pieces - 1, -1, -1)]
        na, nbeta = [], []
        for k in range(self.pieces - 1, -1, -1):
            al, be = self.alpha[k], self.beta[k]
            na.append(-al)
            nbeta.append(be + al * (m - 1))
        return PiecewiseLinearFn(tuple(nb), tuple(na), tuple(nbeta))

    def truncated(self, m: int) -> "PiecewiseLinearFn":
        """Restriction to ``[0, m)``."""
        if not 0 < m <= self.length:
            raise MalformedPLF(f"cannot truncate to length {m}")
        u, al, be = [0], [], []
        for k in range(self.pieces):
            if self.breaks[k] >= m:
                break
            u.append(min(self.breaks[k + 1], m))
            al.append(self.alpha[k])
            be.append(self.beta[k])
        return PiecewiseLinearFn(tuple(u), tuple(al), tuple(be))

    def negated(self) -> "PiecewiseLinearFn":
        return PiecewiseLinearFn(self.breaks, tuple(-x for x in self.alpha),
                                 tuple(-x for x in self.beta))


def reduced_piecewise(a: Sequence, f: PiecewiseLinearFn, stats=None) -> list:
    """Reduced form with piecewise linear ``b`` via a range-add segment tree.

    After step ``k`` the tree holds ``a_{k+i} + b_i`` on ``[k, k + m)``.
    Moving to ``k + 1`` shifts every position one index back in ``b``: one
    range add of ``-alpha_j`` inside each piece plus one point correction
    at each piece's last position.
    """
    m, n = f.length, len(a)
    if n < m:
        raise SizeError(f"reduced convolution needs n >= m, got n={n}, m={m}")
    scale = common_denominator(list(f.alpha) + list(f.beta))
    b = [int(v * scale) for v in f.values()]
    A = [INF if v == INF else v * scale for v in _scaled(a, 1)]
    check_sum_range(A, b)
    for i in range(m):
        if A[i] != INF:
            A[i] += b[i]
    tree = SegTree(A)
    u = f.breaks
    p = f.pieces
    slopes = [int(x * scale) for x in f.alpha]
    out = [tree.range_min(0, m)]
    ops = 1
    for k in range(n - m):
        for j in range(p):
            lo, hi = u[j], u[j + 1]
            if hi - lo >= 2 and slopes[j]:
                tree.range_add(k + 1 + lo, k + hi, -slopes[j])
                ops += 1
            delta = b[hi - 1] - b[hi] if j + 1 < p else b[m - 1]
            if delta:
                tree.point_add(k + hi, delta)
                ops += 1
        out.append(tree.range_min(k + 1, k + 1 + m))
        ops += 1
    _bump(stats, "segtree_ops", ops)
    return [unscale(v, scale) for v in out]


def full_piecewise(a: Sequence, f: PiecewiseLinearFn, stats=None) -> list:
    rev = f.reversed()
    return full_from_reduced(a, f.values(), lambda ap, _br: reduced_piecewise(ap, rev, stats))


# -- block scheme over augmented trees --------------------------------------

@dataclass(frozen=True)
class BlockPlan:
    block: int
    p: int
    sigma: float


def block_sigma(p: int) -> float:
    lp = math.log2(p)
    return lp + 1 / (1 + lp)


def block_plan(n: int, p: int) -> BlockPlan:
    """Smallest power of two ``B`` with ``B ** sigma >= n``."""
    p = max(1, p)
    sigma = block_sigma(p)
    B = 1
    while B ** sigma < n:
        B *= 2
    return BlockPlan(B, p, sigma)


def _block_reduce(a, m, curve, spo, p, stats):
    n = len(a)
    plan = block_plan(n, p)
    B = plan.block
    nb = -(-n // B)
    A = list(a) + [INF] * (nb * B - n)
    trees = []
    pieces = 0
    for s in range(0, nb * B, B):
        chunk = A[s:s + B]
        if all(v == INF for v in chunk):
            trees.append(None)
            continue
        t = AugSegTree(chunk, curve, spo, domain=m)
        pieces += sum(len(x) for x in t._index if x)
        trees.append(t)

    def q(blk, i, j, x):
        t = trees[blk]
        if t is None:
            return INF
        if i == 0 and j == B:
            return t._node_value(1, x)
        return t.query(i, j, x)

    out = []
    for k in range(n - m + 1):
        blk, off = divmod(k, B)
        if off + m <= B:
            out.append(q(blk, off, off + m, 0))
            continue
        s = B - off
        best = q(blk, off, B, 0)
        shift, rest = s, m - s
        blk += 1
        while rest >= B:
            v = q(blk, 0, B, shift)
            if v < best:
                best = v
            shift += B
            rest -= B
            blk += 1
        if rest:
            v = q(blk, 0, rest, shift)
            if v < best:
                best = v
        out.append(best)
    _bump(stats, "evo_calls", curve.calls)
    _bump(stats, "spo_calls", spo.calls)
    _bump(stats, "tree_pieces", pieces)
    _bump(stats, "block", B)
    return out


def reduced_polynomial(a: Sequence, f: IntPolynomial, m: int, stats=None) -> list:
    """Reduced form with ``b_i = f(i)`` for an integer polynomial ``f``."""
    n = len(a)
    if m < 1 or n < m:
        raise SizeError(f"reduced convolution needs n >= m >= 1, got n={n}, m={m}")
    a = _scaled(a, 1)
    check_sum_range(a, [f(i) for i in range(m)])
    curve = CurveOracle.from_polynomial(f, hi=m)
    spo = PolynomialDiffSPO(f)
    out = _block_reduce(a, m, curve, spo, max(1, f.degree), stats)
    _bump(stats, "bf_evals", spo.bf_evals[0])
    return out


def full_polynomial(a: Sequence, f: IntPolynomial, m: int, stats=None) -> list:
    rev = f.reflect(m - 1)
    return full_from_reduced(a, [f(i) for i in range(m)],
                             lambda ap, _br: reduced_polynomial(ap, rev, m, stats))


def reduced_concave(a: Sequence, f, m: int, stats=None) -> list:
    """Reduced form with ``b_i = f(i)`` for concave ``f`` given by an oracle or table."""
    n = len(a)
    if m < 1 or n < m:
        raise SizeError(f"reduced convolution needs n >= m >= 1, got n={n}, m={m}")
    if not isinstance(f, CurveOracle):
        f = CurveOracle.from_table(f, CONCAVE)
    values = [f.fn(i) for i in range(m)]
    if any(v == INF for v in values) or not is_concave_seq(values):
        raise NotConcave("f is not concave on [0, m)")
    curve = CurveOracle(f.fn, CONCAVE, 0, m)
    a = _scaled(a, 1)
    scale = common_denominator(values)
    if scale != 1:
        table = [int(v * scale) for v in values]
        curve = CurveOracle(table.__getitem__, CONCAVE, 0, m)
        a = [INF if v == INF else v * scale for v in a]
        values = table
    check_sum_range(a, values)
    out = _block_reduce(a, m, curve, ConvexDiffSPO(curve), 2, stats)
    return [unscale(v, scale) for v in out]


def full_concave(a: Sequence, b: Sequence, stats=None) -> list:
    m = len(b)
    rev = list(reversed(b))
    return full_from_reduced(a, b, lambda ap, _br: reduced_concave(ap, rev, m, stats))
