"""Shortest and closest lattice vectors by dynamic programming over a finite group.

For a nonsingular integer ``A`` with Smith form ``P A Q = S``, an integer
vector ``x`` lies in the lattice ``A Z^n`` exactly when ``P x`` vanishes
modulo the diagonal of ``S``. Writing ``g_i`` for column ``i`` of ``P``
reduced modulo ``S``, membership becomes ``sum x_i g_i = 0`` in the group
``Z^n / S Z^n`` of order ``|det A|``. Both problems are then solved by a
layered table over the group elements, one layer per coordinate, where each
layer update is a cyclic (min,+) product along the cosets of ``<g_k>``.

Objectives are separable, ``sum f(|x_i|)`` or ``sum f(|x_i - q_i|)``, with
``f`` non-decreasing and convex on the non-negative reals.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Optional, Sequence

from .convolution import cyclic_minconv_convex
from .errors import ObjectiveClassError, SingularMatrix, TooLarge
from .sign_partition import IntPolynomial, is_convex_seq
from .values import INF


# -- integer matrices --------------------------------------------------------

def identity(n: int) -> list:
    return [[int(i == j) for j in range(n)] for i in range(n)]


def matmul(A, B) -> list:
    cols = list(zip(*B))
    return [[sum(a * b for a, b in zip(row, col)) for col in cols] for row in A]


def matvec(A, x) -> list:
    return [sum(a * b for a, b in zip(row, x)) for row in A]


def _check_square(A):
    n = len(A)
    if n == 0 or any(len(row) != n for row in A):
        raise ValueError("matrix must be square and non-empty")
    if any(int(v) != v for row in A for v in row):
        raise ValueError("matrix entries must be integers")


def det(A) -> int:
    """Determinant by fraction-free (Bareiss) elimination."""
    _check_square(A)
    M = [[int(v) for v in row] for row in A]
    n = len(M)
    sign, prev = 1, 1
    for k in range(n - 1):
        if M[k][k] == 0:
            for i in range(k + 1, n):
                if M[i][k]:
                    M[k], M[i] = M[i], M[k]
                    sign = -sign
                    break
            else:
                return 0
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                M[i][j] = (M[i][j] * M[k][k] - M[i][k] * M[k][j]) // prev
        prev = M[k][k]
    return sign * M[-1][-1]


def adjugate(A) -> list:
    """``adj(A) = det(A) * A^{-1}`` for nonsingular ``A``, by exact Gauss-Jordan."""
    n = len(A)
    d = det(A)
    if d == 0:
        raise SingularMatrix("matrix is singular")
    M = [[Fraction(v) for v in row] + [Fraction(int(i == j)) for j in range(n)]
         for i, row in enumerate(A)]
    for c in range(n):
        p = next(r for r in range(c, n) if M[r][c] != 0)
        M[c], M[p] = M[p], M[c]
        piv = M[c][c]
        M[c] = [v / piv for v in M[c]]
        for r in range(n):
            if r != c and M[r][c] != 0:
                k = M[r][c]
                M[r] = [v - k * w for v, w in zip(M[r], M[c])]
    return [[int(v * d) for v in row[n:]] for row in M]


# -- Smith normal form -------------------------------------------------------

@dataclass
class SnfDecomposition:
    """``P A Q = S`` with unimodular ``P``, ``Q`` and a dividing diagonal ``S``."""

    P: list
    S: list
    Q: list

    @property
    def diagonal(self) -> list:
        return [self.S[i][i] for i in range(len(self.S))]

    def verify(self, A) -> None:
        """Raise ``AssertionError`` unless every defining identity holds."""
        n = len(A)
        if matmul(matmul(self.P, A), self.Q) != self.S:
            raise AssertionError("P A Q != S")
        if abs(det(self.P)) != 1 or abs(det(self.Q)) != 1:
            raise AssertionError("P or Q is not unimodular")
        s = self.diagonal
        if any(self.S[i][j] for i in range(n) for j in range(n) if i != j):
            raise AssertionError("S is not diagonal")
        if any(v <= 0 for v in s):
            raise AssertionError("S has a non-positive diagonal entry")
        if any(s[i + 1] % s[i] for i in range(n - 1)):
            raise AssertionError("diagonal fails the divisibility chain")
        if math.prod(s) != abs(det(A)):
            raise AssertionError("diagonal product differs from |det A|")


def snf(A) -> SnfDecomposition:
    """Smith form by gcd-pivot row and column elimination.

    Every row operation is mirrored on ``P`` and every column operation on
    ``Q``, both starting from the identity.
    """
    _check_square(A)
    if det(A) == 0:
        raise SingularMatrix("matrix is singular")
    n = len(A)
    S = [[int(v) for v in row] for row in A]
    P, Q = identity(n), identity(n)

    def swap_rows(i, j):
        S[i], S[j] = S[j], S[i]
        P[i], P[j] = P[j], P[i]

    def swap_cols(i, j):
        for M in (S, Q):
            for row in M:
                row[i], row[j] = row[j], row[i]

    def add_row(dst, src, k):
        # row dst += k * row src
        for M in (S, P):
            M[dst] = [a + k * b for a, b in zip(M[dst], M[src])]

    def add_col(dst, src, k):
        for M in (S, Q):
            for row in M:
                row[dst] += k * row[src]

    for t in range(n):
        while True:
            _, pi, pj = min((abs(S[i][j]), i, j) for i in range(t, n) for j in range(t, n)
                            if S[i][j])
            swap_rows(t, pi)
            swap_cols(t, pj)
            piv = S[t][t]
            clean = True
            for i in range(t + 1, n):
                if S[i][t]:
                    add_row(i, t, -(S[i][t] // piv))
                    clean = clean and S[i][t] == 0
            for j in range(t + 1, n):
                if S[t][j]:
                    add_col(j, t, -(S[t][j] // piv))
                    clean = clean and S[t][j] == 0
            if not clean:
                continue
            bad = next((i for i in range(t + 1, n) for j in range(t + 1, n)
                        if S[i][j] % piv), None)
            if bad is None:
                break
            add_row(t, bad, 1)
        if S[t][t] < 0:
            S[t] = [-v for v in S[t]]
            P[t] = [-v for v in P[t]]
    dec = SnfDecomposition(P, S, Q)
    dec.verify(A)
    return dec


# -- the finite group --------------------------------------------------------

@dataclass(frozen=True)
class GroupRep:
    """``Z_{m_1} x ... x Z_{m_r}`` with elements as tuples and mixed-radix indices."""

    moduli: tuple

    @property
    def order(self) -> int:
        return math.prod(self.moduli)

    @property
    def zero(self) -> tuple:
        return (0,) * len(self.moduli)

    def reduce(self, v: Sequence[int]) -> tuple:
        return tuple(x % m for x, m in zip(v, self.moduli))

    def add(self, a, b) -> tuple:
        return tuple((x + y) % m for x, y, m in zip(a, b, self.moduli))

    def neg(self, a) -> tuple:
        return tuple(-x % m for x, m in zip(a, self.moduli))

    def mul(self, k: int, a) -> tuple:
        return tuple(k * x % m for x, m in zip(a, self.moduli))

    def index(self, a) -> int:
        idx = 0
        for x, m in zip(reversed(a), reversed(self.moduli)):
            idx = idx * m + x
        return idx

    def element(self, idx: int) -> tuple:
        out = []
        for m in self.moduli:
            idx, x = divmod(idx, m)
            out.append(x)
        return tuple(out)

    def element_order(self, a) -> int:
        d = 1
        for x, m in zip(a, self.moduli):
            d = math.lcm(d, m // math.gcd(x, m))
        return d

    def add_table(self, g) -> list:
        """``t -> index(element(t) + g)`` for every index ``t``."""
        return [self.index(self.add(self.element(t), g)) for t in range(self.order)]

    def cosets(self, g) -> list:
        """Cosets of ``<g>``, each as the index walk ``q, q + g, q + 2g, ...``."""
        step = self.add_table(g)
        seen = [False] * self.order
        out = []
        for start in range(self.order):
            if seen[start]:
                continue
            walk, t = [], start
            while not seen[t]:
                seen[t] = True
                walk.append(t)
                t = step[t]
            out.append(walk)
        return out


def group_of(dec: SnfDecomposition):
    """The group of non-trivial diagonal entries and the generators ``g_i``."""
    n = len(dec.S)
    keep = [i for i in range(n) if dec.S[i][i] > 1]
    group = GroupRep(tuple(dec.S[i][i] for i in keep))
    gens = [group.reduce([dec.P[i][j] for i in keep]) for j in range(n)]
    return group, gens


def in_lattice(dec: SnfDecomposition, x: Sequence[int]) -> bool:
    """``P x == 0`` modulo the diagonal of ``S``."""
    px = matvec(dec.P, x)
    return all(v % s == 0 for v, s in zip(px, dec.diagonal))


# -- objectives --------------------------------------------------------------

def abs_objective(t):
    return t


def square_objective(t):
    return t * t


def polynomial_objective(coeffs: Sequence[int]) -> Callable:
    """``t -> sum c_i t^i``; non-negative coefficients above degree 0 are required."""
    poly = IntPolynomial(coeffs)
    if any(c < 0 for c in poly.coeffs[1:]):
        raise ObjectiveClassError("coefficients of positive degree must be non-negative")
    return poly


def _check_monotone_convex(values, what):
    if any(b < a for a, b in zip(values, values[1:])) or not is_convex_seq(values):
        raise ObjectiveClassError(f"{what} is not non-decreasing and convex")


@dataclass
class LatticeSolution:
    value: object
    x: list
    delta: int
    diagonal: list
    stats: dict = field(default_factory=dict)


# -- layers ------------------------------------------------------------------

def eta_layer(g, group: GroupRep, f_pos: Callable, f_neg: Optional[Callable] = None) -> list:
    """Cheapest single-coordinate multiple ``j * g`` (``j != 0``) reaching each element.

    ``f_pos(j)`` prices ``x = j`` and ``f_neg(j)`` prices ``x = -j``, ``j >= 1``.
    """
    f_neg = f_pos if f_neg is None else f_neg
    eta = [INF] * group.order
    d = group.element_order(g)
    for j in range(1, d + 1):
        for e, cost in ((group.mul(j, g), f_pos(j)), (group.mul(-j, g), f_neg(j))):
            t = group.index(e)
            if cost < eta[t]:
                eta[t] = cost
    return eta


def psi_layers(prev: list, g, group: GroupRep, b_pos: Sequence, b_neg: Sequence,
               stats: Optional[dict] = None):
    """``psi+(e) = min_j prev(e - j g) + b_pos[j]`` and ``psi-(e) = min_j prev(e + j g) + b_neg[j]``.

    ``j`` ranges over ``[0, d)`` with ``d`` the order of ``g``; both ``b`` must
    be convex. Each coset of ``<g>`` is one cyclic product.
    """
    plus = [INF] * group.order
    minus = [INF] * group.order
    for walk in group.cosets(g):
        d = len(walk)
        a = [prev[t] for t in walk]
        for s, v in enumerate(cyclic_minconv_convex(a, list(b_pos[:d]), stats)):
            plus[walk[s]] = v
        # walking the coset backwards turns e + j g into e' - j g
        back = [a[-s % d] for s in range(d)]
        for s, v in enumerate(cyclic_minconv_convex(back, list(b_neg[:d]), stats)):
            minus[walk[-s % d]] = v
    return plus, minus


# -- shortest vector ---------------------------------------------------------

def svp_dedup_shortcut(gens: Sequence, group: GroupRep, f1) -> Optional[tuple]:
    """Immediate optimum when a generator is zero or two are equal up to sign.

    Returns ``(x, value)`` in the generator coordinates, or ``None``.
    """
    n = len(gens)
    for i, g in enumerate(gens):
        if g == group.zero:
            x = [0] * n
            x[i] = 1
            return x, f1
    seen = {}
    for i, g in enumerate(gens):
        for key, sign in ((g, -1), (group.neg(g), 1)):
            if key in seen:
                x = [0] * n
                x[seen[key]] = 1
                x[i] = sign
                return x, 2 * f1
        seen[g] = i
    return None


def svp_solve(A, f: Callable = square_objective, stats: Optional[dict] = None) -> LatticeSolution:
    """Nonzero ``x`` in ``A Z^n`` minimizing ``sum f(|x_i|)``."""
    stats = {} if stats is None else stats
    dec = snf(A)
    group, gens = group_of(dec)
    n, delta = len(A), group.order
    f0 = f(0)

    def fn(j):
        return f(abs(j)) - f0

    _check_monotone_convex([fn(j) for j in range(delta + 2)], "objective")
    stats["moduli"] = len(group.moduli)
    short = svp_dedup_shortcut(gens, group, fn(1))
    if short is not None:
        x, _ = short
        stats["shortcut"] = True
        return _finish(dec, delta, x, sum(f(abs(v)) for v in x))

    bvals = [fn(j) for j in range(delta + 1)]
    etas, tables = [], []
    dp = eta_layer(gens[0], group, fn)
    etas.append(dp)
    tables.append(dp)
    for k in range(1, n):
        plus, minus = psi_layers(dp, gens[k], group, bvals, bvals, stats)
        eta = eta_layer(gens[k], group, fn)
        dp = [min(p, m, e) for p, m, e in zip(plus, minus, eta)]
        etas.append(eta)
        tables.append(dp)

    x = [0] * n
    t = group.index(group.zero)
    for k in range(n - 1, -1, -1):
        g = gens[k]
        target = tables[k][t]
        if etas[k][t] == target:
            x[k] = _single_multiple(g, group, t, fn, fn, target)
            break
        x[k], t = _step_back(g, group, t, tables[k - 1], bvals, bvals, target)
    value = sum(f(abs(v)) for v in x)
    if value - n * f0 != tables[-1][group.index(group.zero)]:
        raise AssertionError("reconstructed vector does not attain the table optimum")
    return _finish(dec, delta, x, value)


def _single_multiple(g, group, t, f_pos, f_neg, target) -> int:
    for j in range(1, group.element_order(g) + 1):
        if group.index(group.mul(j, g)) == t and f_pos(j) == target:
            return j
        if group.index(group.mul(-j, g)) == t and f_neg(j) == target:
            return -j
    raise AssertionError("no single multiple attains the table value")


def _step_back(g, group, t, prev, b_pos, b_neg, target):
    e = group.element(t)
    for j in range(group.element_order(g)):
        s = group.index(group.add(e, group.mul(-j, g)))
        if prev[s] != INF and prev[s] + b_pos[j] == target:
            return j, s
        s = group.index(group.add(e, group.mul(j, g)))
        if prev[s] != INF and prev[s] + b_neg[j] == target:
            return -j, s
    raise AssertionError("no predecessor attains the table value")


def _finish(dec, delta, x, value) -> LatticeSolution:
    if not in_lattice(dec, x):
        raise AssertionError("solution is not a lattice vector")
    return LatticeSolution(value, list(x), delta, dec.diagonal)


# -- closest vector ----------------------------------------------------------

@dataclass
class CvpTransform:
    """``x = shift + sign * z[perm^-1]``: original ``x_i = shift_i + signs_i * z[pos_i]``."""

    shift: list
    signs: list
    order: list

    def recover(self, z: Sequence[int]) -> list:
        y = [0] * len(z)
        for pos, i in enumerate(self.order):
            y[i] = z[pos]
        return [s + sg * v for s, sg, v in zip(self.shift, self.signs, y)]


@dataclass
class GroupProblem:
    group: GroupRep
    generators: list
    target: tuple
    q: list
    members: list = None

    def __post_init__(self):
        if self.members is None:
            self.members = [[i] for i in range(len(self.generators))]


def cvp_normalize(A, q: Sequence, dec: Optional[SnfDecomposition] = None):
    """Shift by the rounded target, flip signs and sort so that ``1/2 >= q_1 >= ... >= q_n >= 0``."""
    dec = snf(A) if dec is None else dec
    group, gens = group_of(dec)
    q = [Fraction(v) for v in q]
    half = Fraction(1, 2)
    shift = [math.floor(v + half) for v in q]
    rest = [v - r for v, r in zip(q, shift)]
    signs = [-1 if v < 0 else 1 for v in rest]
    rest = [abs(v) for v in rest]
    order = sorted(range(len(q)), key=lambda i: (-rest[i], i))
    gens = [group.mul(signs[i], gens[i]) for i in order]
    keep = [i for i in range(len(A)) if dec.S[i][i] > 1]
    pr = matvec(dec.P, shift)
    target = group.reduce([-pr[i] for i in keep])
    problem = GroupProblem(group, gens, target, [rest[i] for i in order])
    return problem, CvpTransform(shift, signs, order)


def merged_objective(qs: Sequence, f: Callable, bound: int):
    """Cheapest split of ``y`` over variables with targets ``qs`` (sorted non-increasing).

    Returns ``(h, split)`` where ``h[y]`` for ``|y| <= bound`` is
    ``min sum f(|x_i - q_i|)`` subject to ``sum x_i = y`` and ``split(y)`` is
    an optimal ``x``. Optimal splits are balanced: every ``x_i`` is
    ``floor(y/k)`` or one more, the extra units going to the largest ``q``
    for positive ``y`` and, mirrored, to the smallest ``q`` for negative ``y``.
    """
    k = len(qs)

    def split(y):
        s = 1 if y >= 0 else -1
        a, r = divmod(abs(y), k)
        x = [a] * k
        idx = range(r) if s > 0 else range(k - r, k)
        for i in idx:
            x[i] += 1
        return [s * v for v in x]

    def cost(i, x):
        return f(abs(x - qs[i]))

    h = {0: sum(cost(i, 0) for i in range(k))}
    for y in range(bound):
        a, r = divmod(y, k)
        h[y + 1] = h[y] + cost(r, a + 1) - cost(r, a)
        i = k - 1 - r
        h[-y - 1] = h[-y] + cost(i, -a - 1) - cost(i, -a)
    return h, split


def cvp_merge_duplicates(problem: GroupProblem, f: Callable):
    """One variable per class of equal generators; returns the merged problem and tables."""
    classes = {}
    for pos, g in enumerate(problem.generators):
        classes.setdefault(g, []).append(pos)
    bound = problem.group.order
    gens, members, tables = [], [], []
    for g, idx in classes.items():
        idx.sort(key=lambda p: (-problem.q[p], p))
        h, split = merged_objective([problem.q[p] for p in idx], f, bound)
        _check_monotone_convex([h[j] for j in range(bound + 1)], "merged objective")
        _check_monotone_convex([h[-j] for j in range(bound + 1)], "merged objective")
        gens.append(g)
        members.append(idx)
        tables.append((h, split))
    merged = GroupProblem(problem.group, gens, problem.target, problem.q, members)
    return merged, tables


def cvp_solve(A, q: Sequence, f: Callable = square_objective,
              stats: Optional[dict] = None) -> LatticeSolution:
    """``x`` in ``A Z^n`` minimizing ``sum f(|x_i - q_i|)`` for rational ``q``."""
    stats = {} if stats is None else stats
    dec = snf(A)
    if len(q) != len(A):
        raise ValueError("target length differs from the matrix size")
    problem, tr = cvp_normalize(A, q, dec)
    merged, tables = cvp_merge_duplicates(problem, f)
    group = merged.group
    delta = group.order
    stats["moduli"] = len(group.moduli)
    stats["merged_vars"] = len(merged.generators)
    gens = merged.generators
    bpos = [[h[j] for j in range(delta + 1)] for h, _ in tables]
    bneg = [[h[-j] for j in range(delta + 1)] for h, _ in tables]

    h1 = tables[0][0]
    dp = [INF] * delta
    d1 = group.element_order(gens[0])
    for j in range(-d1, d1 + 1):
        t = group.index(group.mul(j, gens[0]))
        if h1[j] < dp[t]:
            dp[t] = h1[j]
    layers = [dp]
    for k in range(1, len(gens)):
        plus, minus = psi_layers(dp, gens[k], group, bpos[k], bneg[k], stats)
        dp = [p if p < m else m for p, m in zip(plus, minus)]
        layers.append(dp)

    t = group.index(merged.target)
    best = layers[-1][t]
    y = [0] * len(gens)
    for k in range(len(gens) - 1, 0, -1):
        y[k], t = _step_back(gens[k], group, t, layers[k - 1], bpos[k], bneg[k], layers[k][t])
    target = layers[0][t]
    y[0] = next(j for j in sorted(range(-d1, d1 + 1), key=abs)
                if group.index(group.mul(j, gens[0])) == t and h1[j] == target)

    z = [0] * len(problem.generators)
    for yk, idx, (_, split) in zip(y, merged.members, tables):
        for p, v in zip(idx, split(yk)):
            z[p] = v
    x = tr.recover(z)
    value = sum(f(abs(xi - qi)) for xi, qi in zip(x, (Fraction(v) for v in q)))
    if value != best:
        raise AssertionError("reconstructed vector does not attain the table optimum")
    return _finish(dec, delta, x, value)


# -- enumeration oracle ------------------------------------------------------

def lattice_bruteforce(A, f: Callable = square_objective, q: Optional[Sequence] = None,
                       radius: Optional[int] = None, limit: int = 10 ** 7) -> LatticeSolution:
    """Exact optimum by depth-first enumeration of integer points in a box.

    Membership is tested with ``adj(A) x == 0 (mod |det A|)``, independent
    of the Smith form. Without an explicit ``radius`` the box is cut to the
    points whose coordinates can each stay within a known upper bound on
    the optimum: the cheapest column of ``A`` (or multiple of ``e_1``) for
    the shortest vector, the rounded target mapped back through ``A`` for
    the closest vector.
    """
    _check_square(A)
    n = len(A)
    d = det(A)
    if d == 0:
        raise SingularMatrix("matrix is singular")
    delta = abs(d)
    adj = adjugate(A)
    svp = q is None
    qf = [Fraction(0)] * n if svp else [Fraction(v) for v in q]
    center = [math.floor(v + Fraction(1, 2)) for v in qf]

    def total(x):
        return sum(f(abs(xi - qi)) for xi, qi in zip(x, qf))

    if svp:
        cols = [[A[i][j] for i in range(n)] for j in range(n)]
        upper = min([total(c) for c in cols] + [total([delta] + [0] * (n - 1))])
    else:
        # rounding A^-1 q gives some lattice point
        coeffs = [Fraction(sum(adj[i][j] * qf[j] for j in range(n)), d) for i in range(n)]
        t = [math.floor(c + Fraction(1, 2)) for c in coeffs]
        point = matvec(A, t)
        # delta * Z^n lies inside the lattice
        coarse = [delta * math.floor(v / delta + Fraction(1, 2)) for v in qf]
        if total(coarse) < total(point):
            point = coarse
        cols = [[A[i][j] for i in range(n)] for j in range(n)]
        improved = True
        while improved:
            improved = False
            for c in cols:
                for s in (1, -1):
                    cand = [p + s * v for p, v in zip(point, c)]
                    if total(cand) < total(point):
                        point, improved = cand, True
        upper = total(point)

    # costs are measured above each coordinate's own minimum, at the rounded target
    floor_cost = [f(abs(c - qi)) for c, qi in zip(center, qf)]
    slack = upper - sum(floor_cost)

    def extra(i, v):
        return f(abs(v - qf[i])) - floor_cost[i]

    ranges = []
    for i in range(n):
        vals = [center[i]]
        step = 1
        while radius is None or step <= radius:
            fresh = [v for v in (center[i] + step, center[i] - step)
                     if radius is not None or extra(i, v) <= slack]
            if not fresh:
                break
            vals.extend(fresh)
            step += 1
        ranges.append(sorted(vals, key=lambda v: extra(i, v)))
    if math.prod(len(r) for r in ranges) > limit:
        raise TooLarge(f"enumeration box exceeds {limit} points")

    best = [None, None]
    x = [0] * n
    cols = [[adj[i][j] for i in range(n)] for j in range(n)]

    def dfs(i, partial, residue):
        if best[0] is not None and partial > best[0]:
            return
        if i == n:
            if any(residue):
                return
            if svp and not any(x):
                return
            if best[0] is None or partial < best[0]:
                best[0], best[1] = partial, list(x)
            return
        col = cols[i]
        for v in ranges[i]:
            x[i] = v
            dfs(i + 1, partial + extra(i, v),
                [(r + v * c) % delta for r, c in zip(residue, col)])
        x[i] = 0

    dfs(0, 0, [0] * n)
    if best[0] is None:
        raise AssertionError("no lattice point inside the enumeration box")
    return LatticeSolution(total(best[1]), best[1], delta, [])
