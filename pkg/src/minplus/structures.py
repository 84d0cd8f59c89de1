"""Queue with minimum, range-add/range-min segment tree, augmented segment tree."""
from __future__ import annotations

from bisect import bisect_right
from dataclasses import dataclass

from .errors import BadRange, EmptyQueue, ShiftOutOfDomain
from .values import INF, check_ext


class MinQueue:
    """FIFO queue answering ``min()`` in O(1).

    Two stacks glued at the bottom: pushes go to the tail stack, pops come
    from the head stack, which is refilled from the tail only when empty.
    Each stack entry carries the running minimum of the stack below it.
    ``ops`` counts public operations, ``transfers`` counts element moves.
    """

    def __init__(self, items=()):
        self._head = []
        self._tail = []
        self.ops = 0
        self.transfers = 0
        for x in items:
            self.push(x)

    def __len__(self):
        return len(self._head) + len(self._tail)

    def __bool__(self):
        return bool(self._head) or bool(self._tail)

    def push(self, x) -> None:
        self.ops += 1
        tail = self._tail
        if tail and tail[-1][1] < x:
            tail.append((x, tail[-1][1]))
        else:
            tail.append((x, x))

    def pop(self):
        self.ops += 1
        head = self._head
        if not head:
            tail = self._tail
            if not tail:
                raise EmptyQueue("pop from an empty MinQueue")
            self.transfers += len(tail)
            while tail:
                x = tail.pop()[0]
                if head and head[-1][1] < x:
                    head.append((x, head[-1][1]))
                else:
                    head.append((x, x))
        return head.pop()[0]

    def min(self):
        self.ops += 1
        head, tail = self._head, self._tail
        if head and tail:
            h, t = head[-1][1], tail[-1][1]
            return t if t < h else h
        if head:
            return head[-1][1]
        if tail:
            return tail[-1][1]
        raise EmptyQueue("min of an empty MinQueue")


def next_pow2(n: int) -> int:
    return 1 << max(0, (n - 1).bit_length())


def decompose(n: int, i: int, j: int) -> list:
    """Split ``[i, j)`` into basic intervals of a size-``n`` tree, left to right.

    At most ``2*log2(n)`` pieces (one for the whole range when n == 1).
    """
    if n < 1 or n & (n - 1):
        raise BadRange(f"tree size {n} is not a power of 2")
    return [_node_interval(n, v) for v in _decompose_nodes(n, i, j)]


def _decompose_nodes(n: int, i: int, j: int) -> list:
    if not 0 <= i < j <= n:
        raise BadRange(f"bad interval [{i}, {j}) for size {n}")
    left, right = [], []
    lo, hi = i + n, j + n
    while lo < hi:
        if lo & 1:
            left.append(lo)
            lo += 1
        if hi & 1:
            hi -= 1
            right.append(hi)
        lo >>= 1
        hi >>= 1
    right.reverse()
    return left + right


def _node_interval(n: int, v: int) -> tuple:
    depth = v.bit_length() - 1
    size = n >> depth
    lo = (v - (1 << depth)) * size
    return lo, lo + size


def is_basic(n: int, lo: int, hi: int) -> bool:
    size = hi - lo
    return 0 <= lo < hi <= n and size & (size - 1) == 0 and lo % size == 0


class SegTree:
    """Range add / range min over an array padded with +inf to a power of 2.

    Heap layout with root 1 and leaves at ``n..2n-1``. ``_lazy[v]`` holds an
    addition not yet pushed to the children of ``v``; ``_min[v]`` already
    includes it. Pending additions are pushed down along both boundary paths
    before a query reads any node.
    """

    def __init__(self, values):
        values = list(values)
        if not values:
            raise BadRange("cannot build a tree on an empty array")
        self.length = len(values)
        n = next_pow2(len(values))
        self.n = n
        self._h = n.bit_length() - 1
        t = [INF] * (2 * n)
        t[n:n + len(values)] = [check_ext(v) for v in values]
        for v in range(n - 1, 0, -1):
            a, b = t[2 * v], t[2 * v + 1]
            t[v] = a if a < b else b
        self._min = t
        self._lazy = [0] * n

    def _check(self, i, j):
        if not 0 <= i < j <= self.n:
            raise BadRange(f"bad interval [{i}, {j}) for size {self.n}")

    def _apply(self, v, x):
        # only subtree minima are tracked, so overflow is caught on minima
        self._min[v] = check_ext(self._min[v] + x)
        if v < self.n:
            self._lazy[v] += x

    def _push(self, p):
        lazy = self._lazy
        for s in range(self._h, 0, -1):
            v = p >> s
            x = lazy[v]
            if x:
                self._apply(2 * v, x)
                self._apply(2 * v + 1, x)
                lazy[v] = 0

    def _pull(self, p):
        t, lazy = self._min, self._lazy
        while p > 1:
            p >>= 1
            a, b = t[2 * p], t[2 * p + 1]
            t[p] = (a if a < b else b) + lazy[p]

    def range_min(self, i: int, j: int):
        self._check(i, j)
        n = self.n
        lo, hi = i + n, j + n
        self._push(lo)
        self._push(hi - 1)
        t = self._min
        res = INF
        while lo < hi:
            if lo & 1:
                if t[lo] < res:
                    res = t[lo]
                lo += 1
            if hi & 1:
                hi -= 1
                if t[hi] < res:
                    res = t[hi]
            lo >>= 1
            hi >>= 1
        return res

    def range_add(self, i: int, j: int, x) -> None:
        self._check(i, j)
        if x == INF or x == -INF:
            raise ValueError("range_add needs a finite increment")
        n = self.n
        lo, hi = i + n, j + n
        l0, r0 = lo, hi - 1
        while lo < hi:
            if lo & 1:
                self._apply(lo, x)
                lo += 1
            if hi & 1:
                hi -= 1
                self._apply(hi, x)
            lo >>= 1
            hi >>= 1
        self._pull(l0)
        self._pull(r0)

    def point_add(self, i: int, x) -> None:
        self.range_add(i, i + 1, x)

    def to_list(self) -> list:
        return [self.range_min(k, k + 1) for k in range(self.length)]


@dataclass(frozen=True)
class FnPiece:
    """``g(x) = A[index] + f(x + shift)`` on the integer interval ``[lo, hi)``."""

    lo: int
    hi: int
    index: int
    shift: int


NONNEG = "NONNEG"
NONPOS = "NONPOS"


class AugSegTree:
    """Segment tree whose nodes store piecewise forms of the shifted window min.

    For the node covering ``[i_v, i_v + L)`` the stored pieces describe

        F(v; x) = min_{0 <= k < L} A[i_v + k] + f(x + k)

    for every shift ``x`` at which all touched points lie in ``[0, domain)``,
    i.e. ``x`` in ``[0, domain - L + 1)``. A piece is identified by the array
    index ``j`` it takes its value from; its shift is ``j - i_v``.

    ``curve`` is called as ``curve(x)``; ``spo(a, b, c, lo, hi)`` must return a
    sign partition ``[(lo, hi, label), ...]`` of
    ``f(x + a) - f(x + b) + c`` over ``[lo, hi)``.
    """

    def __init__(self, values, curve, spo, domain=None):
        values = list(values)
        if not values:
            raise BadRange("cannot build a tree on an empty array")
        n = next_pow2(len(values))
        self.n = n
        self.length = len(values)
        self.domain = n if domain is None else domain
        self.values = [check_ext(v) for v in values] + [INF] * (n - len(values))
        self.curve = curve
        self.spo = spo
        self.spo_calls = 0
        self._starts = [None] * (2 * n)
        self._index = [None] * (2 * n)
        self._build()

    def node_domain(self, v: int) -> int:
        lo, hi = _node_interval(self.n, v)
        return max(0, self.domain - (hi - lo) + 1)

    def _build(self):
        n = self.n
        starts, index = self._starts, self._index
        leaf_dom = self.domain
        for i in range(n):
            if leaf_dom > 0:
                starts[n + i] = [0]
                index[n + i] = [i]
            else:
                starts[n + i] = []
                index[n + i] = []
        for v in range(n - 1, 0, -1):
            self._merge(v)

    def _merge(self, v):
        A, spo = self.values, self.spo
        i_v, hi_v = _node_interval(self.n, v)
        half = (hi_v - i_v) // 2
        dom = self.domain - 2 * half + 1
        out_s, out_j = [], []
        self._starts[v], self._index[v] = out_s, out_j
        if dom <= 0:
            return
        su, ju = self._starts[2 * v], self._index[2 * v]
        sw, jw = self._starts[2 * v + 1], self._index[2 * v + 1]
        pu = 0
        pw = bisect_right(sw, half) - 1
        nu, nw = len(su), len(sw)
        x = 0
        while x < dom:
            eu = su[pu + 1] if pu + 1 < nu else dom
            ew = sw[pw + 1] - half if pw + 1 < nw else dom
            end = min(eu, ew, dom)
            j1, j2 = ju[pu], jw[pw]
            a1, a2 = A[j1], A[j2]
            if a2 == INF:
                pieces = ((x, end, NONPOS),)
            elif a1 == INF:
                pieces = ((x, end, NONNEG),)
            else:
                self.spo_calls += 1
                pieces = spo(j1 - i_v, j2 - i_v, a1 - a2, x, end)
            for lo, _hi, label in pieces:
                j = j1 if label == NONPOS else j2
                if not out_j or out_j[-1] != j:
                    out_s.append(lo)
                    out_j.append(j)
            x = end
            if eu == end:
                pu += 1
            if ew == end:
                pw += 1

    def pieces(self, v: int) -> list:
        """The stored pieces of heap node ``v`` as ``FnPiece`` objects."""
        i_v, _ = _node_interval(self.n, v)
        s, js = self._starts[v], self._index[v]
        ends = s[1:] + [self.node_domain(v)]
        return [FnPiece(lo, hi, j, j - i_v) for lo, hi, j in zip(s, ends, js)]

    def nodes(self):
        """Yield ``(v, lo, hi)`` for every heap node."""
        for v in range(1, 2 * self.n):
            lo, hi = _node_interval(self.n, v)
            yield v, lo, hi

    def _node_value(self, v, x):
        s = self._starts[v]
        j = self._index[v][bisect_right(s, x) - 1]
        a = self.values[j]
        if a == INF:
            return INF
        i_v = (v - (1 << (v.bit_length() - 1))) * (self.n >> (v.bit_length() - 1))
        return a + self.curve(x + j - i_v)

    def query(self, i: int, j: int, x: int):
        """``min_{0 <= k < j - i} A[i + k] + f(x + k)``."""
        if not 0 <= i < j <= self.n:
            raise BadRange(f"bad interval [{i}, {j}) for size {self.n}")
        if x < 0 or x + (j - i - 1) >= self.domain:
            raise ShiftOutOfDomain(f"shift {x} over [{i}, {j}) leaves [0, {self.domain})")
        if i == 0 and j == self.n:
            return self._node_value(1, x)
        best = INF
        for v in _decompose_nodes(self.n, i, j):
            lo, _ = _node_interval(self.n, v)
            val = self._node_value(v, x + lo - i)
            if val < best:
                best = val
        return best
