"""Distance between vertex list sequences.

Three routes to the same number:

* :func:`dist` -- the leaf insert/delete/relabel recurrence, optionally
  banded with an early exit once every cell exceeds ``limit``;
* :func:`dist_oracle` -- a plain full-table edit distance that knows nothing
  about sortedness or vertex-list structure beyond equality tests;
* :class:`DistanceMatrix` -- the same table grown one candidate column at a
  time, which is what the trie search uses.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Optional, Sequence

from .tree import VertexList


class CostError(ValueError):
    pass


class MatrixUnderflowError(IndexError):
    pass


@dataclass(frozen=True)
class CostParams:
    """Integer edit costs.

    ``c`` is charged for a leaf label change, ``s`` for a leaf insertion or
    deletion. ``c <= 2 * s`` is required: a label change must never cost
    more than deleting the leaf and inserting the new one.
    """

    c: int = 1
    s: int = 2

    def __post_init__(self) -> None:
        for name in ("c", "s"):
            value = getattr(self, name)
            if isinstance(value, bool) or not isinstance(value, int):
                raise CostError(f"cost {name} must be an integer, got {value!r}")
        if self.c < 0:
            raise CostError(f"label-change cost must be >= 0, got {self.c}")
        if self.s < 1:
            raise CostError(f"insert/delete cost must be >= 1, got {self.s}")
        if self.c > 2 * self.s:
            raise CostError(f"label-change cost {self.c} exceeds twice the insert/delete cost {self.s}")

    @property
    def m_indel(self) -> int:
        return self.s


DEFAULT_COSTS = CostParams()

_UNBOUNDED = 1 << 62


def dist(
    x: Sequence[VertexList],
    y: Sequence[VertexList],
    costs: CostParams = DEFAULT_COSTS,
    limit: Optional[int] = None,
) -> int:
    """Minimum cost of leaf insertions, deletions and label changes from x to y.

    With ``limit`` set, only cells that can still be ``<= limit`` are
    evaluated and the result is ``min(true distance, limit + 1)``.
    """
    c, s = costs.c, costs.s
    m, n = len(x), len(y)
    if limit is None:
        band = max(m, n)
        cap = math.inf
    else:
        if limit < 0:
            raise ValueError("limit must be non-negative")
        band = limit // s
        cap = limit + 1
        if abs(m - n) > band:
            return cap

    # prev[j] = dist(X[i-1], Y[j]); cells outside the band stay at cap
    prev = [min(j * s, cap) for j in range(n + 1)]
    for i in range(1, m + 1):
        xi = x[i - 1]
        cur = [cap] * (n + 1)
        lo = max(0, i - band)
        hi = min(n, i + band)
        if lo == 0:
            cur[0] = min(i * s, cap)
            lo = 1
        row_min = cur[0] if i <= band else cap
        head, size = xi[:-1], len(xi)
        for j in range(lo, hi + 1):
            yj = y[j - 1]
            if yj == xi:
                # taking the match is always optimal under uniform insert/delete cost
                v = prev[j - 1]
            else:
                # y_j < x_i: drop x_i; x_i < y_j: drop y_j. Both stay admissible
                # whichever way the last lists compare.
                v = prev[j] + s
                w = cur[j - 1] + s
                if w < v:
                    v = w
                if len(yj) == size and yj[:-1] == head:
                    w = prev[j - 1] + c
                    if w < v:
                        v = w
            if v > cap:
                v = cap
            cur[j] = v
            if v < row_min:
                row_min = v
        if limit is not None and row_min > limit:
            return cap
        prev = cur
    return prev[n]


def dist_oracle(
    x: Sequence[VertexList],
    y: Sequence[VertexList],
    costs: CostParams = DEFAULT_COSTS,
) -> int:
    """Full O(m*n) edit-distance table; no ordering assumptions."""
    c, s = costs.c, costs.s
    m, n = len(x), len(y)
    inf = float("inf")
    table = [[0] * (n + 1) for _ in range(m + 1)]
    for i in range(m + 1):
        table[i][0] = i * s
    for j in range(n + 1):
        table[0][j] = j * s
    for i in range(1, m + 1):
        a = tuple(x[i - 1])
        for j in range(1, n + 1):
            b = tuple(y[j - 1])
            if a == b:
                sub = 0
            elif len(a) == len(b) and a[:-1] == b[:-1]:
                sub = c
            else:
                sub = inf
            table[i][j] = min(
                table[i - 1][j] + s,
                table[i][j - 1] + s,
                table[i - 1][j - 1] + sub,
            )
    return int(table[m][n])


def cutoff_window(n: int, m: int, t: int, s: int) -> tuple[int, int]:
    """Rows ``l..u`` of column ``n`` that can still lead to a match within ``t``.

    A query prefix shorter than ``n - t//s`` or longer than ``n + ceil(t/s)``
    would need more than ``t`` worth of insertions or deletions.
    """
    lo = max(0, n - t // s)
    hi = min(m, n - (-t // s))
    return lo, hi


class DistanceMatrix:
    """Column stack ``H(i, j) = dist(X[i], Y[j])`` for a growing candidate Y.

    Column 0 is the boundary ``i * s`` and is never popped. Each
    :meth:`push` appends the column for one more candidate vertex list;
    :meth:`pop` discards it again, leaving earlier columns valid.

    When ``cap`` is given, entries are stored as ``min(H, cap + 1)`` and only
    the diagonal band that can hold values ``<= cap`` is evaluated. Searches
    at threshold ``t`` use ``cap=t``; all answers for thresholds up to
    ``cap`` are unchanged.
    """

    def __init__(
        self,
        query: Sequence[VertexList],
        costs: CostParams = DEFAULT_COSTS,
        cap: Optional[int] = None,
    ):
        if cap is not None and cap < 0:
            raise ValueError("cap must be non-negative")
        self.query = tuple(query)
        self.costs = costs
        self.cap = cap
        m = self.m = len(self.query)
        s = costs.s
        # rows (1-based) of query lists grouped by everything but the leaf label
        self._by_parent: dict[VertexList, list[int]] = {}
        for row, vl in enumerate(self.query, 1):
            self._by_parent.setdefault(vl[:-1], []).append(row)
        if cap is None:
            self._band = _UNBOUNDED
            self._fill = math.inf
            first = [i * s for i in range(m + 1)]
        else:
            self._band = cap // s
            self._fill = cap + 1
            first = [min(i * s, cap + 1) for i in range(m + 1)]
        self._columns: list[list] = [first]

    @property
    def n(self) -> int:
        """Current candidate length (number of pushed columns)."""
        return len(self._columns) - 1

    def __len__(self) -> int:
        return len(self._columns)

    def column(self, j: int) -> tuple[int, ...]:
        return tuple(self._columns[j])

    def columns(self) -> list[tuple[int, ...]]:
        return [tuple(col) for col in self._columns]

    def _diagonal_costs(self, y: VertexList) -> dict[int, int]:
        rows = self._by_parent.get(y[:-1])
        if not rows:
            return {}
        c = self.costs.c
        query = self.query
        leaf = y[-1]
        out = {}
        for row in rows:
            xl = query[row - 1]
            if len(xl) == len(y):
                out[row] = 0 if xl[-1] == leaf else c
        return out

    def push(self, y: VertexList) -> None:
        s = self.costs.s
        m = self.m
        fill = self._fill
        prev = self._columns[-1]
        n = len(self._columns)
        col = [fill] * (m + 1)
        lo = max(0, n - self._band)
        hi = min(m, n + self._band)
        if lo == 0:
            v = n * s
            col[0] = v if v < fill else fill
            lo = 1
        diag = self._diagonal_costs(y)
        for i in range(lo, hi + 1):
            v = prev[i] + s
            w = col[i - 1] + s
            if w < v:
                v = w
            d = diag.get(i)
            if d is not None:
                w = prev[i - 1] + d
                if w < v:
                    v = w
            col[i] = v if v < fill else fill
        self._columns.append(col)

    def pop(self) -> None:
        if len(self._columns) <= 1:
            raise MatrixUnderflowError("cannot pop the boundary column")
        self._columns.pop()

    def truncate(self, n: int) -> int:
        """Pop columns until the candidate length is ``n``; return how many."""
        popped = 0
        while len(self._columns) - 1 > n:
            self.pop()
            popped += 1
        return popped

    def cutdist(self, t: int) -> int:
        """Minimum of the current column over the cut-off window for ``t``.

        If the candidate is already too long for any query prefix to be
        within ``t``, the window is empty and ``H(m, n)`` (which then exceeds
        ``t``) is returned.
        """
        if t < 0:
            raise ValueError("threshold must be non-negative")
        if self.cap is not None and t > self.cap:
            raise ValueError(f"threshold {t} exceeds matrix cap {self.cap}")
        col = self._columns[-1]
        lo, hi = cutoff_window(len(self._columns) - 1, self.m, t, self.costs.s)
        if lo > hi:
            return col[self.m]
        return min(col[lo : hi + 1])

    def final(self) -> int:
        """``H(m, n)``: distance between the whole query and the current candidate."""
        return self._columns[-1][self.m]


# functional aliases mirroring the operation names used in docs and the CLI
def matrix_new(x: Sequence[VertexList], costs: CostParams = DEFAULT_COSTS) -> DistanceMatrix:
    return DistanceMatrix(x, costs)


def matrix_push(h: DistanceMatrix, y: VertexList) -> None:
    h.push(y)


def matrix_pop(h: DistanceMatrix) -> None:
    h.pop()


def cutdist_current(h: DistanceMatrix, t: int) -> int:
    return h.cutdist(t)


def dist_final(h: DistanceMatrix) -> int:
    return h.final()
