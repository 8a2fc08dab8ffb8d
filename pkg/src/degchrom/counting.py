"""Counting colorings in which no vertex has ``m`` same-colored neighbours.

Two independent engines compute the same number:

* :func:`brute_force_count` enumerates all ``k**n`` colorings (any graph,
  desk-scale only);
* :func:`tree_dp_count` runs a truncated generating-function dynamic program
  over a rooted tree in ``O(n*m)`` big-integer operations.

The friend-set counters :func:`count_av` and
:func:`count_pairwise_intersection` count the colorings in which a given
vertex (or both of two vertices) has at least ``m`` friends.
"""

from __future__ import annotations

import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from functools import lru_cache
from typing import Sequence

import numpy as np

from .graph import Graph, GraphError, LabeledTree, certify_tree
from .polyalg import BigPolynomial, assert_integral, interpolate_consecutive

__all__ = [
    "DEFAULT_BUDGET",
    "BudgetExceededError",
    "ConstraintParams",
    "CountResult",
    "brute_force_count",
    "count_av",
    "count_av_enumerated",
    "count_pairwise_intersection",
    "degree_chromatic_polynomial",
    "friend_count",
    "max_friend_histogram",
    "pair_count_table",
    "tree_dp_count",
]

DEFAULT_BUDGET = 1 << 30
# rows per enumeration block; bounds peak memory at a few tens of MB
_BLOCK = 1 << 18


class BudgetExceededError(RuntimeError):
    def __init__(self, n: int, k: int, budget: int):
        super().__init__(
            f"{k}^{n} colorings exceed the enumeration budget of {budget}; "
            "use the tree DP or a smaller instance"
        )
        self.n, self.k, self.budget = n, k, budget


@dataclass(frozen=True)
class ConstraintParams:
    m: int
    k: int

    def __post_init__(self):
        for name in ("m", "k"):
            val = getattr(self, name)
            if isinstance(val, bool) or not isinstance(val, (int, np.integer)):
                raise TypeError(f"{name} must be an integer, got {val!r}")
            object.__setattr__(self, name, int(val))
        if self.m < 1:
            raise ValueError(f"threshold m must be >= 1, got {self.m}")
        if self.k < 0:
            raise ValueError(f"color count k must be >= 0, got {self.k}")


@dataclass(frozen=True)
class CountResult:
    value: int
    method: str

    def __int__(self):
        return self.value


def friend_count(g: Graph, coloring: Sequence[int], v: int) -> int:
    """Number of neighbours of ``v`` sharing its color."""
    if len(coloring) != g.n:
        raise ValueError(f"coloring has length {len(coloring)}, graph has {g.n} vertices")
    c = coloring[v]
    return sum(1 for w in g.neighbors(v) if coloring[w] == c)


# -- enumeration oracle --------------------------------------------------------

def _check_budget(n: int, k: int, budget: int | None) -> int:
    total = k**n
    if budget is not None and total > budget:
        raise BudgetExceededError(n, k, budget)
    return total


@lru_cache(maxsize=32)
def _coloring_block(n: int, k: int, start: int, stop: int) -> np.ndarray:
    """Colorings ``start..stop-1`` in mixed-radix order, vertex-major: row
    ``v`` holds the color of vertex ``v``; vertex 0 is the most significant
    digit."""
    idx = np.arange(start, stop, dtype=np.int64)
    cols = np.empty((n, stop - start), dtype=np.int8 if k <= 127 else np.int64)
    for v in range(n - 1, -1, -1):
        cols[v] = idx % k
        idx //= k
    cols.flags.writeable = False
    return cols


def _friend_blocks(g: Graph, k: int, total: int, workers: int = 1):
    """Yield ``(n, rows)`` arrays of per-vertex friend counts, one column per
    coloring, covering every coloring exactly once."""
    n = g.n
    if total == 0:
        return
    if n == 0:
        yield np.zeros((0, 1), dtype=np.int16)
        return
    bounds = [(s, min(s + _BLOCK, total)) for s in range(0, total, _BLOCK)]

    def block(span):
        cols = _coloring_block(n, k, *span)
        friends = np.zeros(cols.shape, dtype=np.int16)
        for u, v in g.edges:
            same = cols[u] == cols[v]
            friends[u] += same
            friends[v] += same
        return friends

    if workers <= 1 or len(bounds) == 1:
        for span in bounds:
            yield block(span)
    else:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            yield from pool.map(block, bounds)


@lru_cache(maxsize=4096)
def _max_friend_histogram(g: Graph, k: int, budget: int | None, workers: int) -> tuple[int, ...]:
    total = _check_budget(g.n, k, budget)
    hist = np.zeros(max(g.max_degree, 0) + 1, dtype=np.int64)
    for friends in _friend_blocks(g, k, total, workers):
        worst = friends.max(axis=0) if g.n else np.zeros(1, dtype=np.int16)
        hist += np.bincount(worst, minlength=hist.size)
    return tuple(int(h) for h in hist)


def max_friend_histogram(g: Graph, k: int, budget: int | None = DEFAULT_BUDGET,
                         workers: int = 1) -> tuple[int, ...]:
    """``hist[f]`` = number of k-colorings whose largest friend count is ``f``.

    One enumeration answers every threshold: the count for ``m`` is
    ``sum(hist[:m])``.
    """
    return _max_friend_histogram(g, int(k), budget, int(workers))


def brute_force_count(g: Graph, params: ConstraintParams, budget: int | None = DEFAULT_BUDGET,
                      workers: int = 1) -> CountResult:
    """Count by exhaustive enumeration of all ``k**n`` colorings.

    ``budget`` caps the number of colorings (``None`` disables the guard);
    ``workers`` splits the enumeration range across threads without
    changing the result.
    """
    hist = max_friend_histogram(g, params.k, budget, workers)
    return CountResult(sum(hist[: params.m]), "oracle")


@lru_cache(maxsize=1024)
def _vertex_tail_counts(g: Graph, k: int, budget: int | None) -> np.ndarray:
    """``T[v, f]`` = colorings in which ``v`` has at least ``f`` friends."""
    total = _check_budget(g.n, k, budget)
    width = g.max_degree + 2
    hist = np.zeros((g.n, width), dtype=np.int64)
    for friends in _friend_blocks(g, k, total):
        for v in range(g.n):
            hist[v] += np.bincount(friends[v], minlength=width)
    tails = np.cumsum(hist[:, ::-1], axis=1)[:, ::-1]
    tails.flags.writeable = False
    return tails


_CODE_BITS = 12


@lru_cache(maxsize=2048)
def _pair_table(g: Graph, k: int, m: int, budget: int | None) -> np.ndarray:
    """``T[u, v]`` = colorings in which both ``u`` and ``v`` have >= m friends."""
    total = _check_budget(g.n, k, budget)
    n = g.n
    table = np.zeros((n, n), dtype=np.int64)
    if m > g.max_degree:
        return table
    if n <= _CODE_BITS:
        # tally each coloring's "which vertices reached m" bit pattern, then
        # expand the 2**n tallies into pair counts
        tally = np.zeros(1 << n, dtype=np.int64)
        for friends in _friend_blocks(g, k, total):
            hit = friends >= m
            code = np.zeros(hit.shape[1], dtype=np.int32)
            for v in range(n):
                code |= hit[v].astype(np.int32) << v
            tally += np.bincount(code, minlength=1 << n)
        bits = (np.arange(1 << n)[:, None] >> np.arange(n)) & 1
        table = (bits * tally[:, None]).T @ bits
    else:
        for friends in _friend_blocks(g, k, total):
            # float32 matmul goes through BLAS; a block has < 2**24 rows so sums are exact
            hit = (friends >= m).astype(np.float32)
            table += np.rint(hit @ hit.T).astype(np.int64)
    table.flags.writeable = False
    return table


def pair_count_table(g: Graph, params: ConstraintParams,
                     budget: int | None = DEFAULT_BUDGET) -> np.ndarray:
    """Read-only ``(n, n)`` table: entry ``[u, v]`` counts colorings in which
    both ``u`` and ``v`` have at least ``m`` friends; the diagonal is |A_v|."""
    return _pair_table(g, params.k, params.m, budget)


def count_av_enumerated(g: Graph, v: int, params: ConstraintParams,
                        budget: int | None = DEFAULT_BUDGET) -> CountResult:
    """|A_v| by enumeration: colorings where ``v`` has at least ``m`` friends."""
    g.check_vertex(v)
    tails = _vertex_tail_counts(g, params.k, budget)
    m = min(params.m, tails.shape[1] - 1)
    return CountResult(int(tails[v, m]), "oracle")


def count_pairwise_intersection(t: Graph, v1: int, v2: int, params: ConstraintParams,
                                budget: int | None = DEFAULT_BUDGET) -> CountResult:
    """|A_v1 ∩ A_v2| by enumeration."""
    t.check_vertex(v1)
    t.check_vertex(v2)
    if v1 == v2:
        raise ValueError(f"vertices must be distinct, got {v1} twice")
    return CountResult(int(_pair_table(t, params.k, params.m, budget)[v1, v2]), "oracle")


# -- closed form and tree DP ---------------------------------------------------

def count_av(t: Graph, v: int, params: ConstraintParams) -> CountResult:
    """|A_v| in closed form.

    ``v`` takes any of ``k`` colors, at least ``m`` of its ``d`` neighbours
    copy it (the other neighbours avoid it), and the remaining
    ``n - 1 - d`` vertices are free.
    """
    d = t.degree(v)
    k, m = params.k, params.m
    if d < m:
        return CountResult(0, "closed-form")
    s = sum(math.comb(d, l) * (k - 1) ** (d - l) for l in range(m, d + 1))
    return CountResult(k ** (t.n - 1 - d) * k * s, "closed-form")


def _children_order(t: Graph, root: int = 0) -> tuple[list[int], list[list[int]]]:
    """Preorder from ``root`` plus the child lists of the rooted tree."""
    parent = [-1] * t.n
    children: list[list[int]] = [[] for _ in range(t.n)]
    order = [root]
    parent[root] = root
    for v in order:
        for w in t.adjacency[v]:
            if parent[w] == -1:
                parent[w] = v
                children[v].append(w)
                order.append(w)
    return order, children


def tree_dp_count(t: LabeledTree, params: ConstraintParams, root: int = 0) -> CountResult:
    """Count on a tree by dynamic programming.

    For each vertex ``v`` with its color fixed, ``a[v]`` counts subtree
    colorings where every descendant is satisfied and ``v`` has at most
    ``m - 1`` same-colored children; ``b[v]`` allows at most ``m - 2``
    (``v`` already has a same-colored parent).  A child contributes
    ``b[c]*x + (k-1)*a[c]``, with ``x`` marking "same color as v"; the
    product is truncated above ``x**(m-1)``.
    """
    t = certify_tree(t)
    k, m = params.k, params.m
    t.check_vertex(root)
    order, children = _children_order(t, root)
    a = [0] * t.n
    b = [0] * t.n
    for v in reversed(order):
        poly = [1]
        for c in children[v]:
            same, other = b[c], (k - 1) * a[c]
            nxt = [0] * min(len(poly) + 1, m)
            for i, coef in enumerate(poly):
                nxt[i] += coef * other
                if i + 1 < m:
                    nxt[i + 1] += coef * same
            poly = nxt
        a[v] = sum(poly)
        b[v] = sum(poly[: m - 1])
    return CountResult(k * a[root], "tree-dp")


# -- the polynomial ------------------------------------------------------------

METHODS = ("auto", "oracle", "tree-dp")


def resolve_method(g: Graph, method: str = "auto") -> str:
    if method not in METHODS:
        raise ValueError(f"unknown method {method!r}; choose from {METHODS}")
    if method != "auto":
        return method
    try:
        certify_tree(g)
    except GraphError:
        return "oracle"
    return "tree-dp"


def degree_chromatic_polynomial(g: Graph, m: int, method: str = "auto",
                                budget: int | None = DEFAULT_BUDGET,
                                workers: int = 1) -> BigPolynomial:
    """P_m(g, k) as an exact polynomial in ``k``.

    The chosen counter is evaluated at ``k = 0..n`` and interpolated;
    non-integral coefficients raise :class:`~degchrom.polyalg.IntegralityError`.
    """
    method = resolve_method(g, method)
    if method == "tree-dp":
        t = certify_tree(g)
        values = [tree_dp_count(t, ConstraintParams(m, k)).value for k in range(g.n + 1)]
    else:
        _check_budget(g.n, g.n, budget)
        values = [brute_force_count(g, ConstraintParams(m, k), budget, workers).value
                  for k in range(g.n + 1)]
    p = interpolate_consecutive(values)
    assert_integral(p)
    return p
