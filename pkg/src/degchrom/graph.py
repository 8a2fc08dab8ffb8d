"""Undirected simple graphs, labeled trees and Prüfer sequences.

Vertices are the dense integers ``0..n-1``.  Both :class:`Graph` and
:class:`LabeledTree` are immutable and hashable, so they can be used as
cache keys by the counting engines.
"""

from __future__ import annotations

import heapq
import itertools
import operator
from dataclasses import dataclass, field
from typing import Iterable, Iterator, Sequence

import numpy as np

__all__ = [
    "Graph",
    "GraphError",
    "LabeledTree",
    "NotATreeError",
    "ParseError",
    "all_labeled_trees",
    "all_prufer_sequences",
    "certify_tree",
    "format_edge_list",
    "parse_edge_list",
    "prufer_encode",
    "random_tree",
    "random_tree_family",
    "tree_from_prufer",
]

_SEED_MASK = (1 << 64) - 1


class GraphError(ValueError):
    pass


class ParseError(GraphError):
    def __init__(self, message: str, lineno: int):
        super().__init__(f"line {lineno}: {message}")
        self.lineno = lineno
        self.reason = message


class NotATreeError(GraphError):
    def __init__(self, reason: str):
        super().__init__(f"not a tree: {reason}")
        self.reason = reason


@dataclass(frozen=True)
class Graph:
    """Undirected simple graph on ``0..n-1``.

    ``edges`` is normalised to a sorted tuple of ``(u, v)`` pairs with
    ``u < v``; ``adjacency[v]`` lists the neighbours of ``v`` in increasing
    order.
    """

    n: int
    edges: tuple[tuple[int, int], ...] = ()
    adjacency: tuple[tuple[int, ...], ...] = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        n = self.n
        if isinstance(n, bool) or not isinstance(n, int) or n < 0:
            raise GraphError(f"vertex count must be a non-negative integer, got {n!r}")
        seen = set()
        for e in self.edges:
            try:
                u, v = (operator.index(x) for x in e)
            except TypeError:
                raise GraphError(f"edge endpoints must be integers, got {e!r}") from None
            for x in (u, v):
                if not 0 <= x < n:
                    raise GraphError(f"endpoint {x} out of range [0, {n})")
            if u == v:
                raise GraphError(f"self-loop at vertex {u}")
            key = (u, v) if u < v else (v, u)
            if key in seen:
                raise GraphError(f"duplicate edge {key}")
            seen.add(key)
        nbrs: list[list[int]] = [[] for _ in range(n)]
        for u, v in seen:
            nbrs[u].append(v)
            nbrs[v].append(u)
        object.__setattr__(self, "edges", tuple(sorted(seen)))
        object.__setattr__(self, "adjacency", tuple(tuple(sorted(a)) for a in nbrs))

    def __hash__(self):
        # graphs are cache keys for the counting engines; hash once
        h = self.__dict__.get("_hash")
        if h is None:
            h = hash((self.n, self.edges))
            object.__setattr__(self, "_hash", h)
        return h

    @property
    def edge_count(self) -> int:
        return len(self.edges)

    def check_vertex(self, v: int) -> None:
        if not 0 <= v < self.n:
            raise GraphError(f"vertex {v} out of range [0, {self.n})")

    def degree(self, v: int) -> int:
        self.check_vertex(v)
        return len(self.adjacency[v])

    def neighbors(self, v: int) -> tuple[int, ...]:
        self.check_vertex(v)
        return self.adjacency[v]

    def degrees(self) -> list[int]:
        return [len(a) for a in self.adjacency]

    @property
    def max_degree(self) -> int:
        return max((len(a) for a in self.adjacency), default=0)

    def is_adjacent(self, u: int, v: int) -> bool:
        self.check_vertex(u)
        self.check_vertex(v)
        # adjacency lists are short for the trees we care about
        return v in self.adjacency[u]


@dataclass(frozen=True)
class LabeledTree(Graph):
    """A :class:`Graph` that is connected and acyclic."""

    def __post_init__(self):
        super().__post_init__()
        _tree_check(self)

    __hash__ = Graph.__hash__

    @property
    def graph(self) -> Graph:
        return Graph(self.n, self.edges)


def _tree_check(g: Graph) -> None:
    if g.n == 0:
        raise NotATreeError("empty graph")
    parent = list(range(g.n))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    components = g.n
    for u, v in g.edges:
        ru, rv = find(u), find(v)
        if ru == rv:
            raise NotATreeError("cycle found")
        parent[ru] = rv
        components -= 1
    if components != 1:
        raise NotATreeError("disconnected")


def certify_tree(g: Graph) -> LabeledTree:
    """Return ``g`` as a :class:`LabeledTree` or raise :class:`NotATreeError`."""
    if isinstance(g, LabeledTree):
        return g
    return LabeledTree(g.n, g.edges)


# -- edge-list text format ---------------------------------------------------

def _parse_int(tok: str, lineno: int) -> int:
    try:
        return int(tok, 10)
    except ValueError:
        raise ParseError(f"non-integer token {tok!r}", lineno) from None


def parse_edge_list(text: str | Iterable[str]) -> Graph:
    """Parse the ``n <count>`` / ``<u> <v>`` edge-list format.

    Accepts a string or any iterable of lines (an open file works).  Blank
    lines and anything after ``#`` are ignored.
    """
    lines = text.splitlines() if isinstance(text, str) else text
    n = None
    edges: list[tuple[int, int]] = []
    seen: set[tuple[int, int]] = set()
    lineno = 0
    for lineno, raw in enumerate(lines, start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        toks = line.split()
        if n is None:
            if len(toks) != 2 or toks[0] != "n":
                raise ParseError(f"bad header {line!r}, expected 'n <count>'", lineno)
            n = _parse_int(toks[1], lineno)
            if n < 0:
                raise ParseError(f"negative vertex count {n}", lineno)
            continue
        if len(toks) != 2:
            raise ParseError(f"expected '<u> <v>', got {line!r}", lineno)
        u, v = (_parse_int(t, lineno) for t in toks)
        for x in (u, v):
            if not 0 <= x < n:
                raise ParseError(f"endpoint {x} out of range [0, {n})", lineno)
        if u == v:
            raise ParseError(f"self-loop at vertex {u}", lineno)
        key = (min(u, v), max(u, v))
        if key in seen:
            raise ParseError(f"duplicate edge {key[0]} {key[1]}", lineno)
        seen.add(key)
        edges.append(key)
    if n is None:
        raise ParseError("missing header 'n <count>'", lineno + 1)
    return Graph(n, tuple(edges))


def format_edge_list(g: Graph) -> str:
    out = [f"n {g.n}"]
    out.extend(f"{u} {v}" for u, v in g.edges)
    return "\n".join(out) + "\n"


# -- Prüfer sequences ----------------------------------------------------------

def tree_from_prufer(seq: Sequence[int], n: int) -> LabeledTree:
    """Decode a Prüfer sequence of length ``n - 2`` into a labeled tree."""
    if n < 2:
        raise GraphError(f"Prüfer decoding needs n >= 2, got {n}")
    seq = [int(s) for s in seq]
    if len(seq) != n - 2:
        raise GraphError(f"Prüfer sequence for n={n} must have length {n - 2}, got {len(seq)}")
    for s in seq:
        if not 0 <= s < n:
            raise GraphError(f"Prüfer entry {s} out of range [0, {n})")

    remaining = [1] * n
    for s in seq:
        remaining[s] += 1
    leaves = [v for v in range(n) if remaining[v] == 1]
    heapq.heapify(leaves)
    edges = []
    for s in seq:
        leaf = heapq.heappop(leaves)
        edges.append((leaf, s))
        remaining[s] -= 1
        if remaining[s] == 1:
            heapq.heappush(leaves, s)
    u, v = heapq.heappop(leaves), heapq.heappop(leaves)
    edges.append((u, v))
    return LabeledTree(n, tuple(edges))


def prufer_encode(t: Graph) -> list[int]:
    """Inverse of :func:`tree_from_prufer`."""
    t = certify_tree(t)
    n = t.n
    if n < 2:
        raise GraphError(f"Prüfer encoding needs n >= 2, got {n}")
    deg = t.degrees()
    removed = [False] * n
    leaves = [v for v in range(n) if deg[v] == 1]
    heapq.heapify(leaves)
    seq = []
    for _ in range(n - 2):
        leaf = heapq.heappop(leaves)
        removed[leaf] = True
        nb = next(w for w in t.adjacency[leaf] if not removed[w])
        seq.append(nb)
        deg[nb] -= 1
        if deg[nb] == 1:
            heapq.heappush(leaves, nb)
    return seq


def all_prufer_sequences(n: int) -> Iterator[tuple[int, ...]]:
    """Every Prüfer sequence for ``n`` vertices, in lexicographic order."""
    if n < 2:
        raise GraphError(f"need n >= 2, got {n}")
    return itertools.product(range(n), repeat=n - 2)


def all_labeled_trees(n: int) -> Iterator[LabeledTree]:
    """All ``n**(n-2)`` labeled trees on ``n`` vertices (n >= 1)."""
    if n == 1:
        yield LabeledTree(1, ())
        return
    for seq in all_prufer_sequences(n):
        yield tree_from_prufer(seq, n)


def random_tree(n: int, seed: int) -> LabeledTree:
    """Uniformly random labeled tree, a deterministic function of ``(n, seed)``."""
    if n < 2:
        raise GraphError(f"random_tree needs n >= 2, got {n}")
    rng = np.random.default_rng(seed & _SEED_MASK)
    seq = rng.integers(0, n, size=n - 2).tolist()
    return tree_from_prufer(seq, n)


def random_tree_family(count: int, n_min: int, n_max: int, seed: int) -> list[tuple[int, int]]:
    """``count`` reproducible ``(n, tree_seed)`` pairs with ``n`` uniform in
    ``[n_min, n_max]``; feed each pair to :func:`random_tree`.

    Instance ``i`` depends only on ``(seed, i)``, so results can be computed
    in any order or in parallel.
    """
    if n_min < 2 or n_max < n_min:
        raise GraphError(f"need 2 <= n_min <= n_max, got [{n_min}, {n_max}]")
    if count < 0:
        raise GraphError(f"count must be non-negative, got {count}")
    children = np.random.SeedSequence(seed & _SEED_MASK).spawn(count)
    out = []
    for child in children:
        rng = np.random.default_rng(child)
        n = int(rng.integers(n_min, n_max + 1))
        out.append((n, int(rng.integers(0, 1 << 63))))
    return out
