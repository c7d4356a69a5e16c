"""Finite simple graphs on dense vertex labels ``0..n-1``.

Graphs are immutable; equality is labeled equality. Product vertices are
flattened row-major, ``(g, h) -> g * n_H + h``, which matches
``numpy.kron`` block indexing.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterable

import numpy as np

Edge = tuple[int, int]


def _norm_edge(i: int, j: int) -> Edge:
    return (i, j) if i < j else (j, i)


@dataclass(frozen=True)
class Graph:
    """A finite simple undirected graph.

    Parameters
    ----------
    n : int
        Number of vertices; vertices are ``0..n-1``.
    edges : iterable of pairs
        Unordered pairs ``{i, j}`` with ``i != j``. Duplicates (in either
        orientation) are rejected.
    """

    n: int
    edges: frozenset = field(default_factory=frozenset)

    def __init__(self, n: int, edges: Iterable[Iterable[int]] = ()):
        n = int(n)
        if n < 0:
            raise ValueError("vertex count must be nonnegative")
        seen = set()
        for e in edges:
            i, j = (int(v) for v in e)
            if i == j:
                raise ValueError(f"loop at vertex {i}")
            if not (0 <= i < n and 0 <= j < n):
                raise ValueError(f"edge ({i}, {j}) out of range for n={n}")
            key = _norm_edge(i, j)
            if key in seen:
                raise ValueError(f"duplicate edge {key}")
            seen.add(key)
        object.__setattr__(self, "n", n)
        object.__setattr__(self, "edges", frozenset(seen))

    def __repr__(self) -> str:
        return f"Graph(n={self.n}, m={self.m})"

    @property
    def m(self) -> int:
        return len(self.edges)

    @cached_property
    def edge_list(self) -> tuple[Edge, ...]:
        """Edges as sorted ``(i, j)`` pairs with ``i < j``."""
        return tuple(sorted(self.edges))

    @cached_property
    def adjacency(self) -> np.ndarray:
        """Read-only 0/1 float adjacency matrix."""
        A = np.zeros((self.n, self.n))
        for i, j in self.edges:
            A[i, j] = A[j, i] = 1.0
        A.flags.writeable = False
        return A

    @cached_property
    def neighbors(self) -> tuple[tuple[int, ...], ...]:
        nb: list[list[int]] = [[] for _ in range(self.n)]
        for i, j in self.edge_list:
            nb[i].append(j)
            nb[j].append(i)
        return tuple(tuple(sorted(x)) for x in nb)

    def degree(self, i: int) -> int:
        return len(self.neighbors[i])

    def has_edge(self, i: int, j: int) -> bool:
        return _norm_edge(i, j) in self.edges

    def induced_subgraph(self, vertices: Iterable[int]) -> tuple["Graph", list[int]]:
        """Subgraph induced on ``vertices`` relabeled ``0..k-1`` plus the label map."""
        vs = sorted(set(int(v) for v in vertices))
        pos = {v: a for a, v in enumerate(vs)}
        es = [(pos[i], pos[j]) for i, j in self.edge_list if i in pos and j in pos]
        return Graph(len(vs), es), vs

    def spanning_subgraph(self, edges: Iterable[Edge]) -> "Graph":
        es = {_norm_edge(*e) for e in edges}
        if not es <= self.edges:
            raise ValueError("not a subset of the edge set")
        return Graph(self.n, es)

    def to_dict(self) -> dict:
        return {"n": self.n, "edges": [list(e) for e in self.edge_list]}


@dataclass(frozen=True)
class ProductIndex:
    """A vertex ``(g_index, h_index)`` of ``G x H`` and its flat label."""

    g_index: int
    h_index: int
    n_h: int

    @property
    def flat(self) -> int:
        return self.g_index * self.n_h + self.h_index

    @classmethod
    def from_flat(cls, flat: int, n_h: int) -> "ProductIndex":
        if n_h <= 0:
            raise ValueError("n_h must be positive")
        g, h = divmod(int(flat), n_h)
        return cls(g, h, n_h)


# ---- named families ---------------------------------------------------------


def empty(n: int) -> Graph:
    return Graph(n, ())


def complete(m: int) -> Graph:
    if m < 1:
        raise ValueError("complete graph needs m >= 1")
    return Graph(m, itertools.combinations(range(m), 2))


def cycle(m: int) -> Graph:
    if m < 3:
        raise ValueError("cycle needs m >= 3")
    return Graph(m, [(i, (i + 1) % m) for i in range(m)])


def path(m: int) -> Graph:
    if m < 1:
        raise ValueError("path needs m >= 1")
    return Graph(m, [(i, i + 1) for i in range(m - 1)])


def complete_bipartite(a: int, b: int) -> Graph:
    if a < 0 or b < 0:
        raise ValueError("part sizes must be nonnegative")
    return Graph(a + b, [(i, a + j) for i in range(a) for j in range(b)])


def kneser(n: int, r: int) -> Graph:
    """Kneser graph on the ``r``-subsets of ``{0..n-1}``, adjacent when disjoint.

    Vertices follow ``itertools.combinations`` order.
    """
    if r < 1 or n < 2 * r:
        raise ValueError("kneser requires r >= 1 and n >= 2r")
    subsets = [frozenset(s) for s in itertools.combinations(range(n), r)]
    es = [
        (a, b)
        for a, b in itertools.combinations(range(len(subsets)), 2)
        if not (subsets[a] & subsets[b])
    ]
    return Graph(len(subsets), es)


def petersen() -> Graph:
    return kneser(5, 2)


def hamming_h(n: int, k: int) -> Graph:
    """Even-weight binary strings of length ``n``, adjacent at Hamming distance ``k``.

    Vertices are the even-weight integers ``0..2^n-1`` in increasing order.
    """
    if n < 1:
        raise ValueError("string length must be positive")
    if k % 2 != 0 or k <= 0:
        raise ValueError("distance k must be a positive even integer")
    words = [w for w in range(2**n) if bin(w).count("1") % 2 == 0]
    es = [
        (a, b)
        for a, b in itertools.combinations(range(len(words)), 2)
        if bin(words[a] ^ words[b]).count("1") == k
    ]
    return Graph(len(words), es)


def hypercube(d: int) -> Graph:
    if d < 0:
        raise ValueError("dimension must be nonnegative")
    N = 2**d
    return Graph(N, [(v, v ^ (1 << b)) for v in range(N) for b in range(d) if v < v ^ (1 << b)])


def from_edges(n: int, edges: Iterable[Iterable[int]]) -> Graph:
    return Graph(n, edges)


def from_adjacency(A) -> Graph:
    A = np.asarray(A)
    if A.ndim != 2 or A.shape[0] != A.shape[1]:
        raise ValueError("adjacency must be square")
    if (A != A.T).any() or np.diag(A).any():
        raise ValueError("adjacency must be symmetric with zero diagonal")
    n = A.shape[0]
    return Graph(n, [(i, j) for i in range(n) for j in range(i + 1, n) if A[i, j]])


def disjoint_union(*graphs: Graph) -> Graph:
    es = []
    off = 0
    for g in graphs:
        es.extend((i + off, j + off) for i, j in g.edge_list)
        off += g.n
    return Graph(off, es)


def k3_pendant() -> Graph:
    """Triangle ``{0, 1, 2}`` with a pendant vertex ``3`` attached to ``0``."""
    return Graph(4, [(0, 1), (0, 2), (1, 2), (0, 3)])


def random_graph(n: int, p: float, rng: np.random.Generator) -> Graph:
    """Erdos-Renyi ``G(n, p)`` using the given generator."""
    es = [(i, j) for i, j in itertools.combinations(range(n), 2) if rng.random() < p]
    return Graph(n, es)


# ---- constructions ----------------------------------------------------------


def categorical_product(G: Graph, H: Graph) -> Graph:
    """Categorical (tensor) product with row-major flattening ``g * n_H + h``."""
    nh = H.n
    es = []
    for i, j in G.edge_list:
        for l, k in H.edge_list:
            es.append((i * nh + l, j * nh + k))
            es.append((i * nh + k, j * nh + l))
    return Graph(G.n * nh, es)


def complement(G: Graph) -> Graph:
    return Graph(
        G.n,
        [(i, j) for i, j in itertools.combinations(range(G.n), 2) if (i, j) not in G.edges],
    )


def connected_components(G: Graph) -> list[frozenset]:
    """Components as vertex sets, ordered by smallest member."""
    seen = [False] * G.n
    comps = []
    for s in range(G.n):
        if seen[s]:
            continue
        stack = [s]
        seen[s] = True
        comp = []
        while stack:
            v = stack.pop()
            comp.append(v)
            for w in G.neighbors[v]:
                if not seen[w]:
                    seen[w] = True
                    stack.append(w)
        comps.append(frozenset(comp))
    return comps


def is_connected(G: Graph) -> bool:
    return len(connected_components(G)) <= 1


def isolated_vertices(G: Graph) -> list[int]:
    return [v for v in range(G.n) if not G.neighbors[v]]


def is_empty(G: Graph) -> bool:
    """True iff ``G`` has no edges."""
    return G.m == 0


def is_bipartite(G: Graph) -> bool:
    color = [-1] * G.n
    for s in range(G.n):
        if color[s] >= 0:
            continue
        color[s] = 0
        stack = [s]
        while stack:
            v = stack.pop()
            for w in G.neighbors[v]:
                if color[w] < 0:
                    color[w] = 1 - color[v]
                    stack.append(w)
                elif color[w] == color[v]:
                    return False
    return True


def is_regular(G: Graph) -> bool:
    return len({len(nb) for nb in G.neighbors}) <= 1


def greedy_coloring(G: Graph) -> list[int]:
    """Largest-degree-first greedy proper coloring (colors ``0..``)."""
    order = sorted(range(G.n), key=lambda v: (-G.degree(v), v))
    col = [-1] * G.n
    for v in order:
        used = {col[w] for w in G.neighbors[v]}
        c = 0
        while c in used:
            c += 1
        col[v] = c
    return col


def greedy_chromatic_bound(G: Graph) -> int:
    col = greedy_coloring(G)
    return max(col) + 1 if col else 0


def _distinct_eigenvalue_count(G: Graph) -> int:
    from .linalg import eigvalsh

    w = np.sort(eigvalsh(G.adjacency))
    if w.size == 0:
        return 0
    return int(1 + (np.diff(w) > 1e-6).sum())


def is_one_walk_regular(G: Graph, max_power: int | None = None) -> bool:
    """Whether ``A^k o I`` and ``A^k o A`` are scalar multiples of ``I`` and ``A``.

    Walk counts are computed exactly with Python integers for
    ``k = 0..max_power``; the default bound is the number of distinct
    adjacency eigenvalues, past which powers are linear combinations of
    lower ones.
    """
    if G.n == 0:
        raise ValueError("graph must have at least one vertex")
    if max_power is None:
        max_power = _distinct_eigenvalue_count(G)
    A = np.array(G.adjacency, dtype=np.int64).astype(object)
    P = np.identity(G.n, dtype=np.int64).astype(object)
    edges = G.edge_list
    for k in range(max_power + 1):
        diag = {P[i, i] for i in range(G.n)}
        if len(diag) > 1:
            return False
        if edges and len({P[i, j] for i, j in edges}) > 1:
            return False
        P = P.dot(A)
    return True
