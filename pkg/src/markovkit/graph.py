"""Undirected graphs on which random walks are defined.

Vertices are the integers ``0 .. n_vertices - 1``.  Edges are stored as sorted
pairs ``(u, v)`` with ``u <= v``; a loop ``(u, u)`` counts once toward the
degree of ``u``.
"""

from collections import deque
from dataclasses import dataclass, field
from functools import cached_property
from itertools import combinations

from .errors import InvalidEdge, InvalidProbability, SizeTooSmall
from .rng import as_source


@dataclass(frozen=True)
class Graph:
    n_vertices: int
    edges: frozenset = field(default_factory=frozenset)

    @classmethod
    def from_edges(cls, n_vertices, edges):
        n_vertices = int(n_vertices)
        if n_vertices < 1:
            raise SizeTooSmall("a graph needs at least one vertex")
        seen = set()
        for e in edges:
            if len(e) != 2:
                raise InvalidEdge(f"edge {e!r} is not a pair")
            u, v = sorted((int(e[0]), int(e[1])))
            if u < 0 or v >= n_vertices:
                raise InvalidEdge(f"edge {e!r} has an endpoint outside 0..{n_vertices - 1}")
            if (u, v) in seen:
                raise InvalidEdge(f"duplicate edge {e!r}")
            seen.add((u, v))
        return cls(n_vertices, frozenset(seen))

    @property
    def n_edges(self):
        return len(self.edges)

    @cached_property
    def _adjacency(self):
        adj = [[] for _ in range(self.n_vertices)]
        for u, v in sorted(self.edges):
            adj[u].append(v)
            if u != v:
                adj[v].append(u)
        return tuple(tuple(sorted(a)) for a in adj)

    def neighbors(self, v):
        """Sorted neighbours of ``v`` (``v`` itself if it carries a loop)."""
        return self._adjacency[v]

    def degree(self, v):
        return len(self._adjacency[v])

    def degrees(self):
        return [len(a) for a in self._adjacency]

    def has_loops(self):
        return any(u == v for u, v in self.edges)

    def has_edge(self, u, v):
        return (min(u, v), max(u, v)) in self.edges

    def to_json(self):
        return {"vertices": self.n_vertices, "edges": [list(e) for e in sorted(self.edges)]}


def cycle(n):
    if n < 3:
        raise SizeTooSmall("cycle needs n >= 3")
    return Graph.from_edges(n, [(i, (i + 1) % n) for i in range(n)])


def path(n):
    if n < 2:
        raise SizeTooSmall("path needs n >= 2")
    return Graph.from_edges(n, [(i, i + 1) for i in range(n - 1)])


def complete(n):
    if n < 1:
        raise SizeTooSmall("complete graph needs n >= 1")
    return Graph.from_edges(n, combinations(range(n), 2))


def complete_bipartite(a, b):
    """Vertices ``0..a-1`` on one side and ``a..a+b-1`` on the other."""
    if a < 1 or b < 1:
        raise SizeTooSmall("both sides of a complete bipartite graph need a vertex")
    return Graph.from_edges(a + b, [(i, a + j) for i in range(a) for j in range(b)])


def hypercube(dim):
    """The cube {0,1}^dim; vertex ``x`` has binary digits equal to its coordinates."""
    if dim < 1:
        raise SizeTooSmall("hypercube dimension must be >= 1")
    n = 1 << dim
    return Graph.from_edges(n, [(x, x ^ (1 << b)) for x in range(n) for b in range(dim) if x < x ^ (1 << b)])


def star(leaves):
    """Centre 0 joined to leaves ``1..leaves``."""
    if leaves < 1:
        raise SizeTooSmall("star needs at least one leaf")
    return Graph.from_edges(leaves + 1, [(0, i) for i in range(1, leaves + 1)])


_GENERATORS = {
    "cycle": cycle,
    "path": path,
    "complete": complete,
    "complete_bipartite": complete_bipartite,
    "hypercube": hypercube,
    "star": star,
}


def generate(kind, *params):
    """Build a named graph, e.g. ``generate("cycle", 6)`` or ``generate("complete_bipartite", 2, 3)``."""
    try:
        builder = _GENERATORS[kind]
    except KeyError:
        raise ValueError(f"unknown graph kind {kind!r}; choose from {sorted(_GENERATORS)}") from None
    return builder(*params)


def erdos_renyi(n, p, rng=None):
    """G(n, p): each pair ``i < j`` is drawn in lexicographic order with one unit draw."""
    if not 0.0 <= p <= 1.0:
        raise InvalidProbability(f"p = {p!r} is not in [0, 1]")
    if n < 1:
        raise SizeTooSmall("n must be >= 1")
    rng = as_source(rng)
    pairs = list(combinations(range(n), 2))
    u = rng.uniforms(len(pairs))
    return Graph.from_edges(n, [e for e, x in zip(pairs, u) if x < p])


def reachable_from(g, source=0):
    seen = {source}
    queue = deque([source])
    while queue:
        v = queue.popleft()
        for w in g.neighbors(v):
            if w not in seen:
                seen.add(w)
                queue.append(w)
    return seen


def is_connected(g):
    return len(reachable_from(g, 0)) == g.n_vertices
