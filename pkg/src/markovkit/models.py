"""Classical model chains with special structure."""

import math
from dataclasses import dataclass
from itertools import combinations, product

import numpy as np

from . import errors
from .chain import TransitionMatrix
from .graph import Graph, is_connected
from .rng import as_source
from .samplers import MetropolisSpec, metropolis_step, symmetric_ratio

# --- Polya urn ---------------------------------------------------------------


@dataclass(frozen=True)
class PolyaState:
    black: int
    red: int
    step: int = 0


def polya_step(s, rng):
    """Draw a ball (one unit draw) and return it with a copy of the same colour."""
    if rng.uniform() < s.black / (s.black + s.red):
        return PolyaState(s.black + 1, s.red, s.step + 1)
    return PolyaState(s.black, s.red + 1, s.step + 1)


def polya_pmf_exact(a, b, n):
    """Exact law of the black-ball count after n draws, indexed by the count (0..a+n)."""
    if a < 1 or b < 1 or n < 0:
        raise ValueError("need a, b >= 1 and n >= 0")
    p = np.zeros(a + n + 1)
    p[a] = 1.0
    k = np.arange(a + n + 1)
    for m in range(n):
        total = m + a + b
        nxt = p * (1.0 - k / total)
        nxt[1:] += p[:-1] * (k[:-1] / total)
        p = nxt
    return p


def polya_simulate(a, b, n, trials, rng=None):
    """Empirical law of the black count after n draws over independent urns."""
    rng = as_source(rng)
    counts = np.zeros(a + n + 1)
    for child in rng.spawn(trials):
        s = PolyaState(a, b)
        for _ in range(n):
            s = polya_step(s, child)
        counts[s.black] += 1
    return counts / trials


# --- simple random walk on Z ------------------------------------------------


def srw_z_pmf(n, k):
    """P(X_n = k) for the simple symmetric walk on Z started at 0."""
    if abs(k) > n or (n + k) % 2:
        return 0.0
    m = (n + k) // 2
    if n <= 50:
        return math.comb(n, m) / 2.0 ** n
    return math.exp(math.lgamma(n + 1) - math.lgamma(m + 1) - math.lgamma(n - m + 1) - n * math.log(2))


# --- asymmetric exclusion ----------------------------------------------------

EXCLUSION_MAX_STATES = 10_000


def exclusion_states(n, k):
    """All 0/1 occupancy tuples of length n with k ones, in lexicographic order."""
    return [w for w in product((0, 1), repeat=n) if sum(w) == k]


def exclusion_chain(n, k, direction="ccw"):
    """Pick one of the k particles uniformly; it steps to site i-1 (``ccw``) or i+1 (``cw``)
    mod n when that site is empty, and otherwise stays put."""
    if not 1 <= k < n:
        raise ValueError("need 1 <= k < n")
    if math.comb(n, k) > EXCLUSION_MAX_STATES:
        raise errors.StateSpaceTooLarge(f"C({n},{k}) = {math.comb(n, k)} states")
    shift = {"ccw": -1, "cw": 1}[direction]
    states = exclusion_states(n, k)
    index = {w: i for i, w in enumerate(states)}
    P = np.zeros((len(states), len(states)))
    for w in states:
        for site in (i for i in range(n) if w[i]):
            target = (site + shift) % n
            if w[target]:
                nxt = w
            else:
                lst = list(w)
                lst[site], lst[target] = 0, 1
                nxt = tuple(lst)
            P[index[w], index[nxt]] += 1.0 / k
    return TransitionMatrix(P, ["".join(map(str, w)) for w in states])


# --- triangle Gibbs random graphs --------------------------------------------


def triangle_count(g):
    return sum(1 for i, j, k in combinations(range(g.n_vertices), 3)
               if g.has_edge(i, j) and g.has_edge(j, k) and g.has_edge(i, k))


def toggle_edge(g, edge):
    u, v = sorted(edge)
    edges = set(g.edges)
    edges.symmetric_difference_update({(u, v)})
    return Graph(g.n_vertices, frozenset(edges))


def _triangles_through(g, u, v):
    return sum(1 for w in range(g.n_vertices) if w not in (u, v) and g.has_edge(u, w) and g.has_edge(v, w))


def triangle_gibbs_ratio(g, edge, beta):
    """pi_beta(G') / pi_beta(G) = exp(beta (Delta(G') - Delta(G))) for G' = G with ``edge`` toggled."""
    u, v = sorted(edge)
    change = _triangles_through(g, u, v)
    delta = -change if g.has_edge(u, v) else change
    return math.exp(beta * delta)


def triangle_metropolis_spec(beta):
    """Edge-toggle Metropolis chain on graphs targeting exp(beta * triangles).

    Proposal: I, J uniform on the vertices (two draws); I = J proposes staying.
    """
    def sample(g, rng):
        i = rng.randbelow(g.n_vertices)
        j = rng.randbelow(g.n_vertices)
        return g if i == j else toggle_edge(g, (i, j))

    def target(g, h):
        (edge,) = g.edges ^ h.edges
        return triangle_gibbs_ratio(g, edge, beta)

    return MetropolisSpec(sample, symmetric_ratio, target)


def triangle_step(g, beta, rng):
    return metropolis_step(triangle_metropolis_spec(beta), g, rng)


def triangle_exact_mean(n_vertices, beta):
    """E(Delta) under pi_beta by enumerating every graph on n_vertices (n <= 7)."""
    if n_vertices > 7:
        raise errors.StateSpaceTooLarge("exact triangle enumeration is capped at 7 vertices")
    pairs = list(combinations(range(n_vertices), 2))
    triples = [((i, j), (j, k), (i, k)) for i, j, k in combinations(range(n_vertices), 3)]
    pos = {e: b for b, e in enumerate(pairs)}
    masks = [sum(1 << pos[e] for e in t) for t in triples]
    deltas = np.array([sum(1 for m in masks if code & m == m) for code in range(1 << len(pairs))],
                      dtype=np.float64)
    weights = np.exp(beta * (deltas - deltas.max()))
    return float((weights * deltas).sum() / weights.sum())


# --- cover time --------------------------------------------------------------


def cover_walk(g, x0, rng):
    """Walk until every vertex is seen; returns (cover time, last new vertex)."""
    n = g.n_vertices
    seen = {x0}
    x, t = x0, 0
    last = x0
    while len(seen) < n:
        nb = g.neighbors(x)
        x = nb[rng.randbelow(len(nb))]
        t += 1
        if x not in seen:
            seen.add(x)
            last = x
    return t, last


def cover_time_mean(g, x0, trials, rng=None):
    """Monte-Carlo mean cover time of the simple random walk (one child stream per trial)."""
    if not is_connected(g):
        raise errors.Disconnected("cover time needs a connected graph")
    rng = as_source(rng)
    total = 0
    for child in rng.spawn(trials):
        total += cover_walk(g, x0, child)[0]
    return total / trials


def last_vertex_pmf(g, x0, trials, rng=None):
    if not is_connected(g):
        raise errors.Disconnected("cover time needs a connected graph")
    rng = as_source(rng)
    counts = np.zeros(g.n_vertices)
    for child in rng.spawn(trials):
        counts[cover_walk(g, x0, child)[1]] += 1
    return counts / trials


# --- shift register on the hypercube -----------------------------------------


def shift_register_chain(n):
    """Drop the last bit, shift right, insert a fair random bit in front.

    State index has w_1 as its most significant bit.
    """
    size = 1 << n
    P = np.zeros((size, size))
    for x in range(size):
        for b in (0, 1):
            P[x, (x >> 1) | (b << (n - 1))] += 0.5
    return TransitionMatrix(P)
