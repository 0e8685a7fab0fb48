"""Row-stochastic transition matrices and the operations on them.

A :class:`TransitionMatrix` wraps a dense float64 array that is validated and
row-renormalised on construction, then frozen.  Distributions are plain
read-only numpy vectors produced by :func:`distribution`.
"""

from bisect import bisect_left
from collections import deque
from dataclasses import dataclass
from math import gcd

import numpy as np

from . import errors
from .graph import Graph
from .rng import as_source

ROW_SUM_TOL = 1e-10


def _frozen(a):
    a = np.array(a, dtype=np.float64)
    a.setflags(write=False)
    return a


class TransitionMatrix:
    """Validated transition matrix ``P`` with ``P[x, y]`` the one-step probability x -> y."""

    __slots__ = ("matrix", "labels")

    def __init__(self, rows, labels=None, tol=ROW_SUM_TOL):
        a = np.array(rows, dtype=np.float64)
        if a.ndim != 2 or a.shape[0] != a.shape[1] or a.shape[0] == 0:
            raise errors.NotSquare(f"transition matrix must be square and non-empty, got shape {a.shape}")
        if not np.all(np.isfinite(a)):
            raise errors.NegativeEntry("transition matrix has non-finite entries")
        neg = np.argwhere(a < 0)
        if len(neg):
            x, y = neg[0]
            raise errors.NegativeEntry(f"entry ({x}, {y}) = {a[x, y]!r} is negative")
        sums = a.sum(axis=1)
        bad = np.flatnonzero(np.abs(sums - 1.0) > tol)
        if len(bad):
            raise errors.RowSumInvalid(int(bad[0]), float(sums[bad[0]]))
        a /= sums[:, None]
        a.setflags(write=False)
        if labels is not None:
            labels = tuple(str(s) for s in labels)
            if len(labels) != a.shape[0]:
                raise errors.DimensionMismatch(f"{len(labels)} labels for {a.shape[0]} states")
        object.__setattr__(self, "matrix", a)
        object.__setattr__(self, "labels", labels)

    def __setattr__(self, name, value):
        raise AttributeError("TransitionMatrix is immutable")

    @property
    def n(self):
        return self.matrix.shape[0]

    def __array__(self, dtype=None, copy=None):
        return self.matrix if dtype is None else self.matrix.astype(dtype)

    def __getitem__(self, idx):
        return self.matrix[idx]

    def __eq__(self, other):
        return isinstance(other, TransitionMatrix) and np.array_equal(self.matrix, other.matrix)

    __hash__ = None

    def __repr__(self):
        return f"TransitionMatrix(n={self.n})"

    def label(self, x):
        return self.labels[x] if self.labels else str(x)

    def to_json(self):
        out = {"matrix": self.matrix.tolist()}
        if self.labels:
            out["states"] = list(self.labels)
        return out


def from_rows(rows, labels=None):
    return TransitionMatrix(rows, labels)


def as_matrix(P):
    return P.matrix if isinstance(P, TransitionMatrix) else np.asarray(P, dtype=np.float64)


def distribution(probs, tol=ROW_SUM_TOL):
    """Validate a probability vector and return it as a read-only array."""
    p = np.array(probs, dtype=np.float64)
    if p.ndim != 1 or len(p) == 0:
        raise errors.DimensionMismatch("a distribution must be a non-empty vector")
    if np.any(p < 0) or not np.all(np.isfinite(p)):
        raise errors.NegativeEntry("distribution has negative or non-finite entries")
    if abs(p.sum() - 1.0) > tol:
        raise errors.ProbabilitySumInvalid(f"distribution sums to {p.sum()!r}")
    p.setflags(write=False)
    return p


def point_mass(n, x):
    p = np.zeros(n)
    p[x] = 1.0
    p.setflags(write=False)
    return p


def uniform(n):
    return _frozen(np.full(n, 1.0 / n))


# --- constructors -----------------------------------------------------------


def srw_from_graph(g: Graph):
    """Simple random walk: P(x, y) = 1/deg(x) for each neighbour y."""
    if g.has_loops():
        raise errors.LoopUnsupported("simple random walks are built on loopless graphs")
    P = np.zeros((g.n_vertices, g.n_vertices))
    for v in range(g.n_vertices):
        nb = g.neighbors(v)
        if not nb:
            raise errors.IsolatedVertex(f"vertex {v} has no neighbours")
        P[v, list(nb)] = 1.0 / len(nb)
    return TransitionMatrix(P)


def lazy(P):
    A = as_matrix(P)
    return TransitionMatrix(0.5 * (np.eye(len(A)) + A))


def absorb(P, boundary):
    """Replace the rows of ``boundary`` by identity rows (the chain stopped on hitting it)."""
    A = np.array(as_matrix(P))
    boundary = sorted(set(int(b) for b in boundary))
    if not boundary:
        raise errors.EmptyBoundary("boundary is empty")
    if len(boundary) >= len(A):
        raise errors.BoundaryIsEverything("boundary must be a strict subset of the states")
    for b in boundary:
        if not 0 <= b < len(A):
            raise errors.StateOutOfRange(f"boundary state {b} out of range")
        A[b] = 0.0
        A[b, b] = 1.0
    return TransitionMatrix(A, getattr(P, "labels", None))


def birth_death(p, q, r):
    """Tridiagonal chain on {0..n}: p_k up, q_k down, r_k stay."""
    p, q, r = (np.asarray(v, dtype=np.float64) for v in (p, q, r))
    if not (p.shape == q.shape == r.shape) or p.ndim != 1:
        raise errors.DimensionMismatch("p, q and r must be vectors of equal length")
    if np.any(p < 0) or np.any(q < 0) or np.any(r < 0):
        raise errors.NegativeEntry("birth-death rates must be non-negative")
    tot = p + q + r
    bad = np.flatnonzero(np.abs(tot - 1.0) > ROW_SUM_TOL)
    if len(bad):
        raise errors.ProbabilitySumInvalid(f"p+q+r = {tot[bad[0]]!r} at state {bad[0]}")
    if q[0] != 0 or p[-1] != 0:
        raise errors.BoundaryLeak("need q_0 = 0 and p_n = 0")
    m = len(p)
    P = np.diag(r)
    P[np.arange(m - 1), np.arange(1, m)] = p[:-1]
    P[np.arange(1, m), np.arange(m - 1)] = q[1:]
    return TransitionMatrix(P)


def ehrenfest(N):
    """Ehrenfest urn with N balls: k -> k+1 w.p. (N-k)/N, k -> k-1 w.p. k/N."""
    k = np.arange(N + 1)
    return birth_death((N - k) / N, k / N, np.zeros(N + 1))


def queue(n, p):
    """Queue of capacity n: arrival p, departure q = 1-p, blocked moves stay put."""
    q = 1.0 - p
    up = np.full(n + 1, p)
    down = np.full(n + 1, q)
    up[-1] = 0.0
    down[0] = 0.0
    return birth_death(up, down, 1.0 - up - down)


def bernoulli_laplace(N):
    """Two urns of N balls (N red, N blue overall); one ball from each urn is swapped.

    State k = red balls in the first urn.  Up: (N-k)^2/N^2, down: k^2/N^2.
    """
    k = np.arange(N + 1)
    up = ((N - k) / N) ** 2
    down = (k / N) ** 2
    return birth_death(up, down, 1.0 - up - down)


def two_state(p, q):
    return TransitionMatrix([[1 - p, p], [q, 1 - q]])


def biased_cycle(n, p):
    """Walk on the n-cycle stepping x -> x+1 w.p. p and x -> x-1 w.p. 1-p."""
    P = np.zeros((n, n))
    for x in range(n):
        P[x, (x + 1) % n] += p
        P[x, (x - 1) % n] += 1 - p
    return TransitionMatrix(P)


def star_chain(leaves, p):
    """Centre 0 jumps to a uniform leaf; a leaf returns to 0 w.p. p, else stays."""
    n = leaves + 1
    P = np.zeros((n, n))
    P[0, 1:] = 1.0 / leaves
    P[1:, 0] = p
    P[np.arange(1, n), np.arange(1, n)] = 1 - p
    return TransitionMatrix(P)


def complete_with_loops(n):
    """Jump to a uniformly random state (loops included): P = (1/n) 1^T 1."""
    return TransitionMatrix(np.full((n, n), 1.0 / n))


# --- evolution ---------------------------------------------------------------


def evolve(mu0, P, k):
    """mu0 P^k by k vector-matrix products."""
    A = as_matrix(P)
    mu = np.asarray(mu0, dtype=np.float64)
    if mu.shape != (len(A),):
        raise errors.DimensionMismatch(f"distribution of length {mu.shape} for {len(A)} states")
    if k < 0:
        raise ValueError("k must be >= 0")
    for _ in range(k):
        mu = mu @ A
    return mu


def matrix_power(P, k):
    A = as_matrix(P)
    if k < 0:
        raise ValueError("k must be >= 0")
    if k <= 8:
        out = np.eye(len(A))
        for _ in range(k):
            out = out @ A
        return out
    out = np.eye(len(A))
    base = A.copy()
    while k:
        if k & 1:
            out = out @ base
        base = base @ base
        k >>= 1
    return out


# --- structure ---------------------------------------------------------------


def _successors(A):
    return [np.flatnonzero(row > 0) for row in A]


def _bfs_levels(succ, start=0):
    level = {start: 0}
    queue_ = deque([start])
    while queue_:
        v = queue_.popleft()
        for w in succ[v]:
            if w not in level:
                level[w] = level[v] + 1
                queue_.append(w)
    return level


def is_irreducible(P):
    A = as_matrix(P)
    n = len(A)
    return len(_bfs_levels(_successors(A))) == n and len(_bfs_levels(_successors(A.T))) == n


def period(P):
    """gcd over positive edges u -> v of level(u) + 1 - level(v), with BFS levels from state 0."""
    A = as_matrix(P)
    if not is_irreducible(A):
        raise errors.NotIrreducible("period is only defined here for irreducible chains")
    succ = _successors(A)
    level = _bfs_levels(succ)
    d = 0
    for u in range(len(A)):
        for v in succ[u]:
            d = gcd(d, abs(level[u] + 1 - level[int(v)]))
    return d


def is_aperiodic(P):
    return period(P) == 1


# --- simulation --------------------------------------------------------------


@dataclass(frozen=True)
class Trajectory:
    states: tuple
    seed: int

    def __len__(self):
        return len(self.states)


def _cumulative_rows(A):
    return [np.cumsum(row).tolist() for row in A]


def step_from_cumulative(cum, u):
    """Stick-breaking selection: least k with cum[k-1] < u <= cum[k], skipping empty states."""
    k = bisect_left(cum, u)
    last = len(cum) - 1
    if k > last:
        k = last
    # u on an exact boundary (u = 0 in particular) can land on a zero-mass state
    while k < last and (cum[k] - (cum[k - 1] if k else 0.0)) <= 0.0:
        k += 1
    while k > 0 and (cum[k] - cum[k - 1]) <= 0.0:
        k -= 1
    return k


def simulate(P, x0, steps, rng=None):
    """Run the chain from ``x0``; each step consumes exactly one unit draw."""
    A = as_matrix(P)
    if not 0 <= x0 < len(A):
        raise errors.StateOutOfRange(f"start state {x0} outside 0..{len(A) - 1}")
    rng = as_source(rng)
    cum = _cumulative_rows(A)
    states = [int(x0)]
    x = int(x0)
    for u in rng.uniforms(steps).tolist():
        x = step_from_cumulative(cum[x], u)
        states.append(x)
    return Trajectory(tuple(states), rng.seed)
