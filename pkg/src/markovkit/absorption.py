"""Hitting times, absorption probabilities and harmonic extension.

Everything here reduces to one linear system in the interior block ``Q`` of
the transition matrix: with ``M = (I - Q)^{-1}`` the expected hitting times
are the row sums of ``M`` and the absorption probabilities are ``M R``, where
``R`` is the interior-to-boundary block.
"""

from collections import deque
from dataclasses import dataclass

import numpy as np

from . import errors
from .chain import as_matrix, is_irreducible


@dataclass(frozen=True)
class AbsorptionAnalysis:
    interior: tuple
    boundary: tuple
    fundamental: np.ndarray
    hit_times: np.ndarray
    hit_probs: np.ndarray

    def time_from(self, x):
        return float(self.hit_times[self.interior.index(x)])


def _split(n, boundary):
    boundary = sorted(set(int(b) for b in boundary))
    if not boundary:
        raise errors.EmptyBoundary("boundary is empty")
    if len(boundary) >= n:
        raise errors.BoundaryIsEverything("boundary must be a strict subset of the states")
    for b in boundary:
        if not 0 <= b < n:
            raise errors.StateOutOfRange(f"boundary state {b} outside 0..{n - 1}")
    bset = set(boundary)
    interior = [x for x in range(n) if x not in bset]
    return interior, boundary


def _check_reachable(A, interior, boundary):
    """Backward BFS from the boundary; every interior state must be reached."""
    pred = [np.flatnonzero(A[:, y] > 0) for y in range(len(A))]
    seen = set(boundary)
    queue = deque(boundary)
    while queue:
        y = queue.popleft()
        for x in pred[y]:
            x = int(x)
            if x not in seen:
                seen.add(x)
                queue.append(x)
    for x in interior:
        if x not in seen:
            raise errors.BoundaryUnreachable(x)


def _fundamental(A, interior, boundary):
    _check_reachable(A, interior, boundary)
    Q = A[np.ix_(interior, interior)]
    try:
        return np.linalg.solve(np.eye(len(interior)) - Q, np.eye(len(interior)))
    except np.linalg.LinAlgError:
        # reachability was checked, so this is numerical; report it the same way
        raise errors.BoundaryUnreachable(interior[0]) from None


def analyze(P, boundary):
    """Fundamental matrix, expected hitting times and exit distribution for ``boundary``.

    ``fundamental[i, j]`` is the expected number of visits to ``interior[j]``
    before absorption when starting from ``interior[i]``.
    """
    A = as_matrix(P)
    interior, boundary = _split(len(A), boundary)
    M = _fundamental(A, interior, boundary)
    R = A[np.ix_(interior, boundary)]
    times = M.sum(axis=1)
    probs = M @ R
    for arr in (M, times, probs):
        arr.setflags(write=False)
    return AbsorptionAnalysis(tuple(interior), tuple(boundary), M, times, probs)


def hitting_times(P, boundary):
    """Expected hitting time of ``boundary`` from every state (zero on the boundary)."""
    A = as_matrix(P)
    res = analyze(A, boundary)
    out = np.zeros(len(A))
    out[list(res.interior)] = res.hit_times
    return out


def expected_return_time(P, x):
    """E_x(tau_x^+) = 1 + sum_{y != x} P(x, y) E_y(tau_x)."""
    A = as_matrix(P)
    if not is_irreducible(A):
        raise errors.NotIrreducible("return times are computed for irreducible chains")
    if len(A) == 1:
        return 1.0
    return float(1.0 + A[x] @ hitting_times(A, [x]))


def harmonic_extend(P, interior, boundary_values):
    """The unique h equal to ``boundary_values`` off ``interior`` and harmonic on it.

    Solves h_D = Q h_D + R f.
    """
    A = as_matrix(P)
    n = len(A)
    interior = sorted(set(int(x) for x in interior))
    values = {int(k): float(v) for k, v in boundary_values.items()}
    expected = set(range(n)) - set(interior)
    if set(values) != expected:
        raise errors.DimensionMismatch(
            f"boundary values given on {sorted(values)}, expected exactly {sorted(expected)}")
    boundary = sorted(expected)
    if not boundary:
        raise errors.EmptyBoundary("interior covers every state")
    h = np.zeros(n)
    f = np.array([values[b] for b in boundary])
    h[boundary] = f
    if interior:
        M = _fundamental(A, interior, boundary)
        h[interior] = M @ (A[np.ix_(interior, boundary)] @ f)
    return h


def ruin_chain(n, p):
    """Walk on {0..n}, up w.p. p, down w.p. 1-p, absorbed at 0 and n."""
    P = np.zeros((n + 1, n + 1))
    P[0, 0] = P[n, n] = 1.0
    for k in range(1, n):
        P[k, k + 1] = p
        P[k, k - 1] = 1 - p
    return P


def gamblers_ruin(n, k, p=0.5):
    """(P_k(hit n before 0), E_k(tau)) for the walk on {0..n} started at k.

    The fair case uses k/n and k(n-k).  The biased probability is
    ((q/p)^k - 1)/((q/p)^n - 1); the biased expected time has no closed form
    here and is computed from the absorbing chain.
    """
    if n < 1:
        raise errors.SizeTooSmall("need n >= 1")
    if not 0 <= k <= n:
        raise errors.StartOutOfRange(f"start {k} outside 0..{n}")
    if not 0 < p < 1:
        raise errors.InvalidProbability(f"p = {p!r} must lie in (0, 1)")
    if k in (0, n):
        return (float(k == n), 0.0)
    if p == 0.5:
        return (k / n, float(k * (n - k)))
    r = (1 - p) / p
    prob = np.expm1(k * np.log(r)) / np.expm1(n * np.log(r))
    res = analyze(ruin_chain(n, p), [0, n])
    return (float(prob), res.time_from(k))
