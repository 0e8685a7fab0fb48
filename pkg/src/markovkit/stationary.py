"""Stationary distributions, detailed balance and time reversal."""

from dataclasses import dataclass

import numpy as np
from scipy.sparse.csgraph import connected_components

from . import errors
from .chain import TransitionMatrix, as_matrix, is_irreducible
from .graph import is_connected

DBE_TOL = 1e-9


@dataclass(frozen=True)
class ReversibilityReport:
    reversible: bool
    max_violation: float
    worst_pair: tuple


def _solve_irreducible(A):
    n = len(A)
    M = A.T - np.eye(n)
    M[-1, :] = 1.0
    b = np.zeros(n)
    b[-1] = 1.0
    pi = np.linalg.solve(M, b)
    pi = np.clip(pi, 0.0, None)
    return pi / pi.sum()


def solve_stationary(P):
    """The unique pi with pi P = pi for an irreducible chain.

    Solves (P^T - I) x = 0 with its last equation replaced by sum(x) = 1,
    by LU with partial pivoting.  The system becomes ill conditioned when
    pi spans many orders of magnitude; expect absolute errors to grow once
    min(pi) falls below roughly 1e-20.
    """
    A = as_matrix(P)
    if not is_irreducible(A):
        raise errors.NotIrreducible("chain is reducible; the stationary distribution is not unique "
                                    "(solve_stationary_any returns one of them)")
    pi = _solve_irreducible(A)
    pi.setflags(write=False)
    return pi


def solve_stationary_any(P):
    """Some stationary distribution, also for reducible chains.

    The returned one is supported on the closed communicating class holding the
    lowest-numbered state among all closed classes.  Which one is returned is an
    implementation choice and carries no meaning.
    """
    A = as_matrix(P)
    n = len(A)
    _, comp = connected_components(A > 0, directed=True, connection="strong")
    chosen = None
    for x in range(n):
        members = np.flatnonzero(comp == comp[x])
        outside = np.setdiff1d(np.arange(n), members)
        if not np.any(A[np.ix_(members, outside)] > 0):
            chosen = members
            break
    pi = np.zeros(n)
    pi[chosen] = _solve_irreducible(A[np.ix_(chosen, chosen)])
    pi.setflags(write=False)
    return pi


def srw_stationary(g):
    """pi(v) = deg(v) / 2|E| for the simple random walk on a connected graph."""
    if not is_connected(g):
        raise errors.Disconnected("graph is not connected")
    if g.has_loops():
        raise errors.LoopUnsupported("simple random walks are built on loopless graphs")
    deg = np.array(g.degrees(), dtype=np.float64)
    if np.any(deg == 0):
        raise errors.IsolatedVertex("graph has an isolated vertex")
    pi = deg / (2.0 * g.n_edges)
    pi.setflags(write=False)
    return pi


def check_reversible(P, pi, tol=DBE_TOL):
    """Largest |pi(x)P(x,y) - pi(y)P(y,x)| over all pairs, and where it occurs."""
    A = as_matrix(P)
    pi = np.asarray(pi, dtype=np.float64)
    if pi.shape != (len(A),):
        raise errors.DimensionMismatch(f"pi has length {len(pi)}, chain has {len(A)} states")
    flow = pi[:, None] * A
    viol = np.abs(flow - flow.T)
    x, y = np.unravel_index(np.argmax(viol), viol.shape)
    worst = float(viol[x, y])
    return ReversibilityReport(worst <= tol, worst, (int(x), int(y)))


def reverse(P, pi, tol=DBE_TOL):
    """Time reversal: Phat(y, x) = P(x, y) pi(x) / pi(y)."""
    A = as_matrix(P)
    pi = np.asarray(pi, dtype=np.float64)
    if pi.shape != (len(A),):
        raise errors.DimensionMismatch(f"pi has length {len(pi)}, chain has {len(A)} states")
    if np.any(pi <= 0):
        raise errors.NonPositivePi(f"pi({int(np.argmin(pi))}) is not positive")
    resid = np.max(np.abs(pi @ A - pi))
    if resid > tol:
        raise errors.NotStationary(f"pi is not stationary (max |pi P - pi| = {resid:.3g})")
    Phat = A.T * pi[None, :] / pi[:, None]
    return TransitionMatrix(Phat, getattr(P, "labels", None))


def birth_death_stationary(p, q):
    """pi_k proportional to (p_0 ... p_{k-1}) / (q_1 ... q_k), accumulated in log space."""
    p = np.asarray(p, dtype=np.float64)
    q = np.asarray(q, dtype=np.float64)
    if p.shape != q.shape or p.ndim != 1:
        raise errors.DimensionMismatch("p and q must be vectors of equal length")
    if np.any(p[:-1] <= 0) or np.any(q[1:] <= 0):
        raise errors.NotIrreducible("need p_k > 0 for k < n and q_k > 0 for k >= 1")
    logw = np.concatenate([[0.0], np.cumsum(np.log(p[:-1]) - np.log(q[1:]))])
    w = np.exp(logw - logw.max())
    pi = w / w.sum()
    pi.setflags(write=False)
    return pi
