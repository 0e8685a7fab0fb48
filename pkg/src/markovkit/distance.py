"""Total variation distance, convergence curves and mixing times."""

from dataclasses import dataclass

import numpy as np

from . import errors
from .chain import as_matrix

_TV_AGREEMENT = 1e-12


def _pair(p, q):
    p = np.asarray(p, dtype=np.float64)
    q = np.asarray(q, dtype=np.float64)
    if p.shape != q.shape:
        raise errors.DimensionMismatch(f"shapes {p.shape} and {q.shape} differ")
    return p, q


def tv_distance_excess(p, q):
    """Sum of p_k - q_k over the states where p_k >= q_k."""
    p, q = _pair(p, q)
    d = p - q
    return float(d[d >= 0].sum())


def tv_distance(p, q):
    """||p - q||_TV = 1/2 sum |p_k - q_k|.

    Cross-checked against :func:`tv_distance_excess`; the two agree up to half
    the difference in total mass.
    """
    p, q = _pair(p, q)
    half_l1 = 0.5 * float(np.abs(p - q).sum())
    excess = tv_distance_excess(p, q)
    slack = _TV_AGREEMENT + 0.5 * abs(float(p.sum() - q.sum()))
    if abs(half_l1 - excess) > slack:
        raise ArithmeticError(f"TV formulas disagree: {half_l1!r} vs {excess!r}")
    return half_l1


def convergence_curve(P, x0, pi, n_max):
    """[||delta_x0 P^n - pi||_TV for n = 0..n_max] by iterated vector products."""
    A = as_matrix(P)
    pi = np.asarray(pi, dtype=np.float64)
    if pi.shape != (len(A),):
        raise errors.DimensionMismatch(f"pi has length {len(pi)}, chain has {len(A)} states")
    if not 0 <= x0 < len(A):
        raise errors.StateOutOfRange(f"start state {x0} outside 0..{len(A) - 1}")
    mu = np.zeros(len(A))
    mu[x0] = 1.0
    out = [0.5 * float(np.abs(mu - pi).sum())]
    for _ in range(n_max):
        mu = mu @ A
        out.append(0.5 * float(np.abs(mu - pi).sum()))
    return out


@dataclass(frozen=True)
class NotReached:
    """Returned by :func:`empirical_mixing_time` when the cap is hit first."""
    n_cap: int


def worst_case_tv(P, pi, n):
    """max over starting states x of ||P^n(x, .) - pi||_TV."""
    A = as_matrix(P)
    D = np.linalg.matrix_power(A, n)
    return float(0.5 * np.abs(D - np.asarray(pi)[None, :]).sum(axis=1).max())


def empirical_mixing_time(P, pi, eps, n_cap=10_000):
    """Least n with max_x ||P^n(x, .) - pi||_TV <= eps, or NotReached(n_cap)."""
    A = as_matrix(P)
    pi = np.asarray(pi, dtype=np.float64)
    if pi.shape != (len(A),):
        raise errors.DimensionMismatch(f"pi has length {len(pi)}, chain has {len(A)} states")
    if not 0 <= eps < 1:
        raise ValueError(f"eps = {eps!r} must lie in [0, 1)")
    D = np.eye(len(A))
    for n in range(n_cap + 1):
        if 0.5 * np.abs(D - pi[None, :]).sum(axis=1).max() <= eps:
            return n
        D = D @ A
    return NotReached(n_cap)


def binomial_coupling_bound(n, a, b):
    """1 - (1 - |a - b|)^n, the shared-uniform coupling bound on ||Bin(n,a) - Bin(n,b)||_TV."""
    for v in (a, b):
        if not 0 <= v <= 1:
            raise errors.InvalidProbability(f"{v!r} is not a probability")
    return 1.0 - (1.0 - abs(a - b)) ** n
