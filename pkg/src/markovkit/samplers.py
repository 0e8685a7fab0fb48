"""Sampling algorithms driven by an explicit :class:`RandomSource`.

Draw accounting (the reproducibility contract):

* ``sample_discrete``, ``inverse_cdf_sample``: one unit draw.
* ``rejection_sample``: per proposal, the base sampler's draws plus one.
* ``metropolis_step``: the base sampler's draws plus one acceptance draw.
* ``random_transposition_step``: two draws.
* ``gibbs_sweep``: random scan, one draw for the coordinate plus the
  conditional sampler's draws; systematic scan, the conditional draws only.
"""

from dataclasses import dataclass
from typing import Callable

import numpy as np

from . import errors
from .chain import TransitionMatrix, as_matrix, step_from_cumulative
from .rng import as_source


def sample_discrete(pi, rng):
    """Stick breaking: the k with sum_{i<k} pi_i < U <= sum_{i<=k} pi_i.

    U = 0 (probability 2^-53) selects the first state of positive mass.
    """
    cum = np.cumsum(np.asarray(pi, dtype=np.float64)).tolist()
    return step_from_cumulative(cum, rng.uniform())


def inverse_cdf_sample(f_inv, rng):
    return f_inv(rng.uniform())


def rejection_sample(target_pdf, base_pdf, base_sampler, M, rng, max_proposals=10**6):
    """Propose Y from the base, accept when U <= target(Y) / (M base(Y)).

    Returns ``(value, proposals_used)``.
    """
    if M < 1:
        raise ValueError(f"M = {M!r} must be >= 1")
    for used in range(1, max_proposals + 1):
        y = base_sampler(rng)
        ratio = target_pdf(y) / (M * base_pdf(y))
        if ratio > 1.0 + 1e-12:
            raise errors.RatioExceedsOne(y, ratio)
        if rng.uniform() <= ratio:
            return y, used
    raise errors.MaxProposalsExceeded(f"no acceptance in {max_proposals} proposals")


@dataclass(frozen=True)
class MetropolisSpec:
    """Proposal mechanism and the two ratios the acceptance step needs.

    base_sample(x, rng) -> y; base_ratio(x, y) = q(y, x) / q(x, y);
    target_ratio(x, y) = pi(y) / pi(x), so unnormalised targets are fine.
    """
    base_sample: Callable
    base_ratio: Callable
    target_ratio: Callable


def symmetric_ratio(x, y):
    return 1.0


def metropolis_step(spec, x, rng):
    """One Metropolis-Hastings step; accept y when U <= min(1, target_ratio * base_ratio)."""
    y = spec.base_sample(x, rng)
    u = rng.uniform()
    if y == x:
        return x
    a = min(1.0, spec.target_ratio(x, y) * spec.base_ratio(x, y))
    return y if u <= a else x


def metropolis_matrix(q, pi):
    """Exact Metropolis chain: p(x,y) = q(x,y) min(1, pi(y)q(y,x) / (pi(x)q(x,y))) off the diagonal."""
    Q = as_matrix(q)
    pi = np.asarray(pi, dtype=np.float64)
    if pi.shape != (len(Q),):
        raise errors.DimensionMismatch(f"pi has length {len(pi)}, base has {len(Q)} states")
    if np.any(pi <= 0):
        raise errors.NonPositivePi(f"pi({int(np.argmin(pi))}) is not positive")
    # q(x,y) min(1, r) = min(q(x,y), pi(y) q(y,x) / pi(x))
    P = np.minimum(Q, (pi[None, :] * Q.T) / pi[:, None])
    np.fill_diagonal(P, 0.0)
    np.fill_diagonal(P, np.maximum(1.0 - P.sum(axis=1), 0.0))
    return TransitionMatrix(P)


def graph_srw_proposal(g):
    """MetropolisSpec pieces for a uniform-neighbour proposal on a graph."""
    def sample(x, rng):
        nb = g.neighbors(x)
        return nb[rng.randbelow(len(nb))]

    def ratio(x, y):
        return g.degree(x) / g.degree(y)

    return sample, ratio


def degree_corrected_walk(g):
    """Metropolis spec targeting the uniform distribution on the vertices of ``g``.

    Accepts a move x -> y with probability min(1, deg(x)/deg(y)).
    """
    sample, ratio = graph_srw_proposal(g)
    return MetropolisSpec(sample, ratio, symmetric_ratio)


def random_transposition_step(perm, rng):
    """Swap positions I and J drawn independently and uniformly; I = J leaves perm unchanged."""
    perm = tuple(perm)
    n = len(perm)
    i = rng.randbelow(n)
    j = rng.randbelow(n)
    if i == j:
        return perm
    out = list(perm)
    out[i], out[j] = out[j], out[i]
    return tuple(out)


def gibbs_sweep(conditionals, x, scan, rng):
    """Resample coordinates from their full conditionals.

    ``conditionals[i](x, rng)`` draws coordinate i given the rest of ``x``.
    ``scan="random"`` updates one uniformly chosen coordinate;
    ``scan="systematic"`` updates all of them left to right.
    """
    x = list(x)
    if scan == "random":
        i = rng.randbelow(len(x))
        x[i] = conditionals[i](tuple(x), rng)
    elif scan == "systematic":
        for i in range(len(x)):
            x[i] = conditionals[i](tuple(x), rng)
    else:
        raise ValueError(f"scan must be 'random' or 'systematic', got {scan!r}")
    return tuple(x)


def gibbs_random_scan_matrix(states, conditional_pmf):
    """Exact random-scan Gibbs kernel on an enumerated finite state space.

    ``conditional_pmf(i, x)`` returns ``{value: probability}`` for coordinate i
    given the other coordinates of ``x``.
    """
    states = [tuple(s) for s in states]
    index = {s: k for k, s in enumerate(states)}
    d = len(states[0])
    P = np.zeros((len(states), len(states)))
    for s in states:
        for i in range(d):
            for v, pr in conditional_pmf(i, s).items():
                t = s[:i] + (v,) + s[i + 1:]
                P[index[s], index[t]] += pr / d
    return TransitionMatrix(P)


def run_chain(step, x0, steps, burn_in=0, thinning=1, rng=None):
    """Run ``step(x, rng)`` for burn_in + steps steps; keep every thinning-th post-burn-in state."""
    if thinning < 1:
        raise errors.InvalidThinning(f"thinning = {thinning!r} must be >= 1")
    rng = as_source(rng)
    x = x0
    for _ in range(burn_in):
        x = step(x, rng)
    out = []
    for i in range(1, steps + 1):
        x = step(x, rng)
        if i % thinning == 0:
            out.append(x)
    return out


def empirical_pmf(samples, n_states):
    counts = np.bincount(np.asarray(samples, dtype=np.int64), minlength=n_states)
    return counts / max(len(samples), 1)
