"""Martingales built from finite chains.

The martingale property of f(n, X_n) is certified exactly by one-step
averaging (``P f(n+1, .) = f(n, .)``); simulation is only used for optional
sampling, where the stopping time is random.
"""

import math
from dataclasses import dataclass

import numpy as np

from . import errors
from .absorption import _check_reachable
from .chain import as_matrix, step_from_cumulative
from .rng import as_source

MAX_CHECK_STEPS = 200


def eigen_martingale_value(lam, v, n, x):
    """lambda^{-n} v(x), with the power taken in log space."""
    if lam == 0:
        raise errors.ZeroEigenvalue("eigen-martingales need a nonzero eigenvalue")
    sign = -1.0 if (lam < 0 and n % 2) else 1.0
    return sign * v[x] * math.exp(-n * math.log(abs(lam)))


def eigen_martingale(lam, v):
    """f(n, x) = lambda^{-n} v(x) as a step-state function."""
    if lam == 0:
        raise errors.ZeroEigenvalue("eigen-martingales need a nonzero eigenvalue")
    v = np.asarray(v, dtype=np.float64)
    return lambda n, x: eigen_martingale_value(lam, v, n, x)


def srw_exponential_martingale(alpha):
    """exp(alpha x) / cosh(alpha)^n, a martingale for the simple symmetric walk on Z."""
    log_cosh = math.log(math.cosh(alpha))
    return lambda n, x: math.exp(alpha * x - n * log_cosh)


@dataclass(frozen=True)
class HarmonicCheck:
    holds: bool
    worst_violation: float
    worst_at: tuple  # (n, state)

    def __bool__(self):
        return self.holds


def check_space_time_harmonic(P, f, steps, tol=1e-9, states=None):
    """Check sum_y P(x, y) f(n+1, y) = f(n, x) for n < steps and x in ``states`` (default all)."""
    A = as_matrix(P)
    if steps > MAX_CHECK_STEPS:
        raise ValueError(f"steps is capped at {MAX_CHECK_STEPS}")
    states = range(len(A)) if states is None else sorted(states)
    idx = np.array(list(states), dtype=np.int64)
    worst, at = 0.0, (0, int(idx[0]) if len(idx) else 0)
    cur = np.array([f(0, y) for y in range(len(A))], dtype=np.float64)
    for n in range(steps):
        nxt = np.array([f(n + 1, y) for y in range(len(A))], dtype=np.float64)
        viol = np.abs(A[idx] @ nxt - cur[idx])
        k = int(np.argmax(viol))
        if viol[k] > worst:
            worst, at = float(viol[k]), (n, int(idx[k]))
        cur = nxt
    return HarmonicCheck(bool(worst <= tol), worst, at)


def optional_sampling_estimate(P, f, boundary, x0, trials, rng=None, max_steps=10**7):
    """Monte-Carlo mean and standard error of f(tau, X_tau), tau the hitting time of ``boundary``."""
    A = as_matrix(P)
    boundary = set(int(b) for b in boundary)
    if not boundary:
        raise errors.EmptyBoundary("boundary is empty")
    if x0 not in boundary:
        _check_reachable(A, [x0], sorted(boundary))
    rng = as_source(rng)
    cum = [np.cumsum(row).tolist() for row in A]
    vals = np.empty(trials)
    for i, child in enumerate(rng.spawn(trials)):
        x, t = x0, 0
        while x not in boundary:
            x = step_from_cumulative(cum[x], child.uniform())
            t += 1
            if t > max_steps:
                raise errors.NoConvergence(f"trial {i} did not hit the boundary in {max_steps} steps")
        vals[i] = f(t, x)
    mean = float(vals.mean())
    se = float(vals.std(ddof=1) / math.sqrt(trials)) if trials > 1 else 0.0
    return mean, se
