"""Gibbs distributions on graph vertices and Metropolis-based minimisation."""

import math
from dataclasses import dataclass, field
from typing import Callable

import numpy as np

from . import errors
from .chain import srw_from_graph
from .graph import Graph
from .rng import as_source
from .samplers import metropolis_matrix


@dataclass(frozen=True)
class ObjectiveOnGraph:
    graph: Graph
    values: tuple

    def __post_init__(self):
        vals = tuple(float(v) for v in self.values)
        if len(vals) != self.graph.n_vertices:
            raise errors.DimensionMismatch(f"{len(vals)} objective values for "
                                           f"{self.graph.n_vertices} vertices")
        if not all(math.isfinite(v) for v in vals):
            raise ValueError("objective must be finite at every vertex")
        object.__setattr__(self, "values", vals)

    def __call__(self, v):
        return self.values[v]


@dataclass(frozen=True)
class AnnealSchedule:
    """Inverse temperature as a function of the step index, nondecreasing and >= 0."""
    lambda_of_t: Callable
    checked_steps: int = field(default=1000, compare=False)

    def __post_init__(self):
        prev = -math.inf
        for t in range(self.checked_steps):
            lam = self.lambda_of_t(t)
            if lam < 0 or lam < prev:
                raise ValueError(f"schedule must be nonnegative and nondecreasing (t={t}, lambda={lam})")
            prev = lam

    def __call__(self, t):
        return self.lambda_of_t(t)


def log_schedule(c=1.0):
    """lambda(t) = c * ln(1 + t)."""
    return AnnealSchedule(lambda t: c * math.log1p(t))


def constant_schedule(lam):
    return AnnealSchedule(lambda t: lam)


def gibbs_distribution(obj, lam):
    """pi_lambda(i) proportional to exp(-lambda f(i)), shifted by min f before exponentiating."""
    if lam < 0:
        raise ValueError("lambda must be >= 0")
    f = np.asarray(obj.values)
    w = np.exp(-lam * (f - f.min()))
    pi = w / w.sum()
    pi.setflags(write=False)
    return pi


def hill_climb_log_acceptance(obj, lam, x, y):
    g = obj.graph
    return math.log(g.degree(x) / g.degree(y)) - lam * (obj(y) - obj(x))


def hill_climb_step(obj, lam, x, rng):
    """Propose a uniform neighbour y (one draw), accept with
    min(1, deg(x)/deg(y) * exp(-lambda (f(y) - f(x)))) (one draw)."""
    nb = obj.graph.neighbors(x)
    if not nb:
        raise errors.IsolatedVertex(f"vertex {x} has no neighbours")
    y = nb[rng.randbelow(len(nb))]
    u = rng.uniform()
    log_a = hill_climb_log_acceptance(obj, lam, x, y)
    return y if log_a >= 0 or u <= math.exp(log_a) else x


def hill_climb_matrix(obj, lam):
    """Exact hill-climb kernel: Metropolis with the simple random walk as base, target pi_lambda."""
    return metropolis_matrix(srw_from_graph(obj.graph), gibbs_distribution(obj, lam))


@dataclass(frozen=True)
class AnnealResult:
    best_vertex: int
    best_value: float
    trace: tuple  # (t, lambda, state after step t, f(state))


def simulated_annealing(obj, schedule, steps, x0, rng=None):
    """Hill-climb steps with lambda = schedule(t) at step t = 0..steps-1.

    The incumbent is the best vertex visited at any time, the start included;
    ties keep the earlier vertex.
    """
    if steps < 1:
        raise ValueError("steps must be >= 1")
    rng = as_source(rng)
    x = x0
    best, best_val = x0, obj(x0)
    trace = []
    for t in range(steps):
        lam = schedule(t)
        x = hill_climb_step(obj, lam, x, rng)
        fx = obj(x)
        if fx < best_val:
            best, best_val = x, fx
        trace.append((t, lam, x, fx))
    return AnnealResult(best, best_val, tuple(trace))


def anneal_visit_probability(obj, schedule, steps, x0, target):
    """Exact probability that annealing visits ``target`` within ``steps`` steps.

    Propagates the law of the time-inhomogeneous chain, removing mass once it
    reaches ``target``.
    """
    n = obj.graph.n_vertices
    mu = np.zeros(n)
    mu[x0] = 1.0
    hit = float(target == x0)
    mu[target] = 0.0
    for t in range(steps):
        mu = mu @ hill_climb_matrix_at(obj, schedule(t))
        hit += mu[target]
        mu[target] = 0.0
    return hit


def hill_climb_matrix_at(obj, lam):
    """Same kernel as :func:`hill_climb_matrix` but built from log-acceptances, safe for huge lambda."""
    g = obj.graph
    n = g.n_vertices
    P = np.zeros((n, n))
    for x in range(n):
        nb = g.neighbors(x)
        for y in nb:
            P[x, y] = math.exp(min(0.0, hill_climb_log_acceptance(obj, lam, x, y))) / len(nb)
        P[x, x] = max(1.0 - P[x].sum(), 0.0)
    return P
