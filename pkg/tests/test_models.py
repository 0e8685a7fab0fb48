import itertools
import math

import numpy as np
import pytest
from hypothesis import given, strategies as st

from markovkit import errors, graph, models
from markovkit.rng import RandomSource
from markovkit.samplers import run_chain
from markovkit.stationary import solve_stationary


def beta_binomial(a, b, n, j):
    """P(j black draws in n) for the urn started with a black, b red."""
    lb = lambda x, y: math.lgamma(x) + math.lgamma(y) - math.lgamma(x + y)
    return math.comb(n, j) * math.exp(lb(j + a, n - j + b) - lb(a, b))


@given(st.integers(1, 5), st.integers(1, 5), st.integers(0, 30))
def test_polya_dp_matches_beta_binomial(a, b, n):
    p = models.polya_pmf_exact(a, b, n)
    assert p[:a].sum() == 0
    expected = [beta_binomial(a, b, n, j) for j in range(n + 1)]
    np.testing.assert_allclose(p[a:], expected, atol=1e-12)


def test_polya_step_and_simulation():
    s = models.PolyaState(1, 1)
    rng = RandomSource(0)
    t = models.polya_step(s, rng)
    assert t.black + t.red == 3 and t.step == 1 and rng.draws == 1
    emp = models.polya_simulate(2, 1, 5, 20_000, RandomSource(1))
    assert 0.5 * np.abs(emp - models.polya_pmf_exact(2, 1, 5)).sum() < 0.02
    with pytest.raises(ValueError):
        models.polya_pmf_exact(0, 1, 3)


@given(st.integers(0, 80), st.integers(-80, 80))
def test_srw_z_pmf(n, k):
    p = models.srw_z_pmf(n, k)
    if abs(k) > n or (n + k) % 2:
        assert p == 0
    else:
        assert p == pytest.approx(math.comb(n, (n + k) // 2) / 2**n, rel=1e-12)


def test_srw_z_pmf_sums_to_one():
    for n in (10, 51, 200):
        assert sum(models.srw_z_pmf(n, k) for k in range(-n, n + 1)) == pytest.approx(1.0)


def test_exclusion_structure():
    P = models.exclusion_chain(6, 3)
    assert P.n == 20
    assert P.labels[0] == "000111"
    src = P.labels.index("101100")
    # particle at site 2 steps to site 1
    assert P[src, P.labels.index("110100")] == pytest.approx(1 / 3)
    # particle at site 0 wraps to site 5
    assert P[src, P.labels.index("001101")] == pytest.approx(1 / 3)
    # particle at site 3 is blocked
    assert P[src, src] == pytest.approx(1 / 3)


@pytest.mark.parametrize("n,k", [(3, 1), (5, 2), (7, 3), (8, 5)])
def test_exclusion_doubly_stochastic(n, k):
    for d in ("ccw", "cw"):
        A = models.exclusion_chain(n, k, d).matrix
        np.testing.assert_allclose(A.sum(axis=0), 1, atol=1e-12)
        np.testing.assert_allclose(solve_stationary(A), 1 / len(A), atol=1e-12)


def test_exclusion_limits():
    with pytest.raises(ValueError):
        models.exclusion_chain(4, 4)
    with pytest.raises(errors.StateSpaceTooLarge):
        models.exclusion_chain(20, 10)


def brute_triangle_mean(n, beta):
    pairs = list(itertools.combinations(range(n), 2))
    num = den = 0.0
    for r in range(len(pairs) + 1):
        for es in itertools.combinations(pairs, r):
            t = models.triangle_count(graph.Graph.from_edges(n, es))
            w = math.exp(beta * t)
            num += w * t
            den += w
    return num / den


@pytest.mark.parametrize("beta", [-1.0, 0.0, 0.7])
def test_triangle_exact_mean_enumeration(beta):
    assert models.triangle_exact_mean(5, beta) == pytest.approx(brute_triangle_mean(5, beta), rel=1e-12)


def test_triangle_zero_beta_mean():
    # each triangle is present w.p. 1/8 under the uniform law
    assert models.triangle_exact_mean(6, 0.0) == pytest.approx(math.comb(6, 3) / 8)


def test_triangle_ratio_matches_counts():
    g = graph.complete(4)
    h = models.toggle_edge(g, (0, 1))
    r = models.triangle_gibbs_ratio(g, (0, 1), 0.3)
    assert r == pytest.approx(math.exp(0.3 * (models.triangle_count(h) - models.triangle_count(g))))
    assert models.toggle_edge(h, (1, 0)) == g


def test_triangle_metropolis_mean():
    beta = 0.8
    xs = run_chain(lambda g, r: models.triangle_step(g, beta, r), graph.Graph(4), 60_000,
                   burn_in=500, rng=RandomSource(3))
    counts = np.array([models.triangle_count(g) for g in xs])
    # batch means for a correlated chain
    se = counts.reshape(60, -1).mean(axis=1).std(ddof=1) / math.sqrt(60)
    assert abs(counts.mean() - models.triangle_exact_mean(4, beta)) < 4 * se + 0.01


def test_cover_walk_and_last_vertex():
    t, last = models.cover_walk(graph.path(2), 0, RandomSource(0))
    assert (t, last) == (1, 1)
    pmf = models.last_vertex_pmf(graph.cycle(6), 0, 20_000, RandomSource(2))
    assert pmf[0] == 0
    np.testing.assert_allclose(pmf[1:], 0.2, atol=0.015)


def test_cover_time_complete_graph():
    # coupon collector: (n-1) H_{n-1}
    n = 6
    exact = (n - 1) * sum(1 / k for k in range(1, n))
    assert models.cover_time_mean(graph.complete(n), 0, 20_000, RandomSource(5)) == pytest.approx(exact, abs=0.1)
    with pytest.raises(errors.Disconnected):
        models.cover_time_mean(graph.Graph.from_edges(3, [(0, 1)]), 0, 10)


def test_shift_register_transitions():
    P = models.shift_register_chain(3)
    # x = 0b110 drops its last bit and receives a new leading bit
    assert P[0b110, 0b011] == 0.5 and P[0b110, 0b111] == 0.5
    np.testing.assert_allclose(P.matrix.sum(axis=0), 1)
