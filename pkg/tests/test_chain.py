import numpy as np
import pytest
from hypothesis import given, strategies as st

from markovkit import chain, errors, graph
from markovkit.chain import TransitionMatrix
from markovkit.rng import RandomSource
from strategies import stochastic_matrices

TRANS_MAT1 = [[0, 1, 0, 0, 0], [1 / 3, 0, 1 / 3, 1 / 3, 0], [0, 1 / 3, 0, 1 / 3, 1 / 3],
              [0, 1 / 3, 1 / 3, 0, 1 / 3], [0, 0, 1 / 2, 1 / 2, 0]]


def test_kite_walk_matrix():
    g = graph.Graph.from_edges(5, [(0, 1), (1, 2), (1, 3), (2, 3), (2, 4), (3, 4)])
    np.testing.assert_allclose(chain.srw_from_graph(g).matrix, TRANS_MAT1, atol=1e-15)


def test_validation_errors():
    with pytest.raises(errors.NotSquare):
        TransitionMatrix([[1, 0]])
    with pytest.raises(errors.NegativeEntry):
        TransitionMatrix([[1.5, -0.5], [0, 1]])
    with pytest.raises(errors.RowSumInvalid) as exc:
        TransitionMatrix([[0.5, 0.5], [0.4, 0.5]])
    assert "row 1" in str(exc.value)
    with pytest.raises(errors.DimensionMismatch):
        TransitionMatrix([[1]], labels=["a", "b"])


def test_renormalised_and_immutable():
    P = TransitionMatrix([[0.5 + 1e-12, 0.5], [0, 1]])
    assert abs(P.matrix[0].sum() - 1.0) < 1e-15
    with pytest.raises(ValueError):
        P.matrix[0, 0] = 1.0
    with pytest.raises(AttributeError):
        P.labels = ("a", "b")


def test_json_round_trip():
    P = TransitionMatrix(TRANS_MAT1, labels="abcde")
    assert TransitionMatrix(P.to_json()["matrix"], P.to_json()["states"]) == P
    assert P.label(4) == "e"


def test_srw_rejects_loops_and_isolated():
    with pytest.raises(errors.LoopUnsupported):
        chain.srw_from_graph(graph.Graph.from_edges(2, [(0, 0), (0, 1)]))
    with pytest.raises(errors.IsolatedVertex):
        chain.srw_from_graph(graph.Graph.from_edges(3, [(0, 1)]))


def test_ehrenfest_and_bernoulli_laplace_rows():
    E = chain.ehrenfest(4).matrix
    assert E[0, 1] == 1 and E[4, 3] == 1 and E[2, 1] == E[2, 3] == 0.5
    B = chain.bernoulli_laplace(3).matrix
    np.testing.assert_allclose(B[1], [1 / 9, 4 / 9, 4 / 9, 0])


def test_birth_death_boundary_leak():
    with pytest.raises(errors.BoundaryLeak):
        chain.birth_death([0.5, 0.5], [0.5, 0.5], [0, 0])
    with pytest.raises(errors.ProbabilitySumInvalid):
        chain.birth_death([0.5, 0], [0, 0.5], [0, 0.4])


def test_queue_blocks_at_ends():
    Q = chain.queue(3, 0.3).matrix
    np.testing.assert_allclose(Q[0], [0.7, 0.3, 0, 0])
    np.testing.assert_allclose(Q[3], [0, 0, 0.7, 0.3])


def test_absorb():
    P = chain.absorb(chain.srw_from_graph(graph.path(4)), [3])
    np.testing.assert_array_equal(P.matrix[3], [0, 0, 0, 1])
    with pytest.raises(errors.BoundaryIsEverything):
        chain.absorb(chain.two_state(0.5, 0.5), [0, 1])


def test_distribution_checks():
    with pytest.raises(errors.ProbabilitySumInvalid):
        chain.distribution([0.5, 0.4])
    with pytest.raises(errors.NegativeEntry):
        chain.distribution([1.5, -0.5])
    assert chain.point_mass(3, 1).tolist() == [0, 1, 0]


@pytest.mark.parametrize("k", [0, 1, 5, 9, 33])
def test_matrix_power_matches_numpy(k):
    P = np.array(TRANS_MAT1)
    np.testing.assert_allclose(chain.matrix_power(P, k), np.linalg.matrix_power(P, k), atol=1e-13)


@given(stochastic_matrices(), st.integers(0, 20))
def test_evolution_preserves_mass(A, k):
    mu = np.full(len(A), 1 / len(A))
    nu = chain.evolve(mu, A, k)
    assert abs(nu.sum() - 1) < 1e-12
    assert np.all(nu >= 0)
    np.testing.assert_allclose(nu, mu @ chain.matrix_power(A, k), atol=1e-12)
    np.testing.assert_allclose(chain.matrix_power(A, k).sum(axis=1), 1.0, atol=1e-12)


def test_periods():
    assert chain.period(chain.srw_from_graph(graph.cycle(4))) == 2
    assert chain.period(chain.srw_from_graph(graph.cycle(5))) == 1
    assert chain.period(chain.srw_from_graph(graph.hypercube(3))) == 2
    assert chain.period(chain.biased_cycle(6, 1.0)) == 6
    assert chain.is_aperiodic(chain.lazy(chain.srw_from_graph(graph.cycle(4))))
    with pytest.raises(errors.NotIrreducible):
        chain.period([[1, 0], [0.5, 0.5]])


@given(stochastic_matrices(irreducible=True))
def test_period_matches_return_time_gcd(A):
    # oracle: gcd of n <= 2 n_states^2 with P^n(0,0) > 0
    from math import gcd
    n = len(A)
    d, M = 0, np.eye(n)
    for t in range(1, 2 * n * n + 1):
        M = (M @ (A > 0)) > 0
        if M[0, 0]:
            d = gcd(d, t)
    assert chain.period(A) == d


def test_irreducibility():
    assert chain.is_irreducible(TRANS_MAT1)
    assert not chain.is_irreducible([[1, 0], [0.5, 0.5]])
    assert not chain.is_irreducible(chain.absorb(chain.srw_from_graph(graph.path(3)), [0]))


def test_simulate_deterministic_and_valid():
    P = chain.srw_from_graph(graph.cycle(7))
    a = chain.simulate(P, 0, 500, RandomSource(4))
    assert a == chain.simulate(P, 0, 500, RandomSource(4))
    assert len(a) == 501 and a.seed == 4
    for x, y in zip(a.states, a.states[1:]):
        assert P[x, y] > 0


def test_simulate_one_draw_per_step():
    r = RandomSource(1)
    chain.simulate(chain.two_state(0.3, 0.3), 0, 100, r)
    assert r.draws == 100


def test_step_from_cumulative_skips_empty_states():
    cum = [0.0, 0.5, 0.5, 1.0]
    assert chain.step_from_cumulative(cum, 0.0) == 1
    assert chain.step_from_cumulative(cum, 0.5) == 1
    assert chain.step_from_cumulative(cum, 0.5000001) == 3


def test_simulate_empirical_transitions():
    P = chain.two_state(0.2, 0.6)
    s = np.array(chain.simulate(P, 0, 100_000, RandomSource(2)).states)
    from0 = s[1:][s[:-1] == 0]
    assert abs(from0.mean() - 0.2) < 4 * np.sqrt(0.16 / len(from0))
