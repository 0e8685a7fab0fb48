"""Finite Markov chain analysis and Monte Carlo toolkit."""

from .absorption import (AbsorptionAnalysis, analyze, expected_return_time, gamblers_ruin,
                         harmonic_extend, hitting_times)
from .chain import (TransitionMatrix, Trajectory, absorb, bernoulli_laplace, biased_cycle,
                    birth_death, complete_with_loops, distribution, ehrenfest, evolve, from_rows,
                    is_aperiodic, is_irreducible, lazy, matrix_power, period, queue, simulate,
                    srw_from_graph, star_chain, two_state)
from .distance import (NotReached, binomial_coupling_bound, convergence_curve,
                       empirical_mixing_time, tv_distance)
from .errors import MarkovError
from .graph import Graph, erdos_renyi, generate, is_connected
from .rng import RandomSource
from .spectral import SpectralData, closed_form_spectrum, mixing_bounds, spectrum, symmetrize
from .stationary import (ReversibilityReport, birth_death_stationary, check_reversible, reverse,
                         solve_stationary, solve_stationary_any, srw_stationary)

__version__ = "0.1.0"
