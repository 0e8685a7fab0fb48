from pathlib import Path

import numpy as np
import pytest

from markovkit.graph import Graph

DATA = Path(__file__).parent / "data"
GOLDEN = Path(__file__).parent / "golden"

_criteria = {}


def random_connected_graph(rng, n, p):
    """Random spanning tree plus independent extra edges (numpy generator ``rng``)."""
    order = rng.permutation(n)
    edges = {tuple(sorted((int(order[i]), int(order[rng.integers(i)])))) for i in range(1, n)}
    for u in range(n):
        for v in range(u + 1, n):
            if rng.random() < p:
                edges.add((u, v))
    return Graph.from_edges(n, sorted(edges))


def random_irreducible(rng, n, density=0.4):
    """Random row-stochastic matrix containing a random Hamiltonian cycle."""
    W = rng.random((n, n)) * (rng.random((n, n)) < density)
    order = rng.permutation(n)
    for i in range(n):
        W[order[i], order[(i + 1) % n]] += rng.random() + 0.1
    return W / W.sum(axis=1, keepdims=True)


def random_base(rng, n, density=0.5):
    """Irreducible asymmetric proposal with q(x,y) > 0 iff q(y,x) > 0."""
    mask = rng.random((n, n)) < density
    ring = np.roll(np.eye(n, dtype=bool), 1, axis=1)
    mask |= mask.T | ring | ring.T
    W = (rng.random((n, n)) + 0.05) * mask
    return W / W.sum(axis=1, keepdims=True)


@pytest.fixture
def data():
    return DATA


def pytest_runtest_logreport(report):
    if report.when != "call" and not (report.when == "setup" and report.outcome != "passed"):
        return
    n = getattr(report, "criterion", None)
    if n is None:
        return
    _criteria.setdefault(n, []).append(report.outcome == "passed")


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    marker = item.get_closest_marker("criterion")
    if marker is not None:
        outcome.get_result().criterion = marker.args[0]


def pytest_terminal_summary(terminalreporter):
    if not _criteria:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(_criteria):
        ok = all(_criteria[n])
        terminalreporter.write_line(f"criterion {n:2d}: {'PASS' if ok else 'FAIL'} "
                                    f"({sum(_criteria[n])}/{len(_criteria[n])} checks)")
