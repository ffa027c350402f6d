import random

import pytest

from zetagraph import _kernels
from zetagraph.graphs import Digraph, Graph, GraphError


@pytest.fixture(scope="session", autouse=True)
def warm_kernels():
    # JIT-compile every kernel once so timed tests measure algorithms, not numba
    _kernels.warmup()


def random_connected_graph(rng: random.Random, n_max: int = 8, m_max: int = 14) -> Graph:
    while True:
        n = rng.randint(2, n_max)
        pool = [(i, j) for i in range(n) for j in range(i + 1, n)]
        lo = max(1, n - 1)
        hi = min(m_max, len(pool))
        if lo > hi:
            continue
        m = rng.randint(lo, hi)
        try:
            return Graph(n, rng.sample(pool, m))
        except GraphError:
            continue


def random_weak_digraph(rng: random.Random, n_max: int = 5) -> Digraph:
    while True:
        n = rng.randint(2, n_max)
        pool = [(i, j) for i in range(n) for j in range(n) if i != j]
        m = rng.randint(n, min(len(pool), 3 * n))
        try:
            return Digraph(n, rng.sample(pool, m))
        except GraphError:
            continue


@pytest.fixture(scope="session")
def graph_corpus():
    rng = random.Random(20240811)
    return [random_connected_graph(rng) for _ in range(50)]


@pytest.fixture(scope="session")
def digraph_corpus():
    rng = random.Random(777)
    return [random_weak_digraph(rng) for _ in range(12)]
