"""Shared fixtures, graph generators, and independent oracles.

The oracles here deliberately avoid the library's own code paths: the
candidate oracle tallies neighbor weights in a dict, and the modularity
oracle works from a dense adjacency matrix. Generators draw weights from
{0.5, 1.0, 2.0} so float arithmetic in comparisons stays exact.
"""

from collections import defaultdict

import numpy as np
import pytest

from sketchlpa import build_graph

DYADIC_WEIGHTS = (0.5, 1.0, 2.0)


# ---------------------------------------------------------------- builders

def triangle_graph(w01=1.0, w12=1.0, w02=1.0):
    return build_graph(3, [(0, 1, w01), (1, 2, w12), (0, 2, w02)])


def star_graph(leaves=3):
    return build_graph(leaves + 1, [(0, i) for i in range(1, leaves + 1)])


def path_graph(n=3):
    return build_graph(n, [(i, i + 1) for i in range(n - 1)])


def clique_edges(vertices):
    vs = list(vertices)
    return [(vs[a], vs[b]) for a in range(len(vs)) for b in range(a + 1, len(vs))]


def two_cliques_graph():
    """Two disjoint 4-cliques on vertices 0-3 and 4-7."""
    return build_graph(8, clique_edges(range(4)) + clique_edges(range(4, 8)))


def barbell_graph():
    """Two 4-cliques joined by the single bridge edge 3-4."""
    edges = clique_edges(range(4)) + clique_edges(range(4, 8)) + [(3, 4)]
    return build_graph(8, edges)


# -------------------------------------------------------------- generators

def random_edges(rng, n, m, self_loops=True):
    edges = []
    for _ in range(m):
        i = int(rng.integers(0, n))
        j = int(rng.integers(0, n))
        if not self_loops and i == j:
            continue
        edges.append((i, j, float(rng.choice(DYADIC_WEIGHTS))))
    return edges


def random_graph(rng, max_vertices=64, self_loops=True):
    """Small random multigraph; duplicates merge during assembly."""
    n = int(rng.integers(2, max_vertices + 1))
    m = int(rng.integers(1, 4 * n))
    edges = random_edges(rng, n, m, self_loops)
    if not edges:
        edges = [(0, 1, 1.0)]
    return build_graph(n, edges)


def degree_capped_graph(rng, cap=8, max_vertices=40):
    """Simple graph in which no vertex exceeds the degree cap."""
    n = int(rng.integers(4, max_vertices + 1))
    degree = np.zeros(n, dtype=int)
    seen = set()
    edges = []
    for _ in range(3 * n):
        i, j = sorted(rng.integers(0, n, 2).tolist())
        if i == j or (i, j) in seen or degree[i] >= cap or degree[j] >= cap:
            continue
        seen.add((i, j))
        degree[i] += 1
        degree[j] += 1
        edges.append((i, j, float(rng.choice(DYADIC_WEIGHTS))))
    if not edges:
        edges = [(0, 1, 1.0)]
    return build_graph(n, edges)


def planted_partition_graph(rng, communities=10, size=50, p_in=0.3, p_out=0.01):
    """Stochastic block model with equal-size communities, unit weights."""
    n = communities * size
    member = np.repeat(np.arange(communities), size)
    same = member[:, None] == member[None, :]
    prob = np.where(same, p_in, p_out)
    hit = rng.random((n, n)) < prob
    hit &= np.triu(np.ones((n, n), dtype=bool), k=1)
    src, dst = np.nonzero(hit)
    return build_graph(n, list(zip(src.tolist(), dst.tolist())))


# ----------------------------------------------------------------- oracles

def brute_force_candidate(g, labels, i):
    """Highest-total-weight neighbor label, ties to the smaller label,
    current label when i has no neighbors besides itself."""
    tally = defaultdict(float)
    for t in range(g.offsets[i], g.offsets[i + 1]):
        j = int(g.targets[t])
        if j != i:
            tally[int(labels[j])] += float(g.weights[t])
    if not tally:
        return int(labels[i])
    return min(tally, key=lambda c: (-tally[c], c))


def dense_modularity(g, labels):
    """Modularity from the dense adjacency matrix, pairwise over all
    ordered vertex pairs. Independent of the aggregate-form code path."""
    n = g.num_vertices
    a = np.zeros((n, n), dtype=np.float64)
    for i in range(n):
        for t in range(g.offsets[i], g.offsets[i + 1]):
            a[i, int(g.targets[t])] += float(g.weights[t])
    two_m = a.sum()
    k = a.sum(axis=1)
    same = np.asarray(labels)[:, None] == np.asarray(labels)[None, :]
    return float(((a - np.outer(k, k) / two_m) * same).sum() / two_m)


def exact_stream_weights(stream):
    totals = defaultdict(float)
    for key, w in stream:
        totals[key] += w
    return totals


def run_checked(g, cfg, order=None):
    """lpa_run plus the symmetry-breaking invariant: during an iteration
    with index divisible by the gap, no vertex label may increase.
    Returns (result, violation_count)."""
    from sketchlpa import lpa_run

    state = {"prev": np.arange(g.num_vertices, dtype=np.int64), "violations": 0}

    def hook(iteration, pickless, labels):
        if pickless != ((iteration % cfg.pickless_gap) == 0):
            state["violations"] += 1
        if pickless and np.any(labels > state["prev"]):
            state["violations"] += 1
        state["prev"] = labels.copy()

    result = lpa_run(g, cfg, order=order, iteration_hook=hook)
    return result, state["violations"]


# ---------------------------------------------------------------- fixtures

@pytest.fixture
def triangle():
    return triangle_graph()


@pytest.fixture
def two_cliques():
    return two_cliques_graph()


@pytest.fixture
def barbell():
    return barbell_graph()
