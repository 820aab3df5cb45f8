"""Modularity and community-statistics tests.

The independent oracle is `dense_modularity` in conftest, which scores a
labeling from the dense adjacency matrix over all ordered vertex pairs.
"""

import numpy as np
import pytest

from sketchlpa import build_graph, community_stats, modularity

from conftest import dense_modularity, random_graph, triangle_graph


class TestModularityFixtures:
    def test_triangle_single_community_is_exactly_zero(self, triangle):
        assert modularity(triangle, np.zeros(3, dtype=np.int32)) == 0.0

    def test_triangle_singletons(self, triangle):
        q = modularity(triangle, np.arange(3, dtype=np.int32))
        assert q == pytest.approx(-1.0 / 3.0, abs=1e-15)

    def test_two_disjoint_triangles_split(self):
        edges = [(0, 1), (1, 2), (0, 2), (3, 4), (4, 5), (3, 5)]
        g = build_graph(6, edges)
        labels = np.array([0, 0, 0, 3, 3, 3], dtype=np.int32)
        assert modularity(g, labels) == 0.5

    def test_all_in_one_is_exactly_zero_on_random_graphs(self):
        rng = np.random.default_rng(301)
        for _ in range(50):
            g = random_graph(rng)
            labels = np.zeros(g.num_vertices, dtype=np.int32)
            assert modularity(g, labels) == 0.0

    def test_no_edges_rejected(self):
        g = build_graph(3, [])
        with pytest.raises(ValueError):
            modularity(g, np.zeros(3, dtype=np.int32))


class TestModularityProperties:
    def test_matches_dense_pairwise_oracle(self):
        rng = np.random.default_rng(302)
        for _ in range(50):
            g = random_graph(rng, max_vertices=40)
            labels = rng.integers(0, g.num_vertices, g.num_vertices)
            labels = labels.astype(np.int32)
            assert modularity(g, labels) == pytest.approx(
                dense_modularity(g, labels), abs=1e-9)

    def test_invariant_under_label_renaming(self):
        rng = np.random.default_rng(303)
        for _ in range(30):
            g = random_graph(rng, max_vertices=30)
            n = g.num_vertices
            labels = rng.integers(0, n, n).astype(np.int32)
            perm = rng.permutation(n).astype(np.int32)
            assert modularity(g, perm[labels]) == pytest.approx(
                modularity(g, labels), abs=1e-12)

    def test_never_exceeds_one(self):
        rng = np.random.default_rng(304)
        for _ in range(30):
            g = random_graph(rng, max_vertices=30)
            labels = rng.integers(0, g.num_vertices, g.num_vertices)
            assert modularity(g, labels.astype(np.int32)) <= 1.0


class TestCommunityStats:
    def test_barbell_two_blocks(self, barbell):
        labels = np.array([0, 0, 0, 0, 4, 4, 4, 4], dtype=np.int32)
        stats = community_stats(barbell, labels)
        assert stats.num_communities == 2
        assert stats.sizes[0] == 4 and stats.sizes[4] == 4
        assert stats.internal_weight[0] == 12.0
        assert stats.incident_weight[0] == 13.0
        assert stats.incident_weight[4] == 13.0

    def test_sizes_sum_to_vertex_count(self):
        rng = np.random.default_rng(305)
        for _ in range(30):
            g = random_graph(rng, max_vertices=30)
            labels = rng.integers(0, g.num_vertices, g.num_vertices)
            stats = community_stats(g, labels.astype(np.int32))
            assert stats.sizes.sum() == g.num_vertices
            assert stats.num_communities == len(np.unique(labels))

    def test_incident_weight_sums_to_arc_total(self):
        rng = np.random.default_rng(306)
        for _ in range(30):
            g = random_graph(rng, max_vertices=30)
            labels = rng.integers(0, g.num_vertices, g.num_vertices)
            stats = community_stats(g, labels.astype(np.int32))
            assert stats.incident_weight.sum() == pytest.approx(
                2.0 * g.total_weight(), rel=1e-12)

    def test_label_validation(self, triangle):
        with pytest.raises(ValueError):
            community_stats(triangle, np.zeros(2, dtype=np.int32))
        with pytest.raises(ValueError):
            community_stats(triangle, np.array([0, 1, 3], dtype=np.int32))
        with pytest.raises(ValueError):
            community_stats(triangle, np.array([0, 1, -1], dtype=np.int32))
