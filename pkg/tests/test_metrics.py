import math
import random

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from chess_tension.board import parse_fen, startpos
from chess_tension.metrics import (
    ContractViolation,
    PIECE_VALUES,
    compute_ply_metrics,
    loop_count,
    spectral_radius,
    strength_bounds,
)
from chess_tension.tension import Edge, LinkKind, TensionGraph, build_tension_network

from conftest import random_playout
from oracles import charpoly_spectral_radius


def random_symmetric(rng: random.Random, n: int) -> np.ndarray:
    mat = np.zeros((n, n), dtype=np.int64)
    for i in range(n):
        for j in range(i + 1, n):
            mat[i, j] = mat[j, i] = rng.choice((0, 0, 1, 2))
    return mat


def graph_from_pairs(pairs, weight=1, kind=LinkKind.ATTACK) -> TensionGraph:
    edges = tuple(Edge(min(a, b), max(a, b), weight, kind, a) for a, b in pairs)
    return TensionGraph(
        position=startpos(),
        edges=edges,
        attack_directed=frozenset(),
        defense_directed=frozenset(),
        control_directed=frozenset(),
    )


class TestSpectralRadius:
    def test_two_node_weight_two(self):
        mat = np.array([[0, 2], [2, 0]])
        assert spectral_radius(mat) == pytest.approx(2.0, abs=1e-12)

    def test_complete_64_node_weight_two_ceiling(self):
        mat = 2 * (np.ones((64, 64), dtype=np.int64) - np.eye(64, dtype=np.int64))
        assert spectral_radius(mat) == pytest.approx(126.0, abs=1e-9)

    def test_triangle(self):
        mat = np.array([[0, 1, 1], [1, 0, 1], [1, 1, 0]])
        assert spectral_radius(mat) == pytest.approx(2.0, abs=1e-12)

    def test_zero_matrix(self):
        assert spectral_radius(np.zeros((64, 64))) == 0.0

    def test_contract_violations(self):
        with pytest.raises(ContractViolation):
            spectral_radius(np.array([[0, 1], [0, 0]]))
        with pytest.raises(ContractViolation):
            spectral_radius(np.array([[0, -1], [-1, 0]]))
        with pytest.raises(ContractViolation):
            spectral_radius(np.zeros((3, 4)))

    @settings(max_examples=20, deadline=None)
    @given(st.integers(0, 2**32))
    def test_matches_characteristic_polynomial_oracle(self, seed):
        mat = random_symmetric(random.Random(seed), 8)
        assert spectral_radius(mat) == pytest.approx(charpoly_spectral_radius(mat), abs=1e-8)

    @settings(max_examples=20, deadline=None)
    @given(st.integers(0, 2**32))
    def test_scaling_by_two(self, seed):
        mat = random_symmetric(random.Random(seed), 10)
        assert spectral_radius(2 * mat) == pytest.approx(2 * spectral_radius(mat), abs=1e-9)

    @settings(max_examples=20, deadline=None)
    @given(st.integers(0, 2**32))
    def test_adding_an_edge_never_decreases(self, seed):
        rng = random.Random(seed)
        mat = random_symmetric(rng, 10)
        before = spectral_radius(mat)
        zeros = [(i, j) for i in range(10) for j in range(i + 1, 10) if mat[i, j] == 0]
        if not zeros:
            return
        i, j = rng.choice(zeros)
        mat[i, j] = mat[j, i] = rng.choice((1, 2))
        assert spectral_radius(mat) >= before - 1e-9

    @settings(max_examples=20, deadline=None)
    @given(st.integers(0, 2**32))
    def test_disconnected_graph_is_max_over_components(self, seed):
        rng = random.Random(seed)
        a = random_symmetric(rng, 5)
        b = random_symmetric(rng, 7)
        full = np.zeros((12, 12), dtype=np.int64)
        full[:5, :5] = a
        full[5:, 5:] = b
        assert spectral_radius(full) == pytest.approx(
            max(spectral_radius(a), spectral_radius(b)), abs=1e-9
        )


class TestLoopCount:
    def test_tree_has_no_loops(self):
        g = graph_from_pairs([(0, 1), (1, 2), (2, 3), (3, 4), (2, 5)])
        assert loop_count(g) == 0

    def test_triangle_has_one(self):
        g = graph_from_pairs([(0, 1), (1, 2), (2, 0)])
        assert loop_count(g) == 1

    def test_two_disjoint_triangles(self):
        g = graph_from_pairs([(0, 1), (1, 2), (2, 0), (10, 11), (11, 12), (12, 10)])
        assert loop_count(g) == 2

    @settings(max_examples=20, deadline=None)
    @given(st.integers(0, 2**32), st.integers(10, 140))
    def test_matches_networkx(self, seed, plies):
        import networkx as nx

        pos = random_playout(random.Random(seed), plies)
        g = build_tension_network(pos)
        nxg = nx.Graph((e.a, e.b) for e in g.edges)
        expected = nxg.number_of_edges() - nxg.number_of_nodes() + nx.number_connected_components(nxg)
        assert loop_count(g) == expected


class TestPlyMetrics:
    def test_start_position_row(self):
        pos = startpos()
        m = compute_ply_metrics(build_tension_network(pos), pos, 1)
        assert m.tension == 0.0
        assert m.n_pieces == 32
        assert m.material == 78
        assert m.n_links_attack == m.n_links_defense == m.n_links_control == 0
        assert m.n_loops == 0
        assert m.noise_coeff == 0.0
        assert math.isnan(m.entropy)

    def test_pawn_standoff_row(self):
        pos = parse_fen("k7/8/8/3p4/4P3/8/8/7K w - - 0 1")
        m = compute_ply_metrics(build_tension_network(pos), pos, 7)
        assert m.ply == 7
        assert m.n_pieces == 4
        assert m.material == 2
        assert m.n_links_attack == 1
        assert m.adb_weighted == 2
        assert m.adb_count == 1
        assert m.tension == pytest.approx(2.0, abs=1e-12)
        assert m.n_loops == 0
        assert m.entropy == pytest.approx(math.log(2.0))

    def test_triangle_of_pieces_one_loop(self):
        # Nc3 defends the e4 pawn against d5xe4, attacks d5 itself, and d5
        # attacks e4: a three-piece interaction cycle.
        pos = parse_fen("k7/8/8/3p4/4P3/2N5/8/6K1 w - - 0 1")
        g = build_tension_network(pos)
        m = compute_ply_metrics(g, pos, 1)
        assert m.n_loops >= 1

    def test_tension_per_piece_and_entropy(self, rng):
        for _ in range(6):
            pos = random_playout(rng, rng.randrange(20, 120))
            g = build_tension_network(pos)
            m = compute_ply_metrics(g, pos, 1)
            assert m.tension_per_piece == pytest.approx(m.tension / m.n_pieces)
            if m.tension > 0:
                assert m.entropy == pytest.approx(math.log(m.tension))

    @settings(max_examples=40, deadline=None)
    @given(st.integers(0, 2**32), st.integers(0, 150))
    def test_strength_bounds_hold(self, seed, plies):
        pos = random_playout(random.Random(seed), plies)
        g = build_tension_network(pos)
        mean_s, max_s = strength_bounds(g)
        t = spectral_radius(g.adjacency)
        assert mean_s - 1e-9 <= t <= max_s + 1e-9
        assert (t == 0.0) == (len(g.edges) == 0)

    def test_material_values(self):
        assert PIECE_VALUES == {1: 1, 2: 3, 3: 3, 4: 5, 5: 9, 6: 0}
