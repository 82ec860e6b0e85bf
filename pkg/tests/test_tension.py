import random

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from chess_tension.board import (
    BLACK,
    KING,
    WHITE,
    apply_move,
    mirror_position,
    parse_fen,
    parse_square,
    square_name,
    startpos,
)
from chess_tension.notation import parse_san
from chess_tension.tension import (
    LinkKind,
    attack_links,
    build_tension_network,
    capture_legal_moves,
    control_links,
    defense_links,
)

from conftest import random_playout, random_sparse_position
from oracles import (
    oracle_attack_links,
    oracle_capture_moves,
    oracle_control_links,
    oracle_defense_links,
)


def play(sans: str):
    pos = startpos()
    for san in sans.split():
        pos = apply_move(pos, parse_san(pos, san))
    return pos


def link_names(links):
    return sorted(f"{square_name(a)}>{square_name(b)}" for a, b in links)


class TestCaptureLegalMoves:
    def test_start_has_no_captures_either_color(self):
        pos = startpos()
        assert capture_legal_moves(pos, WHITE) == []
        assert capture_legal_moves(pos, BLACK) == []

    def test_pawn_standoff_both_sides(self):
        pos = play("e4 d5")
        assert [m.uci() for m in capture_legal_moves(pos, WHITE)] == ["e4d5"]
        assert [m.uci() for m in capture_legal_moves(pos, BLACK)] == ["d5e4"]

    def test_pin_suppresses_captures(self):
        pos = parse_fen("k3r3/8/8/8/4N3/8/8/4K3 w - - 0 1")
        assert capture_legal_moves(pos, WHITE) == []
        assert [m.uci() for m in capture_legal_moves(pos, BLACK)] == ["e8e4"]

    def test_flipped_ep_rights_dropped(self):
        pos = parse_fen("4k3/8/8/8/2pP4/8/8/4K3 b - d3 0 1")
        # black owns the EP right
        assert any(m.is_en_passant for m in capture_legal_moves(pos, BLACK))
        assert capture_legal_moves(pos, WHITE) == []

    @settings(max_examples=30, deadline=None)
    @given(st.integers(0, 2**32))
    def test_matches_literal_enumeration(self, seed):
        pos = random_playout(random.Random(seed), seed % 80)
        for color in (WHITE, BLACK):
            got = capture_legal_moves(pos, color)
            assert sorted(got, key=lambda m: m.sort_key()) == sorted(
                oracle_capture_moves(pos, color), key=lambda m: m.sort_key()
            )


class TestLinkExamples:
    def test_start_position_all_empty(self):
        pos = startpos()
        assert attack_links(pos) == frozenset()
        assert defense_links(pos) == frozenset()
        assert control_links(pos) == frozenset()
        assert build_tension_network(pos).edges == ()

    def test_pawn_standoff_attacks(self):
        pos = parse_fen("k7/8/8/3p4/4P3/8/8/7K w - - 0 1")
        d5, e4 = parse_square("d5"), parse_square("e4")
        assert attack_links(pos) == frozenset({(e4, d5), (d5, e4)})

    def test_pin_position_attack_set(self):
        pos = parse_fen("k3r3/8/8/8/4N3/8/8/4K3 w - - 0 1")
        assert link_names(attack_links(pos)) == ["e8>e4"]

    def test_defense_after_e4_d5(self):
        pos = play("e4 d5")
        assert link_names(defense_links(pos)) == ["d8>d5"]

    def test_control_after_e4(self):
        # Oracle-derived full set.  Beyond the two pawn-advance squares it
        # includes Qd1/Bf1 controls: after ...h5/...b5/...Na6 the arriving
        # piece could be captured on that square (e.g. 1...h5 2.Qxh5).
        pos = play("e4")
        expected = {"e4>d5", "e4>f5", "d1>h5", "f1>b5", "f1>a6", "b7>a6", "b8>a6"}
        assert set(link_names(control_links(pos))) == expected
        assert link_names(control_links(pos)) == link_names(oracle_control_links(pos))

    def test_promotion_corner_case_matches_oracle(self):
        pos = parse_fen("k7/8/8/8/8/8/5p2/7K w - - 0 1")
        assert link_names(control_links(pos)) == link_names(oracle_control_links(pos))
        assert link_names(attack_links(pos)) == link_names(oracle_attack_links(pos))

    def test_mutual_defense_weight_two(self):
        # Both rooks attacked (Ra8 hits a1, Qb5 hits b1); each rook can
        # recapture on the other's square.
        pos = parse_fen("r6k/8/8/1q6/8/8/8/RR4K1 w - - 0 1")
        g = build_tension_network(pos)
        a1, b1 = parse_square("a1"), parse_square("b1")
        edge = next(e for e in g.edges if {e.a, e.b} == {a1, b1})
        assert edge.kind == LinkKind.DEFENSE and edge.weight == 2

    def test_checks_appear_as_king_attacks(self):
        pos = parse_fen("4k3/4R3/8/8/8/8/8/4K3 b - - 0 1")
        e7, e8 = parse_square("e7"), parse_square("e8")
        assert (e7, e8) in attack_links(pos)

    def test_pinned_checker_gives_no_check_link(self):
        # White bishop d5 gives "check" to a8 but is pinned by the d8 rook.
        pos = parse_fen("k2r4/8/8/3B4/8/8/8/3K4 b - - 0 1")
        d5, a8 = parse_square("d5"), parse_square("a8")
        assert (d5, a8) not in attack_links(pos)
        assert link_names(attack_links(pos)) == link_names(oracle_attack_links(pos))


class TestGraphStructure:
    def test_pawn_standoff_graph(self):
        pos = parse_fen("k7/8/8/3p4/4P3/8/8/7K w - - 0 1")
        g = build_tension_network(pos)
        assert len(g.edges) == 1
        e = g.edges[0]
        assert e.weight == 2 and e.kind == LinkKind.ATTACK
        adj = g.adjacency
        assert np.count_nonzero(adj) == 2  # exactly the two symmetric entries
        assert adj[e.a, e.b] == adj[e.b, e.a] == 2

    def test_e4_d5_graph_composition(self):
        pos = play("e4 d5")
        g = build_tension_network(pos)
        kinds = {(square_name(e.a), square_name(e.b), e.kind.value, e.weight) for e in g.edges}
        assert ("e4", "d5", "attack", 2) in kinds  # e4 is the lower square index
        assert ("d5", "d8", "defense", 1) in kinds

    def test_adjacency_symmetric_zero_diagonal(self, rng):
        for _ in range(5):
            pos = random_playout(rng, rng.randrange(100))
            adj = build_tension_network(pos).adjacency
            assert np.array_equal(adj, adj.T)
            assert not adj.diagonal().any()
            assert set(np.unique(adj)) <= {0, 1, 2}

    def test_kind_color_constraints(self, rng):
        for _ in range(8):
            pos = random_playout(rng, rng.randrange(120))
            g = build_tension_network(pos)
            board = pos.board
            for e in g.edges:
                ca, cb = board[e.a], board[e.b]
                if e.kind == LinkKind.ATTACK:
                    assert ca * cb < 0
                elif e.kind == LinkKind.DEFENSE:
                    assert ca * cb > 0
                else:
                    assert (ca == 0) != (cb == 0)

    def test_defense_never_targets_kings(self, rng):
        for _ in range(10):
            pos = random_playout(rng, rng.randrange(140))
            for _, target in defense_links(pos):
                assert abs(pos.board[target]) != KING

    def test_weight_two_iff_mutual(self, rng):
        for _ in range(8):
            pos = random_playout(rng, rng.randrange(120))
            g = build_tension_network(pos)
            for e in g.edges:
                if e.kind == LinkKind.CONTROL:
                    assert e.weight == 1
                    continue
                directed = g.attack_directed if e.kind == LinkKind.ATTACK else g.defense_directed
                mutual = (e.a, e.b) in directed and (e.b, e.a) in directed
                assert e.weight == (2 if mutual else 1)

    @settings(max_examples=25, deadline=None)
    @given(st.integers(0, 2**32), st.integers(0, 120))
    def test_mirror_symmetry(self, seed, plies):
        pos = random_playout(random.Random(seed), plies)
        mirrored = mirror_position(pos)
        att, dfn, ctl = attack_links(pos), defense_links(pos), control_links(pos)
        m_att, m_dfn, m_ctl = attack_links(mirrored), defense_links(mirrored), control_links(mirrored)
        flip = lambda links: frozenset((a ^ 56, b ^ 56) for a, b in links)
        assert flip(att) == m_att
        assert flip(dfn) == m_dfn
        assert flip(ctl) == m_ctl


class TestOracleEquivalence:
    """Implementation vs. literal-definition brute force on random positions."""

    @settings(max_examples=50, deadline=None)
    @given(st.integers(0, 2**32))
    def test_sparse_positions(self, seed):
        pos = random_sparse_position(random.Random(seed))
        assert attack_links(pos) == frozenset(oracle_attack_links(pos))
        assert defense_links(pos) == frozenset(oracle_defense_links(pos))
        assert control_links(pos) == frozenset(oracle_control_links(pos))

    @settings(max_examples=15, deadline=None)
    @given(st.integers(0, 2**32), st.integers(0, 60))
    def test_playout_positions(self, seed, plies):
        pos = random_playout(random.Random(seed), plies)
        assert attack_links(pos) == frozenset(oracle_attack_links(pos))
        assert defense_links(pos) == frozenset(oracle_defense_links(pos))
        assert control_links(pos) == frozenset(oracle_control_links(pos))

    def test_ep_position_equivalence(self):
        pos = parse_fen("4k3/8/8/8/2pP4/8/8/4K3 b - d3 0 1")
        assert attack_links(pos) == frozenset(oracle_attack_links(pos))
        assert defense_links(pos) == frozenset(oracle_defense_links(pos))
        assert control_links(pos) == frozenset(oracle_control_links(pos))
