from itertools import permutations

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from tests.helpers import tournament_and_perm, tournaments
from tourninv.errors import CapacityError, FormatError, InputError
from tourninv.oracles import brute_inv2
from tourninv.rng import SplitMix64
from tourninv.tournament import (
    BlowupSpec,
    LeftGraph,
    Permutation,
    Tournament,
    balanced_blowup,
    backward_edges,
    dumps,
    has_directed_triangle,
    invert,
    invert_all,
    is_acyclic,
    left_graph,
    loads,
    min_feedback_edges,
    num_pairs,
    pair_index,
    parse,
    random_tournament,
    right_graph,
    serialize,
    tournament_from_bits,
)

CYCLE = Tournament.cycle3()


def edge_set(t):
    return set(t.edges())


def test_decode_transitive():
    t = tournament_from_bits(3, "110")
    assert edge_set(t) == {(0, 1), (0, 2), (2, 1)}
    assert is_acyclic(t)


def test_decode_cycle():
    t = tournament_from_bits(3, "101")
    assert edge_set(t) == {(0, 1), (2, 0), (1, 2)}
    assert t == CYCLE


def test_decode_length_mismatch():
    with pytest.raises(FormatError):
        tournament_from_bits(2, "101")


def test_decode_bad_symbol():
    with pytest.raises(FormatError):
        tournament_from_bits(3, "1x1")


def test_random_deterministic():
    assert random_tournament(12, 99) == random_tournament(12, 99)
    assert random_tournament(12, 99) != random_tournament(12, 100)


def test_random_single_vertex():
    assert list(random_tournament(1, 5).edges()) == []


def test_random_bit_balance():
    t = random_tournament(10000, 7)
    frac = t.bits.bit_count() / num_pairs(10000)
    assert abs(frac - 0.5) < 0.02


def test_invert_full_cycle():
    assert edge_set(invert(CYCLE, [0, 1, 2])) == {(1, 0), (2, 1), (0, 2)}


def test_invert_pair_flips_one_edge():
    t = random_tournament(7, 3)
    u = invert(t, [2, 5])
    assert t.bits ^ u.bits == 1 << pair_index(2, 5, 7)


def test_invert_out_of_range():
    with pytest.raises(InputError):
        invert(CYCLE, [0, 3])


def test_invert_involution_seeded():
    rng = SplitMix64(11)
    for r in range(200):
        n = 2 + rng.below(9)
        t = random_tournament(n, r)
        x = [v for v in range(n) if rng.below(2)]
        assert invert(invert(t, x), x) == t


@given(tournaments(min_n=2), st.data())
def test_invert_commutes(t, data):
    xs = data.draw(st.lists(st.integers(0, t.n - 1), unique=True))
    ys = data.draw(st.lists(st.integers(0, t.n - 1), unique=True))
    assert invert(invert(t, xs), ys) == invert(invert(t, ys), xs)
    assert invert_all(t, [xs, ys]) == invert(invert(t, xs), ys)


@given(tournaments(min_n=2), st.data())
def test_invert_touches_only_inside_pairs(t, data):
    xs = set(data.draw(st.lists(st.integers(0, t.n - 1), unique=True)))
    u = invert(t, xs)
    for i in range(t.n):
        for j in range(i + 1, t.n):
            flipped = t.beats(i, j) != u.beats(i, j)
            assert flipped == (i in xs and j in xs)


def test_left_graph_transitive_orders():
    order = [3, 0, 4, 1, 2]
    t = Tournament.transitive(5, order)
    assert left_graph(t, Permutation.from_order(order)).edge_set() == LeftGraph.complete(5).edge_set()
    assert left_graph(t, Permutation.from_order(order[::-1])).num_edges == 0


@given(tournament_and_perm())
def test_left_right_partition(tp):
    t, p = tp
    lg, rg = left_graph(t, p), right_graph(t, p)
    assert lg.num_edges + rg.num_edges == num_pairs(t.n)
    assert lg.pair_mask() & rg.pair_mask() == 0
    assert rg.edge_set() == left_graph(t, p.reversed()).edge_set()


@given(tournament_and_perm())
def test_left_graph_definition(tp):
    t, p = tp
    g = left_graph(t, p)
    for u, v in t.edges():
        assert g.has_edge(u, v) == (p[u] < p[v])


def test_acyclic_examples():
    assert is_acyclic(Tournament.transitive(6))
    assert not is_acyclic(CYCLE)


def test_acyclic_equivalences(small_tournaments):
    for t in small_tournaments:
        for perm in permutations(range(t.n)):
            u = t.relabel(perm)
            acyclic = is_acyclic(u)
            assert acyclic == (not has_directed_triangle(u))
            assert acyclic == (sorted(u.out_degrees()) == list(range(u.n)))
            assert acyclic == (min_feedback_edges(u)[0] == 0)


def test_min_feedback_examples():
    assert min_feedback_edges(Tournament.transitive(9))[0] == 0
    assert min_feedback_edges(CYCLE)[0] == 1


def test_min_feedback_matches_brute(small_tournaments):
    for t in small_tournaments:
        value, witness = min_feedback_edges(t)
        assert value == brute_inv2(t)
        assert backward_edges(t, witness) == value


@settings(max_examples=50)
@given(tournaments(min_n=2, max_n=7))
def test_min_feedback_witness_attains(t):
    value, witness = min_feedback_edges(t)
    assert backward_edges(t, witness) == value
    assert right_graph(t, witness).num_edges == value


def test_min_feedback_capacity():
    with pytest.raises(CapacityError):
        min_feedback_edges(random_tournament(21, 0))


def test_blowup_outer_edge_bound_exhaustive():
    b = balanced_blowup(BlowupSpec(CYCLE, 2, inner_seed=5))
    assert b.tournament.n == 6
    assert b.outer_edge_count == 12
    assert b.inner_edge_count == 3
    m = min_feedback_edges(CYCLE)[0]
    worst = min(b.outer_left_edges(Permutation(p)) for p in permutations(range(6)))
    assert worst >= m * 36 // 9


def test_blowup_part_size_one_is_seed():
    seed = random_tournament(5, 8)
    assert balanced_blowup(BlowupSpec(seed, 1, 3)).tournament == seed


@given(tournaments(min_n=1, max_n=6), st.integers(1, 4), st.integers(0, 2**64 - 1))
def test_blowup_structure(seed_t, s, inner_seed):
    b = balanced_blowup(BlowupSpec(seed_t, s, inner_seed))
    t = b.tournament
    assert t.n == seed_t.n * s
    for u, v in t.edges():
        if b.is_outer(u, v):
            assert seed_t.beats(b.part[u], b.part[v])
    # any transversal reproduces the seed
    assert t.subtournament([i * s + (i % s) for i in range(seed_t.n)]) == seed_t


def test_blowup_inner_seed_reproducible():
    spec = BlowupSpec(CYCLE, 4, 17)
    assert balanced_blowup(spec) == balanced_blowup(spec)


def test_blowup_bad_part_size():
    with pytest.raises(InputError):
        BlowupSpec(CYCLE, 0)


def test_serialize_cycle():
    assert serialize(CYCLE) == "3 101"


def test_serialize_round_trip_seeded():
    rng = SplitMix64(2024)
    for r in range(1000):
        t = random_tournament(1 + rng.below(12), r)
        assert parse(serialize(t)) == t


@given(st.lists(tournaments(max_n=8), max_size=5))
def test_dumps_loads(ts):
    assert loads(dumps(ts)) == ts


def test_parse_wrong_length():
    with pytest.raises(FormatError):
        parse("4 0101")


def test_loads_reports_line_number():
    with pytest.raises(FormatError, match="line 4"):
        loads("# header\n3 101\n\n4 0101\n")


def test_loads_skips_comments_and_blanks():
    assert loads("# c\n\n3 110\n  \n3 101\n") == [tournament_from_bits(3, "110"), CYCLE]
