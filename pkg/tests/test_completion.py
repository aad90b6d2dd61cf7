import pytest

from kassign.completion import GapRecord, NotAdjacent, complete_sequence, decompose, fill_in
from kassign.gk import GKResult, SingularValue, run
from kassign.instance import generate
from kassign.maxplus import NEG_INF as N, TermClass
from kassign.oracle import brute_force_omegas
from kassign.ssp import audit_matchings, solve_sequence
from kassign.validation import matching_weight

from conftest import EXAMPLE1, EXAMPLE1_OMEGAS


def test_decompose_golden():
    dec = decompose({(1, 0)}, {(1, 0), (0, 1), (2, 2)}, EXAMPLE1)
    assert dec.shared == {(1, 0)}
    assert dec.augmenting_fwd == [((0, 1),), ((2, 2),)]
    assert dec.gains == [8, 5]
    assert dec.augmenting_bwd == [] and dec.alternating_even == []


def test_decompose_identical_and_empty():
    m = {(0, 1), (1, 0)}
    dec = decompose(m, m)
    assert dec.shared == m and not dec.augmenting_fwd and not dec.alternating_even
    dec = decompose(set(), {(0, 0), (1, 1)}, [[0, 0], [0, 0]])
    assert dec.augmenting_fwd == [((0, 0),), ((1, 1),)] and dec.gains == [0, 0]


def test_decompose_all_component_types():
    a = {(0, 0), (1, 1), (3, 3), (5, 6)}
    b = {(0, 1), (1, 0), (2, 3), (3, 4), (5, 5)}
    dec = decompose(a, b)
    # 0-1 rows form a closed cycle, rows 2-3 a path augmenting a,
    # the row-5 pair an even path
    assert len(dec.augmenting_fwd) == 1
    assert set(dec.augmenting_fwd[0]) == {(2, 3), (3, 3), (3, 4)}
    assert dec.augmenting_fwd[0][0] == (2, 3)
    assert sorted(len(p) for p in dec.alternating_even) == [2, 4]
    assert dec.augmenting_bwd == []
    dec = decompose(b, a)
    assert len(dec.augmenting_bwd) == 1 and dec.augmenting_bwd[0][0][0] == 2


def test_decompose_covers_union_disjointly():
    a = {(0, 2), (1, 0), (4, 4)}
    b = {(0, 0), (1, 1), (2, 2), (3, 4), (4, 3)}
    dec = decompose(a, b)
    parts = [dec.shared] + [set(p) for p in dec.alternating_even + dec.augmenting_fwd + dec.augmenting_bwd]
    union = set().union(*parts)
    assert union == a | b
    assert sum(len(p) for p in parts) == len(union)
    assert len(dec.augmenting_fwd) - len(dec.augmenting_bwd) == len(b) - len(a)


def test_fill_in_golden():
    assert fill_in([[0, 0], [0, 0]], set(), {(0, 0), (1, 1)}) == [frozenset({(0, 0)})]
    out = fill_in([[2, 2], [2, 2]], set(), {(0, 1), (1, 0)})
    assert len(out) == 1 and matching_weight(((2, 2), (2, 2)), out[0]) == 2


def test_fill_in_records_gains():
    log = []
    fill_in([[3, 3, 3]] * 3, set(), {(0, 2), (1, 1), (2, 0)}, record=log)
    assert log == [GapRecord(0, 3, 9, (3, 3, 3))]


def test_fill_in_orders_by_gain_then_row():
    # equal gains, so the path with the smallest free row goes first
    out = fill_in([[1, 1, 1]] * 3, set(), {(2, 0), (0, 2), (1, 1)})
    assert out == [frozenset({(0, 2)}), frozenset({(0, 2), (1, 1)})]


def test_fill_in_rejects_non_adjacent_terms():
    with pytest.raises(NotAdjacent):
        fill_in(EXAMPLE1, set(), {(1, 0), (0, 1), (2, 2)})
    with pytest.raises(NotAdjacent):
        fill_in([[N, 0], [0, 0]], set(), {(0, 0), (1, 1)})
    with pytest.raises(ValueError):
        fill_in(EXAMPLE1, {(0, 0)}, {(1, 1)})


def test_complete_example1_is_passthrough():
    seq = complete_sequence(EXAMPLE1, run(EXAMPLE1))
    assert seq.omegas == EXAMPLE1_OMEGAS and seq.gaps == [] and seq.source == "gk-fill"


def test_complete_from_single_top_report():
    n = 6
    W = [[0] * n for _ in range(n)]
    gk = GKResult(n, {n: (0, frozenset((i, i) for i in range(n)))}, [SingularValue(0, n)])
    seq = complete_sequence(W, gk)
    assert seq.omegas == [0] * (n + 1)
    assert [len(m) for m in seq.matchings] == list(range(n + 1))
    assert seq.term_class[0] == TermClass.ESSENTIAL
    assert all(c == TermClass.SEMI_ESSENTIAL for c in seq.term_class[1:n])
    assert seq.gaps == [GapRecord(0, n, 0, (0,) * n)]


def test_complete_trailing_infeasible():
    W = [[1, N, N], [2, N, N], [N, 5, N]]
    seq = complete_sequence(W, run(W))
    assert seq.omegas == [0, 5, 7, N]
    assert seq.matchings[3] is None


def test_complete_rejects_foreign_result():
    with pytest.raises(ValueError):
        complete_sequence([[1]], run(EXAMPLE1))


@pytest.mark.parametrize("seed", range(200))
def test_complete_agrees_with_oracle(seed):
    n = 1 + seed % 6
    W = generate(n, 0, 3, 0.1, seed) if seed % 2 else generate(n, -5, 5, 0.2, seed)
    seq = complete_sequence(W, run(W))
    assert seq.omegas == brute_force_omegas(W)
    audit_matchings(W, seq)


@pytest.mark.parametrize("seed", range(15))
def test_complete_agrees_with_successive_paths(seed):
    n = 10 + 2 * seed
    W = generate(n, 0, 3, 0.05, seed)
    seq = complete_sequence(W, run(W))
    audit_matchings(W, seq)
    assert seq.omegas == solve_sequence(W, want_matchings=False).omegas
    for g in seq.gaps:
        assert len(set(g.gains)) == 1 and g.gains[0] * g.d == g.total
