import pytest

from kassign.completion import decompose
from kassign.instance import generate
from kassign.maxplus import NEG_INF as N, SizeBound, is_fcf
from kassign.oracle import all_witnesses, brute_force_fullchar, brute_force_k, brute_force_omegas

from conftest import EXAMPLE1


def test_brute_force_golden():
    assert brute_force_k(EXAMPLE1, 2) == (18, frozenset({(1, 0), (0, 1)}))
    assert brute_force_k(EXAMPLE1, 1) == (10, frozenset({(1, 0)}))
    assert brute_force_k(EXAMPLE1, 0) == (0, frozenset())


def test_fullchar_golden():
    assert brute_force_fullchar(EXAMPLE1).descending() == (0, 10, 18, 23, 23)
    assert brute_force_fullchar([[N]]).descending() == (0, N)
    assert brute_force_fullchar([[0, 0], [0, 0]]).descending() == (0, 0, 0)


def test_bounds_and_range():
    with pytest.raises(SizeBound):
        brute_force_k([[0] * 4] * 4, 2, bound=3)
    with pytest.raises(ValueError):
        brute_force_k(EXAMPLE1, 5)


def test_first_found_witness():
    # both 1-matchings of weight 0 tie; rows then columns are enumerated lexicographically
    assert brute_force_k([[0, 0], [0, 0]], 1)[1] == frozenset({(0, 0)})


@pytest.mark.parametrize("seed", range(60))
def test_fullchar_is_fcf_and_concave(seed):
    W = generate(1 + seed % 7, -6, 6, 0.25, seed)
    p = brute_force_fullchar(W)
    assert is_fcf(p)
    om = brute_force_omegas(W)
    gains = [om[k] - om[k - 1] for k in range(1, len(om)) if om[k] != N]
    assert all(a >= b for a, b in zip(gains, gains[1:]))
    # infeasibility only grows with k
    first_inf = next((k for k, w in enumerate(om) if w == N), len(om))
    assert all(w == N for w in om[first_inf:])


def _is_single_augmenting_path(small, big):
    dec = decompose(small, big)
    return len(dec.augmenting_fwd) == 1 and not dec.augmenting_bwd and not dec.alternating_even


@pytest.mark.parametrize("seed", range(40))
def test_nested_witnesses_exist(seed):
    n = 1 + seed % 5
    W = generate(n, -3, 3, 0.2, seed)
    om = brute_force_omegas(W)
    for k in range(n):
        if om[k + 1] == N:
            break
        small = all_witnesses(W, k)
        big = all_witnesses(W, k + 1)
        assert any(_is_single_augmenting_path(a, b) for a in small for b in big)
