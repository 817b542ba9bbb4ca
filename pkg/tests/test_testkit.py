import pytest

from parendist.core import Alignment, Window, alignment_cost, is_consistent_decomposition, paren
from parendist.exact import exact_dyck_cubic, exact_dyck_pivots, exact_fold
from parendist.testkit import (brute_force_dyck, brute_force_fold, cap_decomposition, cap_window, decompose_pm,
                               gen_balanced, gen_deep_balanced, perturb, planted, random_string,
                               restricted_cost)


def test_brute_force_examples():
    assert brute_force_dyck(paren("")) == 0
    assert brute_force_dyck(paren(")(")) == 2
    assert brute_force_dyck(paren("([)[(]](]))")) == 3
    assert brute_force_fold(paren(")(")) == 0
    assert brute_force_fold(paren("((")) == 2
    assert brute_force_fold(paren("([)]")) == 2
    with pytest.raises(ValueError):
        brute_force_dyck(random_string(13, 1, 0))


def test_generators():
    assert len(gen_balanced(0, 1, 5)) == 0
    assert gen_balanced(1, 1, 5) == paren("()")
    for seed in range(20):
        x = gen_balanced(30, 3, seed)
        assert len(x) == 60 and exact_dyck_pivots(x) == 0
        assert exact_dyck_pivots(gen_deep_balanced(30, 2, seed)) == 0
    assert gen_balanced(40, 2, 9) == gen_balanced(40, 2, 9)
    assert random_string(40, 2, 9) == random_string(40, 2, 9)


def test_perturb():
    x = gen_balanced(20, 2, 1)
    assert perturb(x, 0, 3) == x
    with pytest.raises(ValueError):
        perturb(x, -1, 0)
    for seed in range(40):
        pi = planted(40, 2, seed % 9, seed)
        assert exact_dyck_pivots(pi.x) <= pi.planted_distance_bound


def test_pm_small_interval_is_one_split():
    x = random_string(8, 2, 0)
    S = decompose_pm(x, Alignment(), 2)
    assert S == [(Window(1, 4), Window(5, 8))]


def test_pm_balanced_nesting():
    x = paren("(" * 64 + ")" * 64)
    M = Alignment(tuple((i, 129 - i) for i in range(1, 65)))
    trace = []
    S = decompose_pm(x, M, 16, trace)
    assert is_consistent_decomposition(S, 128)
    assert len(S) <= 2 * 128 // 16
    assert sum(restricted_cost(x, M, w, w2) for w, w2 in S) == 0


def test_cap_window():
    assert cap_window(Window(5, 8), 4) == Window(5, 8)
    assert cap_window(Window(6, 7), 4).is_empty
    assert cap_window(Window(2, 6), 4) == Window(5, 8)
    with pytest.raises(ValueError):
        cap_decomposition([], 0.3, 5)


def test_pm_decomposition_claims(rng):
    for seed in range(40):
        n = 64
        x = planted(n // 2, 2, int(rng.integers(0, 12)), seed).x
        _, M = exact_dyck_cubic(x)
        m = len(x)
        for s1 in (4, 8):
            S = decompose_pm(x, M, s1)
            assert all(len(w) <= 4 * s1 and len(w2) <= 4 * s1 for w, w2 in S)
            assert is_consistent_decomposition(S, m)
            assert alignment_cost(x, M) >= sum(restricted_cost(x, M, w, w2) for w, w2 in S)


def test_fold_brute_matches_exact(rng):
    for seed in range(80):
        x = random_string(int(rng.integers(0, 11)), 2, seed)
        assert brute_force_fold(x) == exact_fold(x)
