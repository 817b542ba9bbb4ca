import numpy as np
import pytest

from parendist.core import ParenString, paren, reduce_fold
from parendist.exact import (CapExceeded, dyck_table, exact_cap, exact_dyck_cubic, exact_dyck_pivots,
                             exact_fold, exact_fold_rho, exact_gd, gd_table)
from parendist.testkit import brute_force_dyck, random_string

FIG2_EXACT = 3  # brute-force value, frozen
TRIPLE_OPEN = 2  # "(((": one substitution and one deletion, brute-force value


@pytest.mark.parametrize("text,value", [("", 0), ("()", 0), (")(", 2), ("(((", TRIPLE_OPEN), ("([)[(]](]))", FIG2_EXACT)])
def test_dyck_examples(text, value):
    x = paren(text)
    assert brute_force_dyck(x) == value
    assert exact_dyck_cubic(x)[0] == value
    assert exact_dyck_pivots(x) == value


def test_table_invariants():
    x = random_string(24, 2, 7)
    D = dyck_table(x)
    n = len(x)
    for i in range(n + 1):
        assert D[i, i] == 0
        if i < n:
            assert D[i, i + 1] == 1
        for j in range(i, n + 1):
            assert D[i, j] <= j - i
            for k in range(i, j + 1):
                assert D[i, j] <= D[i, k] + D[k, j]


def test_cubic_vs_pivots(rng):
    for seed in range(300):
        x = random_string(int(rng.integers(0, 61)), int(rng.integers(1, 4)), seed)
        assert exact_dyck_cubic(x)[0] == exact_dyck_pivots(x)


def test_caps(monkeypatch):
    x = random_string(10, 1, 0)
    with pytest.raises(CapExceeded):
        exact_dyck_cubic(x, cap=9)
    monkeypatch.setenv("PARENDIST_EXACT_CAP", "8")
    assert exact_cap() == 8
    with pytest.raises(CapExceeded):
        exact_fold(x)
    with pytest.raises(CapExceeded):
        exact_gd(x)
    monkeypatch.setenv("PARENDIST_EXACT_CAP", "many")
    with pytest.raises(ValueError):
        exact_cap()


def test_gd_examples():
    assert exact_gd(paren("()")) == 0
    assert exact_gd(paren(")(")) == 2


def test_gd_sandwich(rng):
    for seed in range(150):
        x = random_string(int(rng.integers(1, 41)), 2, seed)
        h = x.heights()
        d = exact_dyck_cubic(x)[0]
        g = exact_gd(x)
        assert d <= g <= 3 * d - h[0] - h[-1] + 2 * h.min()


def test_gd_flat_split(rng):
    # when the interior does not dip below the ends' minimum, any lowest point splits GD exactly
    for seed in range(40):
        x = random_string(int(rng.integers(2, 25)), 2, seed)
        G = gd_table(x)
        h = x.heights()
        n = len(x)
        for i in range(n + 1):
            for j in range(i + 2, n + 1):
                low = h[i:j + 1].min()
                if h[i + 1:j].min() != low:
                    continue
                for k in range(i + 1, j):
                    if h[k] == low:
                        assert G[i, j] == G[i, k] + G[k, j]


def test_fold_rho_examples():
    assert exact_fold_rho(paren(")("), 0) == 0
    assert exact_fold_rho(paren("(("), 0) == 2
    assert exact_fold_rho(paren("()"), 1) == 1


def test_fold_examples():
    A = lambda *s: ParenString(list(s))
    assert exact_fold(A(1, -1)) == 0
    assert exact_fold(A(1, 1, -1)) == 1
    assert exact_fold(A(1, 2, -1, -2)) == 2


def test_fold_parity(rng):
    for seed in range(100):
        x = random_string(int(rng.integers(0, 40)), 2, seed)
        assert exact_fold(x) % 2 == len(x) % 2


def test_fold_rho_sandwich(rng):
    done = 0
    for seed in range(200):
        x = reduce_fold(random_string(int(rng.integers(1, 41)), 2, seed))
        if len(x) == 0:
            continue
        f = exact_fold(x)
        for rho in (1, 2, 3):
            v = exact_fold_rho(x, rho)
            assert f <= v <= (1 + 2 * rho) * f - rho
        done += 1
    assert done > 100


def test_rho_zero_is_fold():
    x = random_string(30, 3, 1)
    assert exact_fold_rho(x, 0) == exact_fold(x)
    with pytest.raises(ValueError):
        exact_fold_rho(x, -1)


def test_alignment_backtrack_is_deterministic():
    x = random_string(40, 2, 11)
    assert exact_dyck_cubic(x)[1] == exact_dyck_cubic(x)[1]
    assert isinstance(dyck_table(x), np.ndarray)
