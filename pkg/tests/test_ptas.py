import math

import pytest

from parendist.core import paren, pivot_candidates, reduce_dyck
from parendist.exact import exact_dyck_cubic, exact_dyck_pivots
from parendist.ptas import PtasParams, ad_root, ad_table, dyck_ptas, nu, ptas_tau
from parendist.testkit import gen_balanced, planted, random_string


def test_nu():
    assert nu(0) == math.inf
    assert [nu(r) for r in (1, 2, 3, 4, 12, 96)] == [0, 1, 0, 2, 2, 5]


def test_params():
    with pytest.raises(ValueError):
        PtasParams(1)
    assert PtasParams(3).tau_ij(4, 12) == 12
    assert ptas_tau(0, 0.5) == 2 and ptas_tau(1, 0.5) == 2
    assert ptas_tau(16, 1.0) == 192


def test_ad_base_cases():
    x = reduce_dyck(random_string(30, 2, 2))
    A = ad_table(x, 2)
    for i in range(len(x)):
        assert A[i, i] == 0 and A[i, i + 1] == 1
    with pytest.raises(ValueError):
        ad_root(x, 1)


def test_examples():
    assert dyck_ptas(paren("()"), 0.5) == 0
    assert dyck_ptas(paren(")("), 0.5) == 2
    assert ad_root(reduce_dyck(gen_balanced(20, 3, 1)), 2) == 0
    for eps in (0, 1.5, -1):
        with pytest.raises(ValueError):
            dyck_ptas(paren("()"), eps)


def test_full_tau_is_exact(rng):
    for seed in range(100):
        x = reduce_dyck(random_string(int(rng.integers(1, 80)), 2, seed))
        tau = max(2, len(pivot_candidates(x)))
        assert ad_root(x, tau) == exact_dyck_cubic(x)[0]


def test_additive_error_bound(rng):
    for seed in range(60):
        x = reduce_dyck(random_string(int(rng.integers(10, 120)), 2, seed))
        c = len(pivot_candidates(x))
        d = exact_dyck_pivots(x)
        for tau in (2, 3, 5):
            v = ad_root(x, tau)
            assert d <= v <= d + (8 / tau) * c * math.log2(max(c, 2))


def test_ratio(rng):
    for seed in range(60):
        pi = planted(int(rng.integers(5, 400)), 2, int(rng.integers(0, 21)), seed)
        d = exact_dyck_pivots(pi.x)
        for eps in (0.1, 0.5, 1.0):
            v = dyck_ptas(pi.x, eps)
            assert d <= v <= (1 + eps) * d


def test_repeatable():
    x = random_string(300, 2, 5)
    assert dyck_ptas(x, 0.3) == dyck_ptas(x, 0.3)
