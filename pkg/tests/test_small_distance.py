import math

import numpy as np
import pytest

from parendist.core import paren, pivot_candidates, reduce_dyck
from parendist.exact import exact_dyck_pivots, exact_gd
from parendist.ptas import ptas_tau
from parendist.small_distance import Exceeds, RmqIndex, agd_root, agd_run, dyck_small
from parendist.testkit import gen_balanced, planted, random_string


def test_rmq(rng):
    h = rng.integers(-5, 5, size=60)
    r = RmqIndex(h)
    for _ in range(300):
        i, j = sorted(int(v) for v in rng.integers(0, 60, 2))
        seg = h[i:j + 1]
        assert r.query(i, j) == (int(seg.min()), i + int(np.argmin(seg)))


def test_agd_examples():
    assert agd_root(paren("()"), 1, 2) == 0
    assert agd_root(paren(")("), 2, 2) == exact_gd(paren(")(")) == 2
    deep = paren(")))))(((((")
    assert agd_root(deep, 1, 2) == math.inf
    assert exact_gd(deep) > 1


def test_bd_vs_gd(rng):
    for seed in range(120):
        x = reduce_dyck(random_string(int(rng.integers(2, 40)), 2, seed))
        if len(x) < 2:
            continue
        g = exact_gd(x)
        c = len(pivot_candidates(x))
        for d in (1, 4, 16):
            for tau in (2, 4):
                b = agd_root(x, d, tau)
                assert b >= g
                if g <= d:
                    assert b <= g + (8 / tau) * c * math.log2(max(c, 2))


def test_hard_calls_are_linear_in_nd(rng):
    for seed in range(20):
        x = reduce_dyck(planted(int(rng.integers(50, 500)), 2, 30, seed).x)
        for d in (2, 8, 32):
            run = agd_run(x, d, ptas_tau(len(pivot_candidates(x)), 0.5))
            assert run.hard_calls <= (4 * d + 1) * (len(x) + 1)


def test_examples():
    assert dyck_small(gen_balanced(40, 2, 3), 5, 0.5) == 0
    x = planted(400, 2, 10, 1).x
    d = exact_dyck_pivots(x)
    v = dyck_small(x, 50, 0.5)
    assert d <= v <= 3.5 * d
    far = paren(")" * 100 + "(" * 100)
    assert exact_dyck_pivots(far) == 100
    r = dyck_small(far, 10, 0.5)
    assert isinstance(r, Exceeds) and r.d == 10 and str(r) == ">10"


@pytest.mark.parametrize("d,eps", [(0, 0.5), (5, 0), (5, 1.0), (100, 0.5)])
def test_parameter_checks(d, eps):
    with pytest.raises(ValueError):
        dyck_small(random_string(20, 2, 0), d, eps)


def test_soundness(rng):
    for seed in range(80):
        pi = planted(int(rng.integers(5, 600)), 2, int(rng.integers(0, 80)), seed)
        D = exact_dyck_pivots(pi.x)
        for d in (1, 8, 64):
            if d > len(pi.x):
                continue
            r = dyck_small(pi.x, d, 0.5)
            if isinstance(r, Exceeds):
                assert D > d
            else:
                assert D <= r <= 3.5 * D


def test_stats():
    st = {}
    dyck_small(random_string(100, 2, 1), 30, 0.5, st)
    assert {"states", "hard_calls", "tau", "reduced_n"} <= set(st)
