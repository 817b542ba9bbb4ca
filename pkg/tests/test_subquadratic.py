from fractions import Fraction

import numpy as np
import pytest

from parendist.core import ParenString, Window, WeightedWindowPair, paren
from parendist.exact import exact_dyck_pivots
from parendist.subquadratic import (SubquadraticParams, build_grid, certify_large, certify_small,
                                    certifying_window_pairs, declare_sparse, default_params, dyck_est,
                                    gap_dyck_est, min_weight_cover, pad, prepare, theta_ladder)
from parendist.testkit import gen_balanced, planted, random_string

H, Q = Fraction(1, 2), Fraction(1, 4)


def _grid_set(g):
    return {(int(s), int(e)) for s, e in zip(g.starts, g.ends)}


def test_grid_matches_predicate():
    n, step, size = 8, 2, 2
    want = {(s, e) for s in range(1, n + 1) for e in range(s, n + 1)
            if (s - 1) % step == 0 and e % step == 0 and e - s + 1 <= 5 * size}
    want |= {(a + 1, a) for a in range(step, n + 1, step)}
    assert _grid_set(build_grid(n, 1, size)) == want


def test_grid_small_cases():
    assert _grid_set(build_grid(4, 1, 4)) == {(5, 4), (1, 4)}
    g = build_grid(16, H, 4)
    k = g.lookup(8, 4)
    assert g.window(k) == Window(5, 8)
    assert g.lookup(7, 4) is None
    with pytest.raises(ValueError):
        build_grid(10, 1, 4)
    with pytest.raises(ValueError):
        build_grid(16, Q, 2)
    with pytest.raises(ValueError):
        build_grid(16, Fraction(1, 3), 3)


def test_grid_size_tracks_claim():
    ratios = []
    for n in (256, 1024, 4096):
        for theta in (H, Q):
            for size in (n // 16, n // 8):
                g = build_grid(n, theta, size)
                ratios.append(len(g) / (n / (theta * theta * size)))
    assert max(ratios) <= 6 and max(ratios) / min(ratios) <= 4


def test_params():
    p = default_params(1024, Q)
    assert (p.s1, p.s2, p.delta) == (64, 8, 2)
    p.validate(1024)
    assert p.schedule() == [0, 1, 2, 4, 8, 16, 32, 64, 128]
    assert default_params(1024, Q, s1=256, s2=64).s1 == 256
    with pytest.raises(ValueError):
        SubquadraticParams(Q, 64, 32, 2).validate(1024)
    with pytest.raises(ValueError):
        SubquadraticParams(Q, 64, 8, 3).validate(1024)
    with pytest.raises(ValueError):
        SubquadraticParams(Q, 64, 8, 2).validate(1000)
    with pytest.raises(ValueError):
        default_params(64, Fraction(3, 4))


def test_theta_ladder():
    lad = theta_ladder(1 << 17)
    assert lad[-1] == 1 and all(b == 2 * a for a, b in zip(lad, lad[1:]))
    assert lad[0] >= (1 << 17) ** (-1 / 34)


def test_padding_preserves_dyck(rng):
    for seed in range(60):
        x = random_string(2 * int(rng.integers(1, 100)), 2, seed)
        for s1 in (8, 32):
            y = pad(x, s1)
            assert len(y) % s1 == 0 and len(y) >= s1
            assert exact_dyck_pivots(y) == exact_dyck_pivots(x)


def test_odd_inputs():
    with pytest.raises(ValueError):
        pad(random_string(7, 2, 0), 8)
    for seed in range(20):
        x = random_string(33, 2, seed)
        assert gap_dyck_est(x, H) >= exact_dyck_pivots(x)


def _small_set(x, theta=H, s1=None, s2=None, delta=2):
    n = len(x)
    p = SubquadraticParams(theta, s1 or n // 2, s2 or n // 8, delta)
    return prepare(x, p)


def test_declare_sparse_extremes():
    x = random_string(64, 2, 1)
    W = _small_set(x, delta=256)
    assert declare_sparse(W, 2).all()
    W = _small_set(x, delta=1)
    assert not declare_sparse(W, 10 * W.params.s2).any()


def test_certify_small_noop_when_all_sparse():
    W = _small_set(random_string(64, 2, 1))
    assert certify_small(W, np.ones(len(W.K), dtype=bool), 4) == 0
    assert (W.small < 0).all()
    assert W.size_small == int(W.near.sum())


def test_tiled_blocks_give_zero_weights():
    x = paren("()" * 32)
    W = _small_set(x)
    sparse = declare_sparse(W, 0)
    assert not sparse.all()
    assert certify_small(W, sparse, 0) > 0
    assert (W.small == 0).any()


def test_certify_large_needs_sparse_windows():
    W = _small_set(random_string(64, 2, 3))
    assert certify_large(W, np.zeros(len(W.K), dtype=bool), 4) == 0


def _check_certified(W):
    bad = 0
    for tab, ws in ((W.kk, W.small_weights()), (W.jj, W.large_weights())):
        r, c = np.nonzero(ws >= 0)
        ex = W.oracle.exact_values(tab.rows[r], tab.cols[c], False)
        bad += int((ws[r, c] < ex).sum())
    return bad


def test_certified_pairs_spot_check():
    x = planted(64, 2, 6, 2).x
    p = SubquadraticParams(H, 64, 16, 2)
    W = certifying_window_pairs(pad(x, 64), p)
    assert _check_certified(W) == 0
    for pair in W.pairs()[:200]:
        assert pair.weight >= exact_dyck_pivots(pair.text(W.x))


def test_min_weight_cover_examples():
    W = Window
    assert min_weight_cover(4, [WeightedWindowPair(W(1, 2), W(3, 4), 5)]) == 4
    assert min_weight_cover(4, [WeightedWindowPair(W(1, 2), W(3, 4), 5)], deletions=False) == 5
    nested = [WeightedWindowPair(W(1, 1), W(4, 4), 1), WeightedWindowPair(W(2, 2), W(3, 3), 2)]
    assert min_weight_cover(4, nested) == 3
    assert min_weight_cover(4, [WeightedWindowPair(W(1, 1), W(4, 4), 1)], deletions=False) == float("inf")
    assert min_weight_cover(0, []) == 0
    with pytest.raises(ValueError):
        min_weight_cover(3, [WeightedWindowPair(W(1, 2), W(3, 4), 1)])


def test_cover_of_certified_pairs_bounds_dyck(rng):
    for seed in range(6):
        x = random_string(32, 2, seed)
        p = SubquadraticParams(H, 16, 4, 2)
        W = certifying_window_pairs(x, p)
        assert min_weight_cover(32, W.pairs()) >= exact_dyck_pivots(x)


def test_gap_estimate_basics():
    x = random_string(64, 2, 4)
    assert gap_dyck_est(x, 1) <= 64
    assert gap_dyck_est(x, H) >= exact_dyck_pivots(x)
    assert gap_dyck_est(ParenString([]), H) == 0
    with pytest.raises(ValueError):
        gap_dyck_est(x)
    with pytest.raises(ValueError):
        gap_dyck_est(x, Q, params=default_params(64, H))


def test_gap_estimate_on_balanced():
    x = gen_balanced(256, 2, 1)
    st = {}
    t = gap_dyck_est(x, params=SubquadraticParams(Q, 512, 128, 2), stats=st)
    assert 0 <= t <= Q * 512
    assert {"K", "J", "W_S", "W_L", "cover_rounds", "padded_n"} <= set(st)


def test_dyck_est_small_path():
    assert dyck_est(gen_balanced(100, 2, 0)) == 0
    pi = planted(5000, 2, 5, 3)
    d = exact_dyck_pivots(pi.x)
    st = {}
    v = dyck_est(pi.x, stats=st)
    assert st["path"] == "small"
    assert d <= v <= 4 * d


def test_determinism():
    x = planted(128, 2, 10, 8).x
    p = SubquadraticParams(Q, 256, 64, 2, seed=17)
    a, b = {}, {}
    assert gap_dyck_est(x, params=p, stats=a) == gap_dyck_est(x, params=p, stats=b)
    assert (a["W_S"], a["W_L"]) == (b["W_S"], b["W_L"])
