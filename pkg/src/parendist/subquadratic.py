"""Constant-factor subquadratic estimator built from certified window pairs."""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np

from . import _kernels
from .core import Alphabet, ParenString, WeightedWindowPair, Window
from .exact import as_string
from .small_distance import Exceeds, _dyck_small

ALPHA = 2


def _pow2_floor(v: float) -> int:
    p = 1
    while p * 2 <= v + 1e-9:
        p *= 2
    return p


def _as_theta(theta) -> Fraction:
    t = Fraction(theta).limit_denominator(1 << 40)
    if t <= 0 or t > 1 or t.numerator != 1 or t.denominator & (t.denominator - 1):
        raise ValueError(f"theta must be a power of two in (0, 1], got {theta}")
    return t


def _step(theta: Fraction, size: int) -> int:
    g = theta * size
    if g.denominator != 1 or g < 1:
        raise ValueError(f"grid step theta*{size} = {g} is not a positive integer")
    return int(g)


# ---------------------------------------------------------------- grids

@dataclass
class WindowGrid:
    """Grid-aligned windows of length at most 5*size (empty windows anchored at grid points)."""

    n: int
    theta: Fraction
    size: int
    step: int
    starts: np.ndarray
    ends: np.ndarray
    _index: dict = field(default_factory=dict, repr=False)

    def __len__(self):
        return len(self.starts)

    def window(self, k: int) -> Window:
        s, e = int(self.starts[k]), int(self.ends[k])
        return Window(s, e) if s <= e else Window.empty(e)

    def lookup(self, end: int, length: int) -> int | None:
        return self._index.get((end, length))

    def lengths(self) -> np.ndarray:
        return self.ends - self.starts + 1


def build_grid(n: int, theta, size: int) -> WindowGrid:
    theta = _as_theta(theta)
    g = _step(theta, size)
    if n % g:
        raise ValueError(f"grid step {g} does not divide n={n}")
    starts, ends = [], []
    for e in range(g, n + 1, g):
        for length in range(0, min(5 * size, e) + 1, g):
            starts.append(e - length + 1)
            ends.append(e)
    grid = WindowGrid(n, theta, size, g, np.array(starts, dtype=np.int32), np.array(ends, dtype=np.int32))
    grid._index = {(e, e - s + 1): k for k, (s, e) in enumerate(zip(starts, ends))}
    return grid


# ----------------------------------------------------------- parameters

@dataclass(frozen=True)
class SubquadraticParams:
    theta: Fraction
    s1: int
    s2: int
    delta: int
    k1: float = 4
    k2: float = 4
    seed: int = 0
    alpha: int = ALPHA

    def __post_init__(self):
        if not isinstance(self.theta, Fraction):
            object.__setattr__(self, "theta", Fraction(self.theta).limit_denominator(1 << 40))

    def validate(self, n: int) -> None:
        _as_theta(self.theta)
        for name in ("s1", "s2", "delta"):
            v = getattr(self, name)
            if v < 1 or v & (v - 1):
                raise ValueError(f"{name} must be a power of two, got {v}")
        if self.s1 % self.s2:
            raise ValueError("s2 must divide s1")
        if n % self.s1:
            raise ValueError(f"s1={self.s1} must divide the padded length {n}")
        if Fraction(self.s2, self.s1) > self.theta:
            raise ValueError("s2/s1 must not exceed theta")
        _step(self.theta, self.s1)
        _step(self.theta, self.s2)
        if self.k1 <= 0 or self.k2 <= 0:
            raise ValueError("sampling constants must be positive")

    @property
    def g1(self) -> int:
        return _step(self.theta, self.s1)

    @property
    def g2(self) -> int:
        return _step(self.theta, self.s2)

    def schedule(self) -> list[int]:
        out = [0, 1]
        c = 2
        while out[-1] < 10 * self.s2:
            out.append(c)
            c *= 2
        return out

    def as_dict(self) -> dict:
        return {"theta": str(self.theta), "s1": self.s1, "s2": self.s2, "delta": self.delta,
                "k1": self.k1, "k2": self.k2, "seed": self.seed, "alpha": self.alpha}


def default_params(n: int, theta, seed: int = 0, **overrides) -> SubquadraticParams:
    """Largest powers of two under n^(21/34), n^(13/34), n^(5/34), raised where the grids need it."""
    theta = _as_theta(theta)
    n = max(n, 1)
    inv = theta.denominator
    s2 = overrides.pop("s2", None) or max(_pow2_floor(n ** (13 / 34)), inv)
    s1 = overrides.pop("s1", None) or max(_pow2_floor(n ** (21 / 34)), s2 * inv)
    delta = overrides.pop("delta", None) or _pow2_floor(n ** (5 / 34))
    return SubquadraticParams(theta, int(s1), int(s2), int(delta), seed=seed, **overrides)


def pad(x: ParenString, s1: int) -> ParenString:
    """Append matched pairs of a fresh type up to a multiple of s1."""
    n = len(x)
    target = max(s1, -(-n // s1) * s1)
    extra = target - n
    if extra % 2:
        raise ValueError("odd padding would change dyck; split off a symbol first")
    if extra == 0:
        return x
    fresh = x.alphabet.type_count + 1
    tail = [fresh, -fresh] * (extra // 2)
    return ParenString(np.concatenate([x.symbols, np.array(tail, dtype=np.int32)]), Alphabet(fresh))


# ------------------------------------------------------ certified pairs

class PairTable:
    """Dyck-Approx decisions for every (row, col) window pair, from cached bounds.

    ``ex`` holds the inner approximation's value where known (-1 otherwise);
    undecided comparisons fall back to the inner PTAS one batch at a time."""

    def __init__(self, oracle, rows, cols, rc: bool = False, flip: bool = False):
        # flip: entry [r, c] describes the pair (cols[c], rows[r])
        self.oracle = oracle
        self.rows = np.asarray(rows, dtype=np.int32)
        self.cols = np.asarray(cols, dtype=np.int32)
        self.rc = rc
        self.flip = flip
        if flip:
            mats = oracle.bound_matrices(self.cols, self.rows, rc)
            self.ex, self.lb, self.ub = (np.ascontiguousarray(m.T) for m in mats)
        else:
            self.ex, self.lb, self.ub = oracle.bound_matrices(self.rows, self.cols, rc)

    def _resolve(self, r, c):
        if len(r):
            left, right = (self.cols[c], self.rows[r]) if self.flip else (self.rows[r], self.cols[c])
            self.ex[r, c] = self.oracle.values(left, right, self.rc)

    def _decide(self, ex, lb, ub, T):
        known = ex >= 0
        res = np.where(known, ex <= T, 2 * ub <= T)
        open_ = ~known & (lb <= T) & (2 * ub > T)
        return res, open_

    def row_le(self, r: int, T: int) -> np.ndarray:
        res, open_ = self._decide(self.ex[r], self.lb[r], self.ub[r], T)
        if open_.any():
            c = np.nonzero(open_)[0]
            self._resolve(np.full(len(c), r), c)
            res[c] = self.ex[r, c] <= T
        return res

    def value(self, r: int, c: int) -> int:
        if self.ex[r, c] < 0:
            self._resolve(np.array([r]), np.array([c]))
        return int(self.ex[r, c])

    def lower(self) -> np.ndarray:
        return np.where(self.ex >= 0, self.ex, self.lb)


class CertifiedSet:
    """W_S over K x K and W_L over J x J.

    Weights of near pairs and of W_L members are Dyck-Approx values; they are
    computed on demand and ``materialize`` forces all of them."""

    def __init__(self, x: ParenString, params: SubquadraticParams, K: WindowGrid, J: WindowGrid, oracle):
        self.x = x
        self.params = params
        self.K = K
        self.J = J
        self.oracle = oracle
        nk, nj = len(K), len(J)
        kidx = np.arange(nk)
        self.kk = PairTable(oracle, kidx, kidx)
        # rc_of[w, w1] decides x[w1] . rc(x[w])
        self.rc_of = PairTable(oracle, kidx, kidx, rc=True, flip=True)
        self.jj = PairTable(oracle, np.arange(nj) + nk, np.arange(nj) + nk)
        self.ordered_k = K.ends[:, None] < K.starts[None, :]
        self.ordered_j = J.ends[:, None] < J.starts[None, :]
        self.small = np.full((nk, nk), -1, dtype=np.int32)
        self.near = self.ordered_k & (K.starts[None, :] - K.starts[:, None] <= 5 * params.s1)
        self.large = np.zeros((nj, nj), dtype=bool)

    # sizes do not depend on which weights have been evaluated
    @property
    def size_small(self) -> int:
        return int(np.count_nonzero(self.near | (self.small >= 0)))

    @property
    def size_large(self) -> int:
        return int(np.count_nonzero(self.large))

    def materialize(self) -> None:
        for tab, mask in ((self.kk, self.near), (self.jj, self.large)):
            r, c = np.nonzero(mask & (tab.ex < 0))
            tab._resolve(r, c)

    def small_weights(self) -> np.ndarray:
        """Best weight per K x K pair (-1 if absent)."""
        self.materialize()
        w = np.where(self.near, self.kk.ex, -1)
        both = (w >= 0) & (self.small >= 0)
        return np.where(both, np.minimum(w, self.small), np.maximum(w, self.small))

    def large_weights(self) -> np.ndarray:
        self.materialize()
        return np.where(self.large, self.jj.ex, -1)

    def pairs(self) -> list[WeightedWindowPair]:
        out = []
        for grid, ws in ((self.K, self.small_weights()), (self.J, self.large_weights())):
            for a, b in zip(*np.nonzero(ws >= 0)):
                out.append(WeightedWindowPair(grid.window(a), grid.window(b), int(ws[a, b])))
        return out


def _rng(seed: int, phase: int, tag: int, idx: int) -> np.random.Generator:
    return np.random.default_rng([seed, phase, tag, idx])


def declare_sparse(W: CertifiedSet, c: int, phase: int = 0) -> np.ndarray:
    """Boolean mask over K of the windows declared (c, delta)-sparse."""
    p = W.params
    tab = W.kk
    nk = len(W.K)
    logn = math.log2(max(len(W.x), 2))
    samples = math.ceil(p.k1 * nk * logn / p.delta)
    T = p.alpha * c
    if samples >= nk:
        # sampling could not beat an exhaustive count, so classify exactly
        res, open_ = tab._decide(tab.ex, tab.lb, tab.ub, T)
        count = res.sum(axis=1)
        sparse = count < p.delta
        for w in np.nonzero(sparse & open_.any(axis=1))[0]:
            sparse[w] = tab.row_le(int(w), T).sum() < p.delta
        return sparse
    limit = p.k1 / 2 * logn
    sparse = np.zeros(nk, dtype=bool)
    for w in range(nk):
        idx = _rng(p.seed, phase, 0, w).integers(0, nk, size=samples)
        ok = tab.row_le(w, T)
        sparse[w] = ok[idx].sum() <= limit
    return sparse


def certify_small(W: CertifiedSet, sparse: np.ndarray, c: int) -> int:
    """Pivot loop over the dense windows; returns the number of new pairs."""
    a = W.params.alpha
    left = ~sparse
    weight = 5 * a * a * c
    added = 0
    while left.any():
        w = int(np.argmax(left))
        A1 = np.nonzero(W.rc_of.row_le(w, 2 * a * c))[0]
        A2 = np.nonzero(W.kk.row_le(w, 3 * a * a * c))[0]
        if len(A1) and len(A2):
            block = W.small[np.ix_(A1, A2)]
            fresh = W.ordered_k[np.ix_(A1, A2)] & (block < 0)
            added += int(fresh.sum())
            W.small[np.ix_(A1, A2)] = np.where(fresh, weight, block)
        left[A1] = False
        left[w] = False
    return added


def _containment(K: WindowGrid, J: WindowGrid) -> np.ndarray:
    """inside[k, j]: small window k lies within large window j (empty windows by anchor)."""
    ks, ke = K.starts[:, None], K.ends[:, None]
    js, je = J.starts[None, :], J.ends[None, :]
    empty = ks > ke
    return np.where(empty, (js - 1 <= ke) & (ke <= je), (js <= ks) & (ke <= je))


def certify_large(W: CertifiedSet, sparse: np.ndarray, c: int, phase: int = 0,
                  inside: np.ndarray | None = None) -> int:
    p = W.params
    K, J = W.K, W.J
    if inside is None:
        inside = _containment(K, J)
    logn = math.log2(max(len(W.x), 2))
    samples = math.ceil(p.k2 * logn * logn * float(p.theta) ** -3)
    nonempty = K.starts <= K.ends
    T = p.alpha * c
    close: dict[int, np.ndarray] = {}
    before = W.size_large
    for w in range(len(J)):
        if J.starts[w] > J.ends[w]:
            continue
        pop = np.nonzero(inside[:, w] & nonempty & sparse)[0]
        if len(pop) == 0:
            continue
        if samples < len(pop):
            pop = np.unique(_rng(p.seed, phase, 1, w).choice(pop, size=samples))
        reach = np.zeros(len(K), dtype=bool)
        for w1 in pop.tolist():
            if w1 not in close:
                close[w1] = W.kk.row_le(w1, T)
            reach |= close[w1]
        if reach.any():
            W.large[w] |= inside[reach].any(axis=0) & W.ordered_j[w]
    return W.size_large - before


def prepare(x, params: SubquadraticParams) -> CertifiedSet:
    """Grids, Dyck-Approx oracle and an empty certified set for a padded string."""
    x = as_string(x)
    n = len(x)
    params.validate(n)
    K = build_grid(n, params.theta, params.s2)
    J = build_grid(n, params.theta, params.s1)
    ws = np.concatenate([K.starts, J.starts])
    we = np.concatenate([K.ends, J.ends])
    oracle = _kernels.active.PairOracle(x.symbols, ws, we)
    return CertifiedSet(x, params, K, J, oracle)


def certifying_window_pairs(x, params: SubquadraticParams, stats: dict | None = None) -> CertifiedSet:
    """Run every phase of the cost schedule and accumulate W_S and W_L."""
    W = prepare(x, params)
    K, J = W.K, W.J
    inside = _containment(K, J)
    for phase, c in enumerate(params.schedule()):
        sparse = declare_sparse(W, c, phase)
        certify_small(W, sparse, c)
        certify_large(W, sparse, c, phase, inside)
    if stats is not None:
        stats.update(K=len(K), J=len(J), W_S=W.size_small, W_L=W.size_large)
    return W


# ------------------------------------------------------------ covering

def min_weight_cover(n: int, pairs, deletions: bool = True) -> float:
    """Minimum total weight of a consistent decomposition of [1..n].

    ``deletions`` adds ([i..i], empty, 1) for every i.  Returns inf when nothing covers."""
    pairs = list(pairs)
    pts = {0, n}
    rows = []
    for p in pairs:
        l, r = p.left, p.right
        i, lo = l.start - 1, l.end
        hi, j = r.start - 1, r.end
        if not (0 <= i <= lo <= hi <= j <= n):
            raise ValueError(f"pair {p} does not fit in [1..{n}]")
        pts.update((i, lo, hi, j))
        rows.append((i, j, lo, hi, p.weight))
    if deletions:
        pts.update(range(n + 1))
        rows.extend((i - 1, i, i, i, 1) for i in range(1, n + 1))
    C = sorted(pts)
    rank = {v: k for k, v in enumerate(C)}
    if not rows:
        return 0 if n == 0 else math.inf
    arr = np.array([[rank[i], rank[j], rank[l], rank[r], w] for i, j, l, r, w in rows], dtype=np.int64)
    v = _kernels.active.cover_dp(len(C), arr[:, 0], arr[:, 1], arr[:, 2], arr[:, 3], arr[:, 4])
    return math.inf if v >= 1 << 60 else int(v)


def _grid_cover(W: CertifiedSet, stats: dict | None = None) -> int:
    """Cover DP on the g2 grid.

    Lazily weighted pairs enter at their lower bounds.  After each solve, every
    such pair whose best cover (at its lower bound) could beat the best fully
    evaluated cover so far is evaluated, so the final value equals the fully
    evaluated minimum."""
    K, J = W.K, W.J
    kern = _kernels.active
    g = K.step
    nc = len(W.x) // g + 1
    ks, ke = (K.starts - 1) // g, K.ends // g
    js, je = (J.starts - 1) // g, J.ends // g
    base = W.small.copy()
    # deleting a whole cell: (cell, empty window at its end)
    for e in range(g, len(W.x) + 1, g):
        a, b = K.lookup(e, g), K.lookup(e, 0)
        if base[a, b] < 0 or base[a, b] > g:
            base[a, b] = g
    rounds = 0
    while True:
        rounds += 1
        near = np.where(W.near, W.kk.lower(), -1)
        wk = np.where((base >= 0) & (near >= 0), np.minimum(base, near), np.maximum(base, near)).astype(np.int32)
        wj = np.where(W.large, W.jj.lower(), -1).astype(np.int32)
        # pairs whose weight is still only a lower bound
        lazy_k = W.near & (W.kk.ex < 0) & ~((base >= 0) & (base <= W.kk.lb))
        lazy_j = W.large & (W.jj.ex < 0)
        value, used, D = kern.grid_cover(nc, ks, ke, wk, js, je, wj)
        pending = [(f, a, b) for f, a, b in used if (lazy_k if f == 0 else lazy_j)[a, b]]
        if not pending:
            break
        feasible = value
        for f, a, b in pending:
            tab = W.kk if f == 0 else W.jj
            feasible += tab.value(a, b) - (wk if f == 0 else wj)[a, b]
        O = kern.grid_outside(nc, ks, ke, wk, js, je, wj, D)
        for tab, lazy, s_, e_, wt in ((W.kk, lazy_k, ks, ke, wk), (W.jj, lazy_j, js, je, wj)):
            r, c = np.nonzero(lazy & (tab.ex < 0))
            through = O[s_[r], e_[c]] + wt[r, c] + D[e_[r], s_[c]]
            keep = through < feasible
            tab._resolve(r[keep], c[keep])
    if stats is not None:
        stats.update(cover_rounds=rounds, ptas_calls=W.oracle.ptas_calls)
    return int(value)


def gap_dyck_est(x, theta=None, params: SubquadraticParams | None = None, stats: dict | None = None) -> int:
    """Upper bound t >= dyck(x); t = O(theta n) when dyck(x) <= theta n (with high probability)."""
    x = as_string(x)
    if params is None:
        if theta is None:
            raise ValueError("give theta or params")
        params = default_params(len(x), theta)
    elif theta is not None and _as_theta(theta) != params.theta:
        raise ValueError("theta disagrees with params.theta")
    if len(x) == 0:
        return 0
    # an odd tail symbol becomes a ragged final cell charged as one deletion
    ragged = len(x) % 2
    y = pad(x[:len(x) - ragged], params.s1)
    W = certifying_window_pairs(y, params, stats)
    t = _grid_cover(W, stats) + ragged
    if stats is not None:
        stats.update(n=len(x), padded_n=len(y), params=params.as_dict(), certified=W)
    return t


def theta_ladder(n: int) -> list[Fraction]:
    """Powers of two from the first one >= n^(-1/34) up to 1."""
    lo = max(n, 2) ** (-1 / 34)
    t = Fraction(1)
    out = [t]
    while t / 2 >= lo:
        t /= 2
        out.append(t)
    return out[::-1]


def dyck_est(x, seed: int = 0, stats: dict | None = None, **overrides) -> int:
    """Constant-factor estimate of dyck(x) that is never below it."""
    x = as_string(x)
    n = len(x)
    if n == 0:
        return 0
    d = min(n, math.ceil(n ** (33 / 34)))
    small_stats: dict = {}
    v = _dyck_small(x, d, 1.0, small_stats)
    if not isinstance(v, Exceeds):
        if stats is not None:
            stats.update(path="small", d=d, **small_stats)
        return v
    best = None
    runs = []
    for theta in theta_ladder(n):
        st: dict = {}
        t = gap_dyck_est(x, params=default_params(n, theta, seed=seed, **dict(overrides)), stats=st)
        st.pop("certified", None)
        runs.append(st)
        best = t if best is None else min(best, t)
    if stats is not None:
        stats.update(path="gap", d=d, runs=runs)
    return best
