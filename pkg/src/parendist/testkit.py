"""Independent oracles, instance generators and the analysis-only decompositions."""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from .core import Alignment, Alphabet, ParenString, Window, pair_cost

BRUTE_LIMIT = 12


# ------------------------------------------------------------------ oracles

@lru_cache(maxsize=None)
def _matchings(n: int) -> np.ndarray:
    """All non-crossing matchings on n points as a padded (count, n//2, 2) array (0-based)."""

    def rec(lo, hi):
        if lo >= hi:
            return [()]
        out = [m for m in rec(lo + 1, hi)]
        for k in range(lo + 1, hi):
            inner = rec(lo + 1, k)
            outer = rec(k + 1, hi)
            for a in inner:
                for b in outer:
                    out.append(((lo, k),) + a + b)
        return out

    ms = rec(0, n)
    width = max(1, n // 2)
    arr = np.full((len(ms), width, 2), -1, dtype=np.int64)
    for r, m in enumerate(ms):
        for c, p in enumerate(m):
            arr[r, c] = p
    return arr


def _pc_table(t: int) -> tuple[np.ndarray, int]:
    size = 2 * t + 1
    tab = np.zeros((size, size), dtype=np.int64)
    for a in range(-t, t + 1):
        for b in range(-t, t + 1):
            if a and b:
                tab[a + t, b + t] = pair_cost(a, b)
    return tab, t


def brute_force_dyck(x: ParenString) -> int:
    """Minimum alignment cost over every non-crossing matching."""
    n = len(x)
    if n > BRUTE_LIMIT:
        raise ValueError(f"brute force limited to n <= {BRUTE_LIMIT}")
    if n == 0:
        return 0
    s = x.symbols.astype(np.int64)
    t = int(np.abs(s).max())
    tab, off = _pc_table(t)
    M = _matchings(n)
    used = M[:, :, 0] >= 0
    a = np.where(used, s[np.maximum(M[:, :, 0], 0)], 0)
    b = np.where(used, s[np.maximum(M[:, :, 1], 0)], 0)
    pcs = np.where(used, tab[a + off, b + off], 0)
    costs = n - 2 * used.sum(axis=1) + pcs.sum(axis=1)
    return int(costs.min())


def brute_force_fold(x: ParenString) -> int:
    """Minimum deletions over folding alignments (pairs must be complementary)."""
    n = len(x)
    if n > BRUTE_LIMIT:
        raise ValueError(f"brute force limited to n <= {BRUTE_LIMIT}")
    if n == 0:
        return 0
    s = x.symbols.astype(np.int64)
    M = _matchings(n)
    used = M[:, :, 0] >= 0
    a = s[np.maximum(M[:, :, 0], 0)]
    b = s[np.maximum(M[:, :, 1], 0)]
    ok = np.all(~used | (b == -a), axis=1)
    costs = n - 2 * used.sum(axis=1)
    return int(costs[ok].min())


# --------------------------------------------------------------- generators

@dataclass(frozen=True)
class PlantedInstance:
    x: ParenString
    planted_distance_bound: int
    seed: int


def _rng(seed):
    return np.random.default_rng(seed)


def gen_balanced(pair_count: int, type_count: int, seed) -> ParenString:
    """Random member of Dyck(Sigma) from the production S -> a S a' S."""
    if pair_count < 0:
        raise ValueError("pair_count must be non-negative")
    rng = _rng(seed)
    out: list[int] = []
    # each frame: pairs still to emit in this slot, or a closing symbol to write
    stack: list[tuple[int, int]] = [(0, pair_count)]
    while stack:
        kind, v = stack.pop()
        if kind == 1:
            out.append(v)
            continue
        if v == 0:
            continue
        inner = int(rng.integers(0, v))
        typ = int(rng.integers(1, type_count + 1))
        out.append(typ)
        stack.append((0, v - 1 - inner))
        stack.append((1, -typ))
        stack.append((0, inner))
    return ParenString(out, Alphabet(type_count))


def gen_deep_balanced(pair_count: int, type_count: int, seed, depth_bias: float = 0.85) -> ParenString:
    """Balanced string with long nested runs (a random walk biased upward)."""
    rng = _rng(seed)
    out: list[int] = []
    stack: list[int] = []
    opens = pair_count
    while opens or stack:
        go_up = opens and (not stack or rng.random() < depth_bias)
        if go_up:
            typ = int(rng.integers(1, type_count + 1))
            stack.append(typ)
            out.append(typ)
            opens -= 1
        else:
            out.append(-stack.pop())
    return ParenString(out, Alphabet(type_count))


def random_string(n: int, type_count: int, seed) -> ParenString:
    rng = _rng(seed)
    mag = rng.integers(1, type_count + 1, size=n)
    sign = np.where(rng.random(n) < 0.5, 1, -1)
    return ParenString((mag * sign).astype(np.int32), Alphabet(type_count))


def perturb(x: ParenString, k: int, seed) -> ParenString:
    """Apply k uniformly chosen insert / delete / substitute edits."""
    if k < 0:
        raise ValueError("k must be non-negative")
    rng = _rng(seed)
    t = x.alphabet.type_count
    syms = x.symbols.tolist()

    def fresh():
        return int(rng.integers(1, t + 1)) * (1 if rng.random() < 0.5 else -1)

    for _ in range(k):
        op = int(rng.integers(0, 3))
        if op == 0 or not syms:
            syms.insert(int(rng.integers(0, len(syms) + 1)), fresh())
        elif op == 1:
            del syms[int(rng.integers(0, len(syms)))]
        else:
            p = int(rng.integers(0, len(syms)))
            c = fresh()
            while c == syms[p] and 2 * t > 1:
                c = fresh()
            syms[p] = c
    return ParenString(syms, x.alphabet)


def planted(pair_count: int, type_count: int, edits: int, seed, deep: bool = False) -> PlantedInstance:
    ss = np.random.SeedSequence(seed)
    s1, s2 = ss.spawn(2)
    base = (gen_deep_balanced if deep else gen_balanced)(pair_count, type_count, s1)
    return PlantedInstance(perturb(base, edits, s2), edits, seed)


# --------------------------------------------------------- decompositions

Pair = tuple[Window, Window]


def _window(a: int, b: int) -> Window:
    return Window(a, b) if b >= a else Window.empty(b)


class _Pivots:
    """Pivot queries for intervals closed under the matching M."""

    def __init__(self, n: int, M: Alignment):
        self.partner = [0] * (n + 2)
        for i, j in M.pairs:
            self.partner[i] = j
            self.partner[j] = i
        # cover[p] = number of pairs (a, b) with a <= p < b
        diff = np.zeros(n + 2, dtype=np.int64)
        for i, j in M.pairs:
            diff[i] += 1
            diff[j] -= 1
        self.cover = np.cumsum(diff)
        # For a closed interval [l..r], p in [l..r] is a pivot iff no pair spans (p, p+1)
        # from inside; pairs from outside the interval span all of it, so compare
        # against the cover just before l.
        self.n = n

    def is_pivot(self, l: int, r: int, p: int) -> bool:
        if p == r:
            return True
        base = self.cover[l - 1] if l >= 1 else 0
        return self.cover[p] == base

    def leftmost(self, l: int, r: int, lo: int, hi: int) -> int | None:
        for p in range(max(lo, l), min(hi, r) + 1):
            if self.is_pivot(l, r, p):
                return p
        return None

    def rightmost(self, l: int, r: int, lo: int, hi: int) -> int | None:
        for p in range(min(hi, r), max(lo, l) - 1, -1):
            if self.is_pivot(l, r, p):
                return p
        return None


def decompose_pm(x: ParenString, M: Alignment, s1: int, trace: list | None = None) -> list[Pair]:
    """Run the recursive window-pair process P_M with parameter s1.

    ``trace`` (optional) receives the case number used for each interval.
    """
    n = len(x)
    if s1 < 1:
        raise ValueError("s1 must be positive")
    M.check_length(n)
    piv = _Pivots(n, M)
    part = piv.partner
    out: list[Pair] = []
    work = [(1, n)]
    while work:
        i1, i2 = work.pop()
        if i2 < i1:
            continue
        if i2 - i1 <= 4 * s1:
            mid = (i1 + i2) // 2
            out.append((_window(i1, mid), _window(mid + 1, i2)))
            _note(trace, 1)
            continue
        k1 = 0
        for j in range(min(i1 + s1, i2), i1 - 1, -1):
            mj = part[j]
            if mj and i2 - s1 <= mj <= i2 and mj > j:
                k1 = j
                break
        if k1 == 0:
            p = piv.leftmost(i1, i2, i1 + s1, i1 + 2 * s1)
            if p is not None:
                mid = (i1 + p) // 2
                out.append((_window(i1, mid), _window(mid + 1, p)))
                work.append((p + 1, i2))
                _note(trace, 2)
                continue
            p = piv.rightmost(i1, i2, i2 - 2 * s1, i2 - s1)
            if p is not None:
                mid = (p + 1 + i2) // 2
                out.append((_window(p + 1, mid), _window(mid + 1, i2)))
                work.append((i1, p))
                _note(trace, 3)
                continue
            p = piv.leftmost(i1, i2, i1 + 2 * s1, i2 - 1)
            if p is None:
                raise AssertionError("no pivot found in case 4")
            work.append((p + 1, i2))
            work.append((i1, p))
            _note(trace, 4)
            continue
        mk = part[k1]
        lo_in, hi_in = k1 + 1, mk - 1
        p = piv.leftmost(lo_in, hi_in, i1 + s1, i1 + 2 * s1)
        if p is not None:
            out.append((_window(i1, p), _window(mk, i2)))
            work.append((p + 1, mk - 1))
            _note(trace, 5)
            continue
        p = piv.rightmost(lo_in, hi_in, i2 - 2 * s1, i2 - s1)
        if p is not None:
            out.append((_window(i1, k1), _window(p + 1, i2)))
            work.append((k1 + 1, p))
            _note(trace, 6)
            continue
        out.append((_window(i1, k1), _window(mk, i2)))
        if k1 >= i1 + s1 or mk <= i2 - s1:
            work.append((k1 + 1, mk - 1))
            _note(trace, 7)
            continue
        p = piv.leftmost(lo_in, hi_in, i1 + 2 * s1, hi_in)
        if p is None:
            p = hi_in
        work.append((p + 1, mk - 1))
        work.append((k1 + 1, p))
        _note(trace, 8)
    out.sort(key=lambda t: (t[0].start, t[0].end))
    return out


def _note(trace, case):
    if trace is not None:
        trace.append(case)


def cap_window(w: Window, g: int) -> Window:
    """Round a window outward-left onto the grid of step g."""
    if w.is_empty:
        a = -(-w.anchor // g) * g
        return Window.empty(a)
    s = -(-(w.start - 1) // g) * g + 1
    e = -(-w.end // g) * g
    return Window(s, e) if s <= e else Window.empty(e)


def cap_decomposition(S: list[Pair], theta: float, s: int) -> list[Pair]:
    g = theta * s
    if g != int(g) or g < 1:
        raise ValueError(f"grid step theta*s = {g} must be a positive integer")
    g = int(g)
    return [(cap_window(w, g), cap_window(w2, g)) for w, w2 in S]


def restricted_cost(x: ParenString, M: Alignment, w: Window, w2: Window) -> int:
    """cost_M(x[w] . x[w2]) with M restricted to pairs inside w and w2."""
    inside = set(w.positions()) | set(w2.positions())
    s = x.symbols
    pairs = [(i, j) for i, j in M.pairs if i in inside and j in inside]
    return len(inside) - 2 * len(pairs) + sum(pair_cost(int(s[i - 1]), int(s[j - 1])) for i, j in pairs)
