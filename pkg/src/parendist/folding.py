"""RNA folding distance: exact fold_rho, reverse-complement occurrence index, grid DP."""

from __future__ import annotations

import numpy as np

from . import _kernels
from .core import ParenString, reduce_fold
from .exact import as_string, exact_fold, exact_fold_rho  # noqa: F401  (re-exported)


def suffix_array(text: np.ndarray) -> np.ndarray:
    """Prefix-doubling suffix array over small non-negative integers."""
    n = len(text)
    if n == 0:
        return np.zeros(0, dtype=np.int64)
    rank = np.asarray(text, dtype=np.int64)
    _, rank = np.unique(rank, return_inverse=True)
    k = 1
    while rank.max() < n - 1 and k < n:
        second = np.full(n, -1, dtype=np.int64)
        second[: n - k] = rank[k:]
        order = np.lexsort((second, rank))
        r1, r2 = rank[order], second[order]
        step = np.zeros(n, dtype=np.int64)
        step[1:] = (r1[1:] != r1[:-1]) | (r2[1:] != r2[:-1])
        rank = np.empty(n, dtype=np.int64)
        rank[order] = np.cumsum(step)
        k <<= 1
    sa = np.empty(n, dtype=np.int64)
    sa[rank] = np.arange(n)
    return sa


def lcp_kasai(text: np.ndarray, sa: np.ndarray, rank: np.ndarray) -> np.ndarray:
    """lcp[r] = LCP of suffixes sa[r-1] and sa[r]; lcp[0] = 0."""
    n = len(text)
    t = text.tolist()
    rk = rank.tolist()
    s = sa.tolist()
    lcp = [0] * n
    h = 0
    for i in range(n):
        r = rk[i]
        if r == 0:
            h = 0
            continue
        j = s[r - 1]
        while i + h < n and j + h < n and t[i + h] == t[j + h]:
            h += 1
        lcp[r] = h
        if h:
            h -= 1
    return np.array(lcp, dtype=np.int32)


def _min_table(a: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    n = len(a)
    levels = max(1, n.bit_length())
    sp = np.zeros((levels, max(n, 1)), dtype=np.int32)
    if n:
        sp[0] = a
    for k in range(1, levels):
        width = n - (1 << k) + 1
        if width <= 0:
            break
        half = 1 << (k - 1)
        sp[k, :width] = np.minimum(sp[k - 1, :width], sp[k - 1, half:half + width])
    lg = np.zeros(n + 1, dtype=np.int32)
    for v in range(2, n + 1):
        lg[v] = lg[v >> 1] + 1
    return sp, lg


class FoldIndex:
    """Suffix array with LCE support over x followed by its reverse complement."""

    def __init__(self, x: ParenString):
        self.x = x
        n = len(x)
        self.n = n
        s = x.symbols.astype(np.int64)
        text = np.concatenate([s, -s[::-1]]) if n else np.zeros(0, dtype=np.int64)
        self.text = text
        self.sa = suffix_array(text)
        rank = np.empty(len(text), dtype=np.int64)
        rank[self.sa] = np.arange(len(text))
        self.rank = rank.astype(np.int32)
        self.lcp = lcp_kasai(text, self.sa, rank)
        self.lcp_table, self.log = _min_table(self.lcp)
        self._blocks: dict[int, np.ndarray] = {}

    def rc_range(self, p: int, q: int) -> tuple[int, int]:
        """Suffix-array interval of rc(x(p..q]) inside the text."""
        pos = self.n + (self.n - q)
        return _kernels.active.rc_range(self.rank, self.lcp_table, self.log, len(self.text), pos, q - p)

    def block_ranks(self, s: int) -> np.ndarray:
        """Row k holds the sorted suffix ranks of x-positions [ks, (k+1)s)."""
        if s not in self._blocks:
            m = self.n // s
            blk = np.sort(self.rank[: m * s].reshape(m, s), axis=1) if m else np.zeros((0, s), np.int32)
            self._blocks[s] = np.ascontiguousarray(blk, dtype=np.int32)
        return self._blocks[s]

    def occurrence_starts(self, p: int, q: int) -> np.ndarray:
        """All 0-based starts o in x with x(o..o+q-p] = rc(x(p..q])."""
        lo, hi = self.rc_range(p, q)
        starts = self.sa[lo:hi]
        return np.sort(starts[starts + (q - p) <= self.n])


def ipm_rc_occurs(index: FoldIndex, pattern: tuple[int, int], window: tuple[int, int]) -> bool:
    """Does rc(x(p..q]) occur inside x(a..b]?  Ranges are (i..j] with 0 <= i <= j <= n."""
    p, q = pattern
    a, b = window
    n = index.n
    if not (0 <= p <= q <= n and 0 <= a <= b <= n):
        raise IndexError(f"ranges {pattern} / {window} out of bounds for n={n}")
    L = q - p
    if L > b - a:
        return False
    if L == 0:
        return True
    lo, hi = index.rc_range(p, q)
    last = b - L
    # scan whichever side is smaller: the SA interval or the allowed start offsets
    if hi - lo <= last - a + 1:
        st = index.sa[lo:hi]
        return bool(np.any((st >= a) & (st <= last)))
    r = index.rank[a:last + 1]
    return bool(np.any((r >= lo) & (r < hi)))


def fold_table(x, s: int, index: FoldIndex | None = None) -> int:
    """Grid DP over blocks of length s; lies between fold_{8s}(x) and 3 fold_{8s}(x)."""
    x = as_string(x)
    if s < 1:
        raise ValueError("s must be positive")
    n = len(x)
    m = n // s
    if m <= 1:
        return n
    if index is None:
        index = FoldIndex(x)
    return fold_grid(index, s)


def fold_grid(index: FoldIndex, s: int) -> int:
    """The grid-DP part of fold_table on a prebuilt index (used for timing)."""
    n = index.n
    if n // s <= 1:
        return n
    return _kernels.active.fold_grid(n, s, index.rank, index.lcp_table, index.log, index.block_ranks(s))


def fold_block_size(tau: int) -> int:
    return (tau - 3) // 48


def fold_approx(x, tau: int) -> int:
    """Value v with fold(x) <= v <= tau * fold(x)."""
    if tau < 1:
        raise ValueError("tau must be at least 1")
    y = reduce_fold(as_string(x))
    if len(y) == 0:
        return 0
    if tau <= 51:
        return exact_fold(y)
    return fold_table(y, fold_block_size(tau))
