"""Pure-Python kernels.  Same signatures and results as the compiled module."""

from __future__ import annotations

import math
from bisect import bisect_left, bisect_right

import numpy as np

BACKEND = "python"


def _pc(a, b):
    wrong = (a < 0) + (b > 0)
    if wrong:
        return wrong
    return 1 if b != -a else 0


def _nu(r):
    # 2-adic valuation; r == 0 never reaches here
    return (r & -r).bit_length() - 1


def cubic_table(x):
    x = np.asarray(x, dtype=np.int64)
    n = len(x)
    D = np.zeros((n + 1, n + 1), dtype=np.int32)
    xs = x.tolist()
    for i in range(n - 1, -1, -1):
        D[i, i + 1] = 1
        row = D[i]
        for j in range(i + 2, n + 1):
            best = D[i + 1, j - 1] + _pc(xs[i], xs[j - 1])
            split = int((row[i + 1:j] + D[i + 1:j, j]).min())
            row[j] = min(best, split)
    return D


def pivot_table(x, h, kpos, tau, constrained):
    """Dense interval table for the valley-pivot recursion.

    ``tau <= 0`` keeps every pivot of K; otherwise only the tau_ij extreme pivots.
    ``constrained`` forbids the outer match unless the interior stays strictly
    above the fragment minimum.
    """
    xs = [int(v) for v in x]
    hs = [int(v) for v in h]
    ks = [int(v) for v in kpos]
    n = len(xs)
    INF = 4 * n + 4
    D = [[0] * (n + 1) for _ in range(n + 1)]
    nu = [0] + [_nu(r) for r in range(1, n + 1)]
    for i in range(n - 1, -1, -1):
        Di = D[i]
        Di[i + 1] = 1
        lo = bisect_right(ks, i)
        mij = min(hs[i], hs[i + 1])
        inner = hs[i + 1]
        for j in range(i + 2, n + 1):
            hj = hs[j]
            if hj < mij:
                mij = hj
            if j - 1 > i + 1 and hs[j - 1] < inner:
                inner = hs[j - 1]
            if constrained and not inner > mij:
                best = INF
            else:
                best = D[i + 1][j - 1] + _pc(xs[i], xs[j - 1])
            for k in (i + 1, i + 2, j - 2, j - 1):
                if i < k < j:
                    v = Di[k] + D[k][j]
                    if v < best:
                        best = v
            hi = bisect_left(ks, j, lo)
            cnt = hi - lo
            if cnt:
                if tau > 0:
                    e = nu[j] if i == 0 else min(nu[i], nu[j])
                    t = tau << e if e < 40 else cnt
                else:
                    t = cnt
                if 2 * t >= cnt:
                    sel = range(lo, hi)
                else:
                    sel = list(range(lo, lo + t)) + list(range(hi - t, hi))
                for q in sel:
                    k = ks[q]
                    v = Di[k] + D[k][j]
                    if v < best:
                        best = v
            Di[j] = best
    return np.array(D, dtype=np.int32)


def _rmq_arg(h, sp, lg, i, j):
    k = lg[j - i + 1]
    a = sp[k][i]
    b = sp[k][j - (1 << k) + 1]
    return a if h[a] <= h[b] else b


def agd(x, h, kpos, tau, d, sp, lg):
    """Top-down AGD with hash-map memo.  Returns (value, states, hard_calls).

    ``sp`` is the argmin sparse table over ``h`` (smallest index on ties) and
    ``lg`` the floor-log table.  Deep-valley states evaluate to INF = 2n + 2.
    """
    xs = [int(v) for v in x]
    hs = [int(v) for v in h]
    ks = [int(v) for v in kpos]
    sp = [list(map(int, row)) for row in sp]
    lg = [int(v) for v in lg]
    n = len(xs)
    INF = 2 * n + 2
    memo = {}
    hard = 0
    N1 = n + 1

    def classify(i, j):
        # 0: deep valley, 1: easy (sole pivot returned), 2: hard
        a = _rmq_arg(hs, sp, lg, i, j)
        hij = hs[a]
        top = hs[i] if hs[i] > hs[j] else hs[j]
        if hij < top - 2 * d:
            return 0, None
        b = _rmq_arg(hs, sp, lg, i + 1, j - 1)
        if hs[b] == hij:
            return 1, b
        return 2, None

    stack = [(0, n)]
    while stack:
        i, j = stack[-1]
        key = i * N1 + j
        if key in memo:
            stack.pop()
            continue
        if j - i <= 1:
            memo[key] = j - i
            stack.pop()
            continue
        kind, k = classify(i, j)
        if kind == 0:
            memo[key] = INF
            stack.pop()
            continue
        if kind == 1:
            need = [(i, k), (k, j)]
        else:
            need = [(i + 1, j - 1)]
            piv = [p for p in (i + 1, i + 2, j - 2, j - 1) if i < p < j]
            lo = bisect_right(ks, i)
            hi = bisect_left(ks, j, lo)
            cnt = hi - lo
            if cnt:
                e = _nu(j) if i == 0 else min(_nu(i), _nu(j))
                t = tau << e if e < 40 else cnt
                if 2 * t >= cnt:
                    piv.extend(ks[lo:hi])
                else:
                    piv.extend(ks[lo:lo + t])
                    piv.extend(ks[hi - t:hi])
            for p in piv:
                need.append((i, p))
                need.append((p, j))
        missing = [s for s in need if s[0] * N1 + s[1] not in memo and s[1] - s[0] > 1]
        if missing:
            stack.extend(missing)
            continue
        stack.pop()

        def get(s):
            return s[1] - s[0] if s[1] - s[0] <= 1 else memo[s[0] * N1 + s[1]]

        if kind == 1:
            v = get(need[0]) + get(need[1])
        else:
            hard += 1
            v = get(need[0]) + _pc(xs[i], xs[j - 1])
            for q in range(1, len(need), 2):
                w = get(need[q]) + get(need[q + 1])
                if w < v:
                    v = w
        memo[key] = v if v < INF else INF
    return memo[n], len(memo), hard


def fold_rho_table(x, rho):
    xs = [int(v) for v in x]
    n = len(xs)
    F = [[0] * (n + 1) for _ in range(n + 1)]
    P = [[0] * (n + 1) for _ in range(n + 2)]
    for i in range(n - 1, -1, -1):
        Fi = F[i]
        Fi[i + 1] = 1
        Pi = P[i]
        for j in range(i + 2, n + 1):
            if xs[i] == -xs[j - 1]:
                Pi[j] = 1 + (P[i + 1][j - 1] if j - 1 > i + 1 else 0)
            best = j - i
            for k in range(i + 1, j):
                v = Fi[k] + F[k][j]
                if v < best:
                    best = v
            run = Pi[j]
            if run:
                top = 1 if rho == 0 else min(run, (j - i) // 2)
                for ell in range(1, top + 1):
                    v = rho + F[i + ell][j - ell]
                    if v < best:
                        best = v
            Fi[j] = best
    return F[0][n] if n else 0


def cover_dp(nc, pi, pj, pl, pr, pw):
    """Minimum-weight consistent decomposition over endpoint ranks 0..nc-1.

    Pair q spans ranks (pi[q], pj[q]] and leaves the interior (pl[q], pr[q]].
    """
    INF = 1 << 60
    D = np.full((nc, nc), INF, dtype=np.int64)
    buckets: dict = {}
    for q in range(len(pi)):
        buckets.setdefault((int(pi[q]), int(pj[q])), []).append(q)
    for i in range(nc - 1, -1, -1):
        D[i, i] = 0
        for j in range(i + 1, nc):
            best = INF
            for q in buckets.get((i, j), ()):
                l, r = int(pl[q]), int(pr[q])
                if l == i and r == j:
                    continue
                v = int(pw[q]) + int(D[l, r])
                if v < best:
                    best = v
            if j - i > 1:
                s = int((D[i, i + 1:j] + D[i + 1:j, j]).min())
                if s < best:
                    best = s
            D[i, j] = best
    return int(D[0, nc - 1]) if nc else 0


def rc_range(rank, lcp_sp, lg, sa_len, pos, length):
    """SA interval [lo, hi) of suffixes sharing ``length`` symbols with suffix ``pos``."""
    r0 = int(rank[pos])
    # lcp_sp[k][r] = min LCP[r .. r+2^k), LCP[r] = lcp(SA[r-1], SA[r])

    def range_min(a, b):  # min LCP[a..b], a <= b
        k = lg[b - a + 1]
        return min(lcp_sp[k][a], lcp_sp[k][b - (1 << k) + 1])

    lo_a, lo_b = 0, r0
    # smallest lo with min LCP[lo+1..r0] >= length
    while lo_a < lo_b:
        mid = (lo_a + lo_b) // 2
        if range_min(mid + 1, r0) >= length:
            lo_b = mid
        else:
            lo_a = mid + 1
    hi_a, hi_b = r0, sa_len - 1
    while hi_a < hi_b:
        mid = (hi_a + hi_b + 1) // 2
        if range_min(r0 + 1, mid) >= length:
            hi_a = mid
        else:
            hi_b = mid - 1
    return lo_a, hi_a + 1


def fold_grid(n, s, rank, lcp_sp, lg, blk):
    """Grid DP over blocks of size ``s``.  ``blk[k]`` holds sorted ranks of block k."""
    m = n // s
    N = len(rank)
    INF = 1 << 60
    lcp_sp = [list(map(int, row)) for row in lcp_sp]
    lg = [int(v) for v in lg]
    blk = [list(map(int, row)) for row in blk]
    rank = [int(v) for v in rank]
    rng = {}

    def occurs(a, b, d):
        key = (b, d)
        if key not in rng:
            rng[key] = rc_range(rank, lcp_sp, lg, N, n + (n - b * s), d * s)
        lo, hi = rng[key]
        for k in (a, a + 1):
            row = blk[k]
            q = bisect_left(row, lo)
            if q < len(row) and row[q] < hi:
                return True
        p = (a + 2) * s
        return p < n and lo <= rank[p] < hi

    D = [[INF] * (m + 1) for _ in range(m + 1)]
    for a in range(m, -1, -1):
        Da = D[a]
        Da[a] = 0
        if a < m:
            Da[a + 1] = s
        for b in range(a + 2, m + 1):
            best = INF
            for d in range(1, (b - a - 2) // 2 + 1):
                v = 12 * s + D[a + d + 2][b - d]
                if v < best and occurs(a, b, d):
                    best = v
            for c in range(a + 1, b):
                v = Da[c] + D[c][b]
                if v < best:
                    best = v
            Da[b] = best
    return D[0][m] + n % s


# ------------------------------------------------------------ window pairs

def _reduce(seq):
    st = []
    for c in seq:
        if st and st[-1] > 0 and c == -st[-1]:
            st.pop()
        else:
            st.append(c)
    return st


def ptas1(y):
    """dyck_ptas(y, eps=1) on a plain symbol sequence."""
    st = _reduce(int(c) for c in y)
    L = len(st)
    if L <= 1:
        return L
    h = [0] * (L + 1)
    for p, c in enumerate(st):
        h[p + 1] = h[p] + (1 if c > 0 else -1)
    kk = []
    for v in range(1, L):
        if h[v - 1] > h[v] < h[v + 1]:
            if not kk or kk[-1] < v - 1:
                kk.append(v - 1)
            kk += [v, v + 1]
    nk = len(kk)
    tau = 2 if nk <= 1 else max(2, math.ceil(48.0 * math.log2(nk)))
    D = pivot_table(np.array(st, dtype=np.int32), np.array(h, dtype=np.int32),
                    np.array(kk, dtype=np.int32), tau, False)
    return int(D[0, L])


class PairOracle:
    """Dyck-Approx of x[w] . x[w'] (or x[w] . rc(x[w'])) over a fixed window list."""

    def __init__(self, x, ws, we):
        xs = np.asarray(x).tolist()
        self.nt = max((abs(c) for c in xs), default=0)
        self.bal = []
        self.z, self.a, self.b, self.mm, self.ct, self.ot = [], [], [], [], [], []
        for s, e in zip(np.asarray(ws).tolist(), np.asarray(we).tolist()):
            st = _reduce(xs[s - 1:e])
            ust, cl, nm = [], [], 0
            for c in st:
                if c > 0:
                    ust.append(c)
                elif ust:
                    if c != -ust.pop():
                        nm += 1
                else:
                    cl.append(-c)
            self.z.append(st)
            bal = [0] * (self.nt + 1)
            for c in st:
                bal[abs(c)] += 1 if c > 0 else -1
            self.bal.append(bal)
            self.a.append(len(cl))
            self.b.append(len(ust))
            self.mm.append(nm)
            self.ct.append(cl)
            self.ot.append(ust)
        self.nw = len(self.z)
        self.cache = {}
        self.ptas_calls = 0

    def __len__(self):
        return self.nw

    def bounds(self, i, j, rc=False):
        bi, oi = self.b[i], self.ot[i]
        if rc:
            va, vb = self.b[j], self.a[j]
            vc = self.ot[j][::-1]
        else:
            va, vb = self.a[j], self.b[j]
            vc = self.ct[j]
        m = min(bi, va)
        cross = sum(1 for k in range(m) if oi[bi - 1 - k] != vc[k])
        A = self.a[i] + va - m
        B = vb + bi - m
        L = (A + 1) // 2 + (B + 1) // 2
        U = L + self.mm[i] + self.mm[j] + cross
        # per-type imbalance: every costly pair or deletion moves it by at most 2
        sg = -1 if rc else 1
        tb = sum(abs(p + sg * q) for p, q in zip(self.bal[i][1:], self.bal[j][1:]))
        L = max(L, (tb + 1) // 2)
        if L == 0 and U > 0:
            L = 1
        return L, U

    def _ptas(self, i, j, rc):
        key = (i, j, bool(rc))
        v = self.cache.get(key)
        if v is None:
            right = [-c for c in reversed(self.z[j])] if rc else self.z[j]
            v = ptas1(self.z[i] + right)
            self.cache[key] = v
            self.ptas_calls += 1
        return v

    def value(self, i, j, rc=False):
        lb, ub = self.bounds(i, j, rc)
        if ub <= 2 * lb:
            return ub
        return self._ptas(i, j, rc)

    def le(self, i, j, rc, T):
        lb, ub = self.bounds(i, j, rc)
        if ub <= 2 * lb:
            return ub <= T
        if lb > T:
            return False
        if 2 * ub <= T:
            return True
        return self._ptas(i, j, rc) <= T

    def scan(self, fixed, cand, T, mode, stop):
        hits = []
        for c in np.asarray(cand).tolist():
            ok = self.le(fixed, c, False, T) if mode == 0 else self.le(c, fixed, True, T)
            if ok:
                hits.append(c)
                if stop > 0 and len(hits) >= stop:
                    break
        return np.array(hits, dtype=np.int32)

    def lower_matrix(self, rows, cols, mask):
        rows = np.asarray(rows).tolist()
        cols = np.asarray(cols).tolist()
        out = np.zeros((len(rows), len(cols)), dtype=np.int32)
        for r, i in enumerate(rows):
            for q, j in enumerate(cols):
                if not mask[r, q]:
                    continue
                lb, ub = self.bounds(i, j)
                if ub <= 2 * lb:
                    out[r, q] = ub
                elif (i, j, False) in self.cache:
                    out[r, q] = self.cache[(i, j, False)]
                else:
                    out[r, q] = -lb - 1
        return out

    def bound_matrices(self, rows, cols, rc):
        rows = np.asarray(rows).tolist()
        cols = np.asarray(cols).tolist()
        shape = (len(rows), len(cols))
        ex = np.empty(shape, dtype=np.int32)
        lo = np.empty(shape, dtype=np.int32)
        hi = np.empty(shape, dtype=np.int32)
        for r, i in enumerate(rows):
            for q, j in enumerate(cols):
                lb, ub = self.bounds(i, j, rc)
                lo[r, q], hi[r, q] = lb, ub
                if ub <= 2 * lb:
                    ex[r, q] = ub
                else:
                    ex[r, q] = self.cache.get((i, j, bool(rc)), -1)
        return ex, lo, hi

    def exact_values(self, ii, jj, rc):
        """Exact dyck of each pair string (all-pivots recursion); for verification."""
        out = []
        for i, j in zip(np.asarray(ii).tolist(), np.asarray(jj).tolist()):
            right = [-c for c in reversed(self.z[j])] if rc else self.z[j]
            st = _reduce(self.z[i] + right)
            L = len(st)
            if L <= 1:
                out.append(L)
                continue
            h = [0] * (L + 1)
            for p, c in enumerate(st):
                h[p + 1] = h[p] + (1 if c > 0 else -1)
            kk = sorted({k for v in range(1, L) if h[v - 1] > h[v] < h[v + 1] for k in (v - 1, v, v + 1)})
            D = pivot_table(np.array(st, dtype=np.int32), np.array(h, dtype=np.int32),
                            np.array(kk, dtype=np.int32), 0, False)
            out.append(int(D[0, L]))
        return np.array(out, dtype=np.int32)

    def values(self, ii, jj, rc):
        return np.array([self.value(i, j, rc) for i, j in zip(np.asarray(ii).tolist(), np.asarray(jj).tolist())],
                        dtype=np.int32)


def grid_cover(nc, ks, ke, WK, js, je, WJ):
    """Min-weight cover of grid interval (0..nc-1] by window pairs; returns (value, used)."""
    ks, ke, js, je = (np.asarray(v).tolist() for v in (ks, ke, js, je))
    WK = np.asarray(WK)
    WJ = np.asarray(WJ)
    fams = []
    for s_, e_, W in ((ks, ke, WK), (js, je, WJ)):
        st = [[] for _ in range(nc)]
        en = [[] for _ in range(nc)]
        for w in range(len(s_)):
            st[s_[w]].append(w)
            en[e_[w]].append(w)
        fams.append((s_, e_, W.tolist() if W.size else [], st, en))
    INF = 1 << 60
    D = [[INF] * nc for _ in range(nc)]
    for i in range(nc):
        D[i][i] = 0

    def options(i, j):
        for f, (s_, e_, W, st, en) in enumerate(fams):
            for wa in st[i]:
                l = e_[wa]
                row = W[wa]
                for wb in en[j]:
                    wt = row[wb]
                    r = s_[wb]
                    if wt < 0 or l > r or (l == i and r == j):
                        continue
                    yield wt + D[l][r], f, wa, wb, l, r

    for i in range(nc - 1, -1, -1):
        for j in range(i + 1, nc):
            best = INF
            for k in range(i + 1, j):
                best = min(best, D[i][k] + D[k][j])
            for v, *_ in options(i, j):
                best = min(best, v)
            D[i][j] = best
    used = []
    D_arr = np.array(D, dtype=np.int64).reshape(nc, nc)
    if nc == 0 or D[0][nc - 1] >= INF:
        return None, used, D_arr
    work = [(0, nc - 1)]
    while work:
        i, j = work.pop()
        if i >= j:
            continue
        best = D[i][j]
        for v, f, wa, wb, l, r in options(i, j):
            if v == best:
                used.append((f, wa, wb))
                work.append((l, r))
                break
        else:
            for k in range(i + 1, j):
                if D[i][k] + D[k][j] == best:
                    work += [(i, k), (k, j)]
                    break
    return D[0][nc - 1], used, D_arr


def grid_outside(nc, ks, ke, WK, js, je, WJ, D):
    """O[i, j]: cheapest cover of everything outside (i..j], given (i..j] is covered as a unit."""
    INF = 1 << 60
    O = np.full((nc, nc), INF, dtype=np.int64)
    if nc == 0:
        return O
    D = np.asarray(D)
    fams = []
    for s_, e_, W in ((ks, ke, WK), (js, je, WJ)):
        s_, e_ = np.asarray(s_).tolist(), np.asarray(e_).tolist()
        W = np.asarray(W)
        by = {}
        for a in range(len(s_)):
            for b in range(len(s_)):
                if W[a, b] >= 0:
                    by.setdefault((e_[a], s_[b]), []).append((s_[a], e_[b], int(W[a, b])))
        fams.append(by)
    O[0, nc - 1] = 0
    for L in range(nc - 2, -1, -1):
        for i in range(0, nc - L):
            j = i + L
            best = INF
            for k in range(i):
                best = min(best, O[k, j] + D[k, i])
            for k in range(j + 1, nc):
                best = min(best, O[i, k] + D[j, k])
            for by in fams:
                for a, b, wt in by.get((i, j), ()):
                    if a == i and b == j:
                        continue
                    best = min(best, O[a, b] + wt)
            O[i, j] = best
    return O
