# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True, initializedcheck=False
"""Compiled kernels.  Mirrors _pykernels exactly."""

import numpy as np
cimport numpy as cnp
from libc.stdint cimport int64_t, int32_t
from libcpp.vector cimport vector
from libcpp.unordered_map cimport unordered_map
from libc.math cimport ceil, log2

cnp.import_array()

BACKEND = "cython"


cdef inline int _pc(int a, int b) nogil:
    cdef int wrong = (a < 0) + (b > 0)
    if wrong:
        return wrong
    return 1 if b != -a else 0


cdef inline int _nu(int64_t r) nogil:
    cdef int k = 0
    while (r & 1) == 0:
        r >>= 1
        k += 1
    return k


cdef inline Py_ssize_t _lower(const int32_t[:] a, Py_ssize_t lo, Py_ssize_t hi, int64_t v) nogil:
    # first index in [lo, hi) with a[idx] >= v
    cdef Py_ssize_t mid
    while lo < hi:
        mid = (lo + hi) >> 1
        if a[mid] < v:
            lo = mid + 1
        else:
            hi = mid
    return lo


cdef inline Py_ssize_t _upper(const int32_t[:] a, Py_ssize_t lo, Py_ssize_t hi, int64_t v) nogil:
    # first index in [lo, hi) with a[idx] > v
    cdef Py_ssize_t mid
    while lo < hi:
        mid = (lo + hi) >> 1
        if a[mid] <= v:
            lo = mid + 1
        else:
            hi = mid
    return lo


def cubic_table(x_in):
    cdef const int32_t[:] x = np.ascontiguousarray(x_in, dtype=np.int32)
    cdef Py_ssize_t n = x.shape[0]
    D_arr = np.zeros((n + 1, n + 1), dtype=np.int32)
    cdef int32_t[:, :] D = D_arr
    cdef Py_ssize_t i, j, k
    cdef int64_t best, v
    with nogil:
        for i in range(n - 1, -1, -1):
            D[i, i + 1] = 1
            for j in range(i + 2, n + 1):
                best = D[i + 1, j - 1] + _pc(x[i], x[j - 1])
                for k in range(i + 1, j):
                    v = D[i, k] + D[k, j]
                    if v < best:
                        best = v
                D[i, j] = best
    return D_arr


cdef inline Py_ssize_t _upper_p(const int32_t* a, Py_ssize_t lo, Py_ssize_t hi, int64_t v) nogil:
    cdef Py_ssize_t mid
    while lo < hi:
        mid = (lo + hi) >> 1
        if a[mid] <= v:
            lo = mid + 1
        else:
            hi = mid
    return lo


cdef inline Py_ssize_t _lower_p(const int32_t* a, Py_ssize_t lo, Py_ssize_t hi, int64_t v) nogil:
    cdef Py_ssize_t mid
    while lo < hi:
        mid = (lo + hi) >> 1
        if a[mid] < v:
            lo = mid + 1
        else:
            hi = mid
    return lo


cdef void _pivot_fill(const int32_t* x, const int32_t* h, const int32_t* ks, Py_ssize_t nk,
                      Py_ssize_t n, int64_t tau, bint constrained, int32_t* D) nogil:
    # D is a dense (n+1) x (n+1) row-major table
    cdef Py_ssize_t W = n + 1
    cdef Py_ssize_t i, j, q, lo, hi, cnt
    cdef int64_t best, v, t, k
    cdef int e, e2
    cdef int mij, inner
    cdef int64_t cands[4]
    cdef int32_t* Di
    for i in range(n + 1):
        D[i * W + i] = 0
    for i in range(n - 1, -1, -1):
        Di = D + i * W
        Di[i + 1] = 1
        mij = h[i] if h[i] < h[i + 1] else h[i + 1]
        inner = h[i + 1]
        lo = _upper_p(ks, 0, nk, i)
        for j in range(i + 2, n + 1):
            if h[j] < mij:
                mij = h[j]
            if j - 1 > i + 1 and h[j - 1] < inner:
                inner = h[j - 1]
            if constrained and not inner > mij:
                best = 4 * n + 4
            else:
                best = D[(i + 1) * W + j - 1] + _pc(x[i], x[j - 1])
            cands[0] = i + 1
            cands[1] = i + 2
            cands[2] = j - 2
            cands[3] = j - 1
            for q in range(4):
                k = cands[q]
                if i < k < j:
                    v = Di[k] + D[k * W + j]
                    if v < best:
                        best = v
            hi = _lower_p(ks, lo, nk, j)
            cnt = hi - lo
            if cnt > 0:
                if tau > 0:
                    if i == 0:
                        e = _nu(j)
                    else:
                        e = _nu(i)
                        e2 = _nu(j)
                        if e2 < e:
                            e = e2
                    t = (tau << e) if e < 40 else cnt
                else:
                    t = cnt
                if 2 * t >= cnt:
                    for q in range(lo, hi):
                        k = ks[q]
                        v = Di[k] + D[k * W + j]
                        if v < best:
                            best = v
                else:
                    for q in range(lo, lo + t):
                        k = ks[q]
                        v = Di[k] + D[k * W + j]
                        if v < best:
                            best = v
                    for q in range(hi - t, hi):
                        k = ks[q]
                        v = Di[k] + D[k * W + j]
                        if v < best:
                            best = v
            Di[j] = <int32_t>best


def pivot_table(x_in, h_in, k_in, int64_t tau, bint constrained):
    x_arr = np.ascontiguousarray(x_in, dtype=np.int32)
    h_arr = np.ascontiguousarray(h_in, dtype=np.int32)
    k_arr = np.ascontiguousarray(k_in, dtype=np.int32)
    if k_arr.size == 0:
        k_arr = np.zeros(1, dtype=np.int32)
        nk = 0
    else:
        nk = k_arr.size
    cdef const int32_t[:] x = x_arr
    cdef const int32_t[:] h = h_arr
    cdef const int32_t[:] ks = k_arr
    cdef Py_ssize_t n = x.shape[0]
    D_arr = np.zeros((n + 1, n + 1), dtype=np.int32)
    cdef int32_t[:, :] D = D_arr
    cdef Py_ssize_t nkc = nk
    if n == 0:
        return D_arr
    with nogil:
        _pivot_fill(&x[0], &h[0], &ks[0], nkc, n, tau, constrained, &D[0, 0])
    return D_arr


cdef inline Py_ssize_t _rmq(const int32_t[:] h, const int32_t[:, :] sp, const int32_t[:] lg,
                            Py_ssize_t i, Py_ssize_t j) nogil:
    cdef int k = lg[j - i + 1]
    cdef Py_ssize_t a = sp[k, i]
    cdef Py_ssize_t b = sp[k, j - (1 << k) + 1]
    return a if h[a] <= h[b] else b


def agd(x_in, h_in, k_in, int64_t tau, int64_t d, sp_in, lg_in):
    cdef const int32_t[:] x = np.ascontiguousarray(x_in, dtype=np.int32)
    cdef const int32_t[:] h = np.ascontiguousarray(h_in, dtype=np.int32)
    cdef const int32_t[:] ks = np.ascontiguousarray(k_in, dtype=np.int32)
    cdef const int32_t[:, :] sp = np.ascontiguousarray(sp_in, dtype=np.int32)
    cdef const int32_t[:] lg = np.ascontiguousarray(lg_in, dtype=np.int32)
    cdef int64_t n = x.shape[0]
    cdef Py_ssize_t nk = ks.shape[0]
    cdef int64_t N1 = n + 1
    cdef int64_t INF = 2 * n + 2
    cdef unordered_map[int64_t, int64_t] memo
    cdef vector[int64_t] stack
    cdef vector[int64_t] need
    cdef int64_t key, i, j, k, a, b, hij, top, v, w, t, cnt, lo, hi, q, p, ci, cj
    cdef int64_t hard = 0
    cdef int kind, e
    cdef bint missing
    cdef int64_t cands[4]
    with nogil:
        stack.push_back(n)
        while not stack.empty():
            key = stack.back()
            i = key // N1
            j = key % N1
            if memo.count(key):
                stack.pop_back()
                continue
            if j - i <= 1:
                memo[key] = j - i
                stack.pop_back()
                continue
            a = _rmq(h, sp, lg, i, j)
            hij = h[a]
            top = h[i] if h[i] > h[j] else h[j]
            if hij < top - 2 * d:
                memo[key] = INF
                stack.pop_back()
                continue
            b = _rmq(h, sp, lg, i + 1, j - 1)
            need.clear()
            if h[b] == hij:
                kind = 1
                need.push_back(i * N1 + b)
                need.push_back(b * N1 + j)
            else:
                kind = 2
                need.push_back((i + 1) * N1 + j - 1)
                cands[0] = i + 1
                cands[1] = i + 2
                cands[2] = j - 2
                cands[3] = j - 1
                for q in range(4):
                    p = cands[q]
                    if i < p < j:
                        need.push_back(i * N1 + p)
                        need.push_back(p * N1 + j)
                lo = _upper(ks, 0, nk, i)
                hi = _lower(ks, lo, nk, j)
                cnt = hi - lo
                if cnt > 0:
                    if i == 0:
                        e = _nu(j)
                    else:
                        e = _nu(i)
                        if _nu(j) < e:
                            e = _nu(j)
                    t = tau << e if e < 40 else cnt
                    if 2 * t >= cnt:
                        for q in range(lo, hi):
                            need.push_back(i * N1 + ks[q])
                            need.push_back(ks[q] * N1 + j)
                    else:
                        for q in range(lo, lo + t):
                            need.push_back(i * N1 + ks[q])
                            need.push_back(ks[q] * N1 + j)
                        for q in range(hi - t, hi):
                            need.push_back(i * N1 + ks[q])
                            need.push_back(ks[q] * N1 + j)
            missing = False
            for q in range(<int64_t>need.size()):
                ci = need[q] // N1
                cj = need[q] % N1
                if cj - ci > 1 and not memo.count(need[q]):
                    stack.push_back(need[q])
                    missing = True
            if missing:
                continue
            stack.pop_back()
            if kind == 1:
                v = 0
                for q in range(2):
                    ci = need[q] // N1
                    cj = need[q] % N1
                    v += (cj - ci) if cj - ci <= 1 else memo[need[q]]
            else:
                hard += 1
                ci = need[0] // N1
                cj = need[0] % N1
                v = ((cj - ci) if cj - ci <= 1 else memo[need[0]]) + _pc(x[i], x[j - 1])
                q = 1
                while q < <int64_t>need.size():
                    ci = need[q] // N1
                    cj = need[q] % N1
                    w = (cj - ci) if cj - ci <= 1 else memo[need[q]]
                    ci = need[q + 1] // N1
                    cj = need[q + 1] % N1
                    w += (cj - ci) if cj - ci <= 1 else memo[need[q + 1]]
                    if w < v:
                        v = w
                    q += 2
            memo[key] = v if v < INF else INF
    return int(memo[n]), int(memo.size()), int(hard)


def fold_rho_table(x_in, int64_t rho):
    cdef const int32_t[:] x = np.ascontiguousarray(x_in, dtype=np.int32)
    cdef Py_ssize_t n = x.shape[0]
    if n == 0:
        return 0
    F_arr = np.zeros((n + 1, n + 1), dtype=np.int64)
    P_arr = np.zeros((n + 2, n + 1), dtype=np.int32)
    cdef int64_t[:, :] F = F_arr
    cdef int32_t[:, :] P = P_arr
    cdef Py_ssize_t i, j, k, ell, top, run
    cdef int64_t best, v
    with nogil:
        for i in range(n - 1, -1, -1):
            F[i, i + 1] = 1
            for j in range(i + 2, n + 1):
                if x[i] == -x[j - 1]:
                    P[i, j] = 1 + (P[i + 1, j - 1] if j - 1 > i + 1 else 0)
                best = j - i
                for k in range(i + 1, j):
                    v = F[i, k] + F[k, j]
                    if v < best:
                        best = v
                run = P[i, j]
                if run:
                    if rho == 0:
                        top = 1
                    else:
                        top = run if run < (j - i) // 2 else (j - i) // 2
                    for ell in range(1, top + 1):
                        v = rho + F[i + ell, j - ell]
                        if v < best:
                            best = v
                F[i, j] = best
    return int(F[0, n])


def cover_dp(Py_ssize_t nc, pi_in, pj_in, pl_in, pr_in, pw_in):
    cdef const int64_t[:] pi = np.ascontiguousarray(pi_in, dtype=np.int64)
    cdef const int64_t[:] pj = np.ascontiguousarray(pj_in, dtype=np.int64)
    cdef const int64_t[:] pl = np.ascontiguousarray(pl_in, dtype=np.int64)
    cdef const int64_t[:] pr = np.ascontiguousarray(pr_in, dtype=np.int64)
    cdef const int64_t[:] pw = np.ascontiguousarray(pw_in, dtype=np.int64)
    if nc == 0:
        return 0
    cdef Py_ssize_t np_ = pi.shape[0]
    # CSR buckets keyed by i * nc + j
    keys = np.asarray(pi_in, dtype=np.int64) * nc + np.asarray(pj_in, dtype=np.int64)
    order_arr = np.argsort(keys, kind="stable").astype(np.int64)
    sk = keys[order_arr]
    start_arr = np.searchsorted(sk, np.arange(nc * nc + 1, dtype=np.int64)).astype(np.int64)
    cdef int64_t[:] order = order_arr
    cdef int64_t[:] start = start_arr
    cdef int64_t INF = (<int64_t>1) << 60
    D_arr = np.full((nc, nc), INF, dtype=np.int64)
    cdef int64_t[:, :] D = D_arr
    cdef Py_ssize_t i, j, k, q, qq, l, r
    cdef int64_t best, v
    with nogil:
        for i in range(nc - 1, -1, -1):
            D[i, i] = 0
            for j in range(i + 1, nc):
                best = INF
                for qq in range(start[i * nc + j], start[i * nc + j + 1]):
                    q = order[qq]
                    l = pl[q]
                    r = pr[q]
                    if l == i and r == j:
                        continue
                    v = pw[q] + D[l, r]
                    if v < best:
                        best = v
                for k in range(i + 1, j):
                    v = D[i, k] + D[k, j]
                    if v < best:
                        best = v
                D[i, j] = best
    return int(D[0, nc - 1])


cdef inline int64_t _lcp_min(const int32_t[:, :] sp, const int32_t[:] lg, Py_ssize_t a, Py_ssize_t b) nogil:
    cdef int k = lg[b - a + 1]
    cdef int64_t u = sp[k, a]
    cdef int64_t w = sp[k, b - (1 << k) + 1]
    return u if u < w else w


cdef void _rc_range(const int32_t[:] rank, const int32_t[:, :] sp, const int32_t[:] lg,
                    Py_ssize_t N, Py_ssize_t pos, int64_t length,
                    Py_ssize_t* out_lo, Py_ssize_t* out_hi) nogil:
    cdef Py_ssize_t r0 = rank[pos]
    cdef Py_ssize_t a = 0, b = r0, mid
    while a < b:
        mid = (a + b) >> 1
        if _lcp_min(sp, lg, mid + 1, r0) >= length:
            b = mid
        else:
            a = mid + 1
    out_lo[0] = a
    a = r0
    b = N - 1
    while a < b:
        mid = (a + b + 1) >> 1
        if _lcp_min(sp, lg, r0 + 1, mid) >= length:
            a = mid
        else:
            b = mid - 1
    out_hi[0] = a + 1


def rc_range(rank_in, sp_in, lg_in, Py_ssize_t N, Py_ssize_t pos, int64_t length):
    cdef const int32_t[:] rank = np.ascontiguousarray(rank_in, dtype=np.int32)
    cdef const int32_t[:, :] sp = np.ascontiguousarray(sp_in, dtype=np.int32)
    cdef const int32_t[:] lg = np.ascontiguousarray(lg_in, dtype=np.int32)
    cdef Py_ssize_t lo, hi
    _rc_range(rank, sp, lg, N, pos, length, &lo, &hi)
    return int(lo), int(hi)


def fold_grid(Py_ssize_t n, Py_ssize_t s, rank_in, sp_in, lg_in, blk_in):
    cdef const int32_t[:] rank = np.ascontiguousarray(rank_in, dtype=np.int32)
    cdef const int32_t[:, :] sp = np.ascontiguousarray(sp_in, dtype=np.int32)
    cdef const int32_t[:] lg = np.ascontiguousarray(lg_in, dtype=np.int32)
    cdef Py_ssize_t m = n // s
    cdef Py_ssize_t N = rank.shape[0]
    blk_arr = np.ascontiguousarray(blk_in, dtype=np.int32)
    if blk_arr.size == 0:
        blk_arr = np.zeros((1, 1), dtype=np.int32)
    cdef const int32_t[:, :] blk = blk_arr
    cdef int64_t INF = (<int64_t>1) << 60
    D_arr = np.full((m + 1, m + 1), INF, dtype=np.int64)
    lo_arr = np.full((m + 1, m + 1), -1, dtype=np.int64)
    hi_arr = np.full((m + 1, m + 1), -1, dtype=np.int64)
    cdef int64_t[:, :] D = D_arr
    cdef int64_t[:, :] RL = lo_arr
    cdef int64_t[:, :] RH = hi_arr
    cdef Py_ssize_t a, b, c, d, k, q, p, lo, hi
    cdef int64_t best, v
    cdef bint hit
    with nogil:
        for a in range(m, -1, -1):
            D[a, a] = 0
            if a < m:
                D[a, a + 1] = s
            for b in range(a + 2, m + 1):
                best = INF
                for d in range(1, (b - a - 2) // 2 + 1):
                    v = 12 * s + D[a + d + 2, b - d]
                    if v >= best:
                        continue
                    if RL[b, d] < 0:
                        _rc_range(rank, sp, lg, N, n + (n - b * s), d * s, &lo, &hi)
                        RL[b, d] = lo
                        RH[b, d] = hi
                    lo = RL[b, d]
                    hi = RH[b, d]
                    hit = False
                    for k in range(a, a + 2):
                        q = _lower(blk[k], 0, s, lo)
                        if q < s and blk[k, q] < hi:
                            hit = True
                            break
                    if not hit:
                        p = (a + 2) * s
                        if p < n and lo <= rank[p] < hi:
                            hit = True
                    if hit:
                        best = v
                for c in range(a + 1, b):
                    v = D[a, c] + D[c, b]
                    if v < best:
                        best = v
                D[a, b] = best
    return int(D[0, m]) + n % s


# ------------------------------------------------------------ window pairs

cdef int32_t _ptas1(vector[int32_t]& y, vector[int32_t]& stk, vector[int32_t]& hh,
                    vector[int32_t]& kk, vector[int32_t]& D) nogil:
    """dyck_ptas(y, eps=1) on a raw buffer."""
    cdef Py_ssize_t p, L, v, nk
    cdef int32_t c
    cdef int64_t tau
    stk.clear()
    for p in range(<Py_ssize_t>y.size()):
        c = y[p]
        if stk.size() > 0 and stk.back() > 0 and c == -stk.back():
            stk.pop_back()
        else:
            stk.push_back(c)
    L = stk.size()
    if L <= 1:
        return <int32_t>L
    hh.resize(L + 1)
    hh[0] = 0
    for p in range(L):
        hh[p + 1] = hh[p] + (1 if stk[p] > 0 else -1)
    kk.clear()
    for v in range(1, L):
        if hh[v - 1] > hh[v] and hh[v] < hh[v + 1]:
            if kk.size() == 0 or kk.back() < v - 1:
                kk.push_back(<int32_t>(v - 1))
            kk.push_back(<int32_t>v)
            kk.push_back(<int32_t>(v + 1))
    nk = kk.size()
    if nk <= 1:
        tau = 2
    else:
        tau = <int64_t>ceil(48.0 * log2(<double>nk))
        if tau < 2:
            tau = 2
    if nk == 0:
        kk.push_back(0)
    D.resize((L + 1) * (L + 1))
    _pivot_fill(stk.data(), hh.data(), kk.data(), nk, L, tau, False, D.data())
    return D[L]


def ptas1(y_in):
    cdef vector[int32_t] y, stk, hh, kk, D
    for c in np.asarray(y_in, dtype=np.int32).tolist():
        y.push_back(c)
    return int(_ptas1(y, stk, hh, kk, D))


cdef class PairOracle:
    """Dyck-Approx of x[w] . x[w'] (or x[w] . rc(x[w'])) over a fixed window list."""

    cdef vector[int32_t] zoff, z, a, b, mm, coff, ooff, ct, ot, bal
    cdef Py_ssize_t nt
    cdef unordered_map[int64_t, int32_t] cache
    cdef vector[int32_t] buf, stk, hh, kk, D
    cdef Py_ssize_t nw
    cdef public int64_t ptas_calls

    def __init__(self, x_in, ws_in, we_in):
        cdef const int32_t[:] x = np.ascontiguousarray(x_in, dtype=np.int32)
        cdef const int32_t[:] ws = np.ascontiguousarray(ws_in, dtype=np.int32)
        cdef const int32_t[:] we = np.ascontiguousarray(we_in, dtype=np.int32)
        cdef Py_ssize_t w, p
        cdef int32_t c, top
        cdef vector[int32_t] st, ust, cl
        cdef int32_t nm
        self.nw = ws.shape[0]
        self.ptas_calls = 0
        self.nt = 0
        for p in range(x.shape[0]):
            if abs(x[p]) > self.nt:
                self.nt = abs(x[p])
        self.bal.assign(self.nw * (self.nt + 1), 0)
        with nogil:
            for w in range(self.nw):
                st.clear()
                for p in range(ws[w] - 1, we[w]):
                    c = x[p]
                    if st.size() > 0 and st.back() > 0 and c == -st.back():
                        st.pop_back()
                    else:
                        st.push_back(c)
                self.zoff.push_back(<int32_t>self.z.size())
                ust.clear()
                cl.clear()
                nm = 0
                for p in range(<Py_ssize_t>st.size()):
                    c = st[p]
                    self.z.push_back(c)
                    if c > 0:
                        self.bal[w * (self.nt + 1) + c] += 1
                    else:
                        self.bal[w * (self.nt + 1) - c] -= 1
                    if c > 0:
                        ust.push_back(c)
                    elif ust.size() > 0:
                        top = ust.back()
                        ust.pop_back()
                        if c != -top:
                            nm += 1
                    else:
                        cl.push_back(-c)
                self.a.push_back(<int32_t>cl.size())
                self.b.push_back(<int32_t>ust.size())
                self.mm.push_back(nm)
                self.coff.push_back(<int32_t>self.ct.size())
                self.ooff.push_back(<int32_t>self.ot.size())
                for p in range(<Py_ssize_t>cl.size()):
                    self.ct.push_back(cl[p])
                for p in range(<Py_ssize_t>ust.size()):
                    self.ot.push_back(ust[p])
            self.zoff.push_back(<int32_t>self.z.size())

    def __len__(self):
        return self.nw

    cdef inline void _bounds(self, Py_ssize_t i, Py_ssize_t j, bint rc, int32_t* lb, int32_t* ub) nogil:
        cdef int32_t va, vb, m, k, cross, A, B, L, U, tu, tv, tb, dk
        cdef Py_ssize_t t, bi0, bj0
        cdef int32_t bi = self.b[i]
        cdef int32_t oi = self.ooff[i]
        if rc:
            va = self.b[j]
            vb = self.a[j]
        else:
            va = self.a[j]
            vb = self.b[j]
        m = bi if bi < va else va
        cross = 0
        for k in range(m):
            tu = self.ot[oi + bi - 1 - k]
            if rc:
                tv = self.ot[self.ooff[j] + va - 1 - k]
            else:
                tv = self.ct[self.coff[j] + k]
            if tu != tv:
                cross += 1
        A = self.a[i] + va - m
        B = vb + bi - m
        L = (A + 1) // 2 + (B + 1) // 2
        U = L + self.mm[i] + self.mm[j] + cross
        # per-type imbalance: every costly pair or deletion moves it by at most 2
        tb = 0
        bi0 = i * (self.nt + 1)
        bj0 = j * (self.nt + 1)
        for t in range(1, self.nt + 1):
            if rc:
                dk = self.bal[bi0 + t] - self.bal[bj0 + t]
            else:
                dk = self.bal[bi0 + t] + self.bal[bj0 + t]
            tb += dk if dk > 0 else -dk
        tb = (tb + 1) // 2
        if tb > L:
            L = tb
        if L == 0 and U > 0:
            L = 1
        lb[0] = L
        ub[0] = U

    cdef int32_t _ptas(self, Py_ssize_t i, Py_ssize_t j, bint rc) nogil:
        cdef int64_t key = (<int64_t>i * self.nw + j) * 2 + rc
        cdef unordered_map[int64_t, int32_t].iterator it = self.cache.find(key)
        if it != self.cache.end():
            return self.cache[key]
        cdef Py_ssize_t p
        self.buf.clear()
        for p in range(self.zoff[i], self.zoff[i + 1]):
            self.buf.push_back(self.z[p])
        if rc:
            for p in range(self.zoff[j + 1] - 1, self.zoff[j] - 1, -1):
                self.buf.push_back(-self.z[p])
        else:
            for p in range(self.zoff[j], self.zoff[j + 1]):
                self.buf.push_back(self.z[p])
        cdef int32_t v = _ptas1(self.buf, self.stk, self.hh, self.kk, self.D)
        self.cache[key] = v
        self.ptas_calls += 1
        return v

    cdef int32_t _value(self, Py_ssize_t i, Py_ssize_t j, bint rc) nogil:
        cdef int32_t lb, ub
        self._bounds(i, j, rc, &lb, &ub)
        if ub <= 2 * lb:
            return ub
        return self._ptas(i, j, rc)

    cdef bint _le(self, Py_ssize_t i, Py_ssize_t j, bint rc, int64_t T) nogil:
        cdef int32_t lb, ub
        self._bounds(i, j, rc, &lb, &ub)
        if ub <= 2 * lb:
            return ub <= T
        if lb > T:
            return False
        if 2 * ub <= T:
            return True
        return self._ptas(i, j, rc) <= T

    def value(self, Py_ssize_t i, Py_ssize_t j, bint rc=False):
        return int(self._value(i, j, rc))

    def le(self, Py_ssize_t i, Py_ssize_t j, bint rc, int64_t T):
        return bool(self._le(i, j, rc, T))

    def bounds(self, Py_ssize_t i, Py_ssize_t j, bint rc=False):
        cdef int32_t lb, ub
        self._bounds(i, j, rc, &lb, &ub)
        return int(lb), int(ub)

    def scan(self, Py_ssize_t fixed, cand_in, int64_t T, int mode, Py_ssize_t stop):
        """Candidates c with Approx <= T; mode 0 pairs (fixed, c), mode 1 pairs (c, rc(fixed)).

        With stop > 0 the scan ends after that many hits."""
        cdef const int32_t[:] cand = np.ascontiguousarray(cand_in, dtype=np.int32)
        cdef vector[int32_t] hits
        cdef Py_ssize_t q
        cdef bint ok
        with nogil:
            for q in range(cand.shape[0]):
                if mode == 0:
                    ok = self._le(fixed, cand[q], False, T)
                else:
                    ok = self._le(cand[q], fixed, True, T)
                if ok:
                    hits.push_back(cand[q])
                    if stop > 0 and <Py_ssize_t>hits.size() >= stop:
                        break
        out = np.empty(hits.size(), dtype=np.int32)
        for q in range(<Py_ssize_t>hits.size()):
            out[q] = hits[q]
        return out

    def lower_matrix(self, rows_in, cols_in, mask_in):
        """Where mask: exact value when the bounds settle it, else -(lower bound) - 1."""
        cdef const int32_t[:] rows = np.ascontiguousarray(rows_in, dtype=np.int32)
        cdef const int32_t[:] cols = np.ascontiguousarray(cols_in, dtype=np.int32)
        mask_arr = np.ascontiguousarray(mask_in, dtype=np.uint8)
        cdef const unsigned char[:, :] mask = mask_arr
        out_arr = np.zeros((rows.shape[0], cols.shape[0]), dtype=np.int32)
        cdef int32_t[:, :] out = out_arr
        cdef Py_ssize_t r, q
        cdef int32_t lb, ub
        cdef int64_t key
        with nogil:
            for r in range(rows.shape[0]):
                for q in range(cols.shape[0]):
                    if not mask[r, q]:
                        continue
                    self._bounds(rows[r], cols[q], False, &lb, &ub)
                    if ub <= 2 * lb:
                        out[r, q] = ub
                    else:
                        key = (<int64_t>rows[r] * self.nw + cols[q]) * 2
                        if self.cache.find(key) != self.cache.end():
                            out[r, q] = self.cache[key]
                        else:
                            out[r, q] = -lb - 1
        return out_arr

    def bound_matrices(self, rows_in, cols_in, bint rc):
        """(known value or -1, lower bound, upper bound) for every row x col pair."""
        cdef const int32_t[:] rows = np.ascontiguousarray(rows_in, dtype=np.int32)
        cdef const int32_t[:] cols = np.ascontiguousarray(cols_in, dtype=np.int32)
        shape = (rows.shape[0], cols.shape[0])
        ex_arr = np.empty(shape, dtype=np.int32)
        lb_arr = np.empty(shape, dtype=np.int32)
        ub_arr = np.empty(shape, dtype=np.int32)
        cdef int32_t[:, :] ex = ex_arr
        cdef int32_t[:, :] lo = lb_arr
        cdef int32_t[:, :] hi = ub_arr
        cdef Py_ssize_t r, q
        cdef int32_t lb, ub
        cdef int64_t key
        with nogil:
            for r in range(rows.shape[0]):
                for q in range(cols.shape[0]):
                    self._bounds(rows[r], cols[q], rc, &lb, &ub)
                    lo[r, q] = lb
                    hi[r, q] = ub
                    if ub <= 2 * lb:
                        ex[r, q] = ub
                    else:
                        key = (<int64_t>rows[r] * self.nw + cols[q]) * 2 + rc
                        if self.cache.find(key) != self.cache.end():
                            ex[r, q] = self.cache[key]
                        else:
                            ex[r, q] = -1
        return ex_arr, lb_arr, ub_arr

    cdef int32_t _exact(self, Py_ssize_t i, Py_ssize_t j, bint rc) nogil:
        cdef Py_ssize_t p, L, v, nk
        cdef int32_t c
        self.buf.clear()
        for p in range(self.zoff[i], self.zoff[i + 1]):
            self.buf.push_back(self.z[p])
        if rc:
            for p in range(self.zoff[j + 1] - 1, self.zoff[j] - 1, -1):
                self.buf.push_back(-self.z[p])
        else:
            for p in range(self.zoff[j], self.zoff[j + 1]):
                self.buf.push_back(self.z[p])
        self.stk.clear()
        for p in range(<Py_ssize_t>self.buf.size()):
            c = self.buf[p]
            if self.stk.size() > 0 and self.stk.back() > 0 and c == -self.stk.back():
                self.stk.pop_back()
            else:
                self.stk.push_back(c)
        L = self.stk.size()
        if L <= 1:
            return <int32_t>L
        self.hh.resize(L + 1)
        self.hh[0] = 0
        for p in range(L):
            self.hh[p + 1] = self.hh[p] + (1 if self.stk[p] > 0 else -1)
        self.kk.clear()
        for v in range(1, L):
            if self.hh[v - 1] > self.hh[v] and self.hh[v] < self.hh[v + 1]:
                if self.kk.size() == 0 or self.kk.back() < v - 1:
                    self.kk.push_back(<int32_t>(v - 1))
                self.kk.push_back(<int32_t>v)
                self.kk.push_back(<int32_t>(v + 1))
        nk = self.kk.size()
        if nk == 0:
            self.kk.push_back(0)
        self.D.resize((L + 1) * (L + 1))
        _pivot_fill(self.stk.data(), self.hh.data(), self.kk.data(), nk, L, 0, False, self.D.data())
        return self.D[L]

    def exact_values(self, ii_in, jj_in, bint rc):
        """Exact dyck of each pair string (all-pivots recursion); for verification."""
        cdef const int32_t[:] ii = np.ascontiguousarray(ii_in, dtype=np.int32)
        cdef const int32_t[:] jj = np.ascontiguousarray(jj_in, dtype=np.int32)
        out_arr = np.empty(ii.shape[0], dtype=np.int32)
        cdef int32_t[:] out = out_arr
        cdef Py_ssize_t q
        with nogil:
            for q in range(ii.shape[0]):
                out[q] = self._exact(ii[q], jj[q], rc)
        return out_arr

    def values(self, ii_in, jj_in, bint rc):
        cdef const int32_t[:] ii = np.ascontiguousarray(ii_in, dtype=np.int32)
        cdef const int32_t[:] jj = np.ascontiguousarray(jj_in, dtype=np.int32)
        out_arr = np.empty(ii.shape[0], dtype=np.int32)
        cdef int32_t[:] out = out_arr
        cdef Py_ssize_t q
        with nogil:
            for q in range(ii.shape[0]):
                out[q] = self._value(ii[q], jj[q], rc)
        return out_arr


def grid_cover(Py_ssize_t nc, ks_in, ke_in, WK_in, js_in, je_in, WJ_in):
    """Min-weight cover of grid interval (0..nc-1] by window pairs; returns (value, used).

    Pairs come from two families with dense weight matrices (negative = absent).
    ``used`` lists (family, a, b) for the pairs of one optimal decomposition."""
    cdef const int32_t[:] ks = np.ascontiguousarray(ks_in, dtype=np.int32)
    cdef const int32_t[:] ke = np.ascontiguousarray(ke_in, dtype=np.int32)
    cdef const int32_t[:] js = np.ascontiguousarray(js_in, dtype=np.int32)
    cdef const int32_t[:] je = np.ascontiguousarray(je_in, dtype=np.int32)
    cdef const int32_t[:, :] WK = np.ascontiguousarray(WK_in, dtype=np.int32)
    cdef const int32_t[:, :] WJ = np.ascontiguousarray(WJ_in, dtype=np.int32)
    cdef Py_ssize_t nK = ks.shape[0], nJ = js.shape[0]
    cdef vector[vector[int32_t]] kst, ken, jst, jen
    kst.resize(nc)
    ken.resize(nc)
    jst.resize(nc)
    jen.resize(nc)
    cdef Py_ssize_t w
    for w in range(nK):
        kst[ks[w]].push_back(<int32_t>w)
        ken[ke[w]].push_back(<int32_t>w)
    for w in range(nJ):
        jst[js[w]].push_back(<int32_t>w)
        jen[je[w]].push_back(<int32_t>w)
    cdef int64_t INF = 1 << 60
    cdef vector[int64_t] D
    D.assign(nc * nc, INF)
    cdef Py_ssize_t i, j, k, p, q, wa, wb, l, r
    cdef int64_t best, v
    cdef int32_t wt
    with nogil:
        for i in range(nc):
            D[i * nc + i] = 0
        for i in range(nc - 1, -1, -1):
            for j in range(i + 1, nc):
                best = INF
                for k in range(i + 1, j):
                    v = D[i * nc + k] + D[k * nc + j]
                    if v < best:
                        best = v
                for p in range(<Py_ssize_t>kst[i].size()):
                    wa = kst[i][p]
                    l = ke[wa]
                    for q in range(<Py_ssize_t>ken[j].size()):
                        wb = ken[j][q]
                        wt = WK[wa, wb]
                        if wt < 0:
                            continue
                        r = ks[wb]
                        if l > r or (l == i and r == j):
                            continue
                        v = wt + D[l * nc + r]
                        if v < best:
                            best = v
                for p in range(<Py_ssize_t>jst[i].size()):
                    wa = jst[i][p]
                    l = je[wa]
                    for q in range(<Py_ssize_t>jen[j].size()):
                        wb = jen[j][q]
                        wt = WJ[wa, wb]
                        if wt < 0:
                            continue
                        r = js[wb]
                        if l > r or (l == i and r == j):
                            continue
                        v = wt + D[l * nc + r]
                        if v < best:
                            best = v
                D[i * nc + j] = best
    used = []
    D_arr = np.empty((nc, nc), dtype=np.int64)
    for i in range(nc):
        for j in range(nc):
            D_arr[i, j] = D[i * nc + j]
    if nc == 0 or D[nc - 1] >= INF:
        return None, used, D_arr
    work = [(0, nc - 1)]
    cdef bint found
    while work:
        i, j = work.pop()
        if i >= j:
            continue
        best = D[i * nc + j]
        found = False
        for p in range(<Py_ssize_t>kst[i].size()):
            wa = kst[i][p]
            l = ke[wa]
            for q in range(<Py_ssize_t>ken[j].size()):
                wb = ken[j][q]
                wt = WK[wa, wb]
                r = ks[wb]
                if wt < 0 or l > r or (l == i and r == j):
                    continue
                if wt + D[l * nc + r] == best:
                    used.append((0, wa, wb))
                    work.append((l, r))
                    found = True
                    break
            if found:
                break
        if not found:
            for p in range(<Py_ssize_t>jst[i].size()):
                wa = jst[i][p]
                l = je[wa]
                for q in range(<Py_ssize_t>jen[j].size()):
                    wb = jen[j][q]
                    wt = WJ[wa, wb]
                    r = js[wb]
                    if wt < 0 or l > r or (l == i and r == j):
                        continue
                    if wt + D[l * nc + r] == best:
                        used.append((1, wa, wb))
                        work.append((l, r))
                        found = True
                        break
                if found:
                    break
        if not found:
            for k in range(i + 1, j):
                if D[i * nc + k] + D[k * nc + j] == best:
                    work.append((i, k))
                    work.append((k, j))
                    break
    return int(D[nc - 1]), used, D_arr


def grid_outside(Py_ssize_t nc, ks_in, ke_in, WK_in, js_in, je_in, WJ_in, D_in):
    """O[i, j]: cheapest cover of everything outside (i..j], given (i..j] is covered as a unit."""
    cdef const int32_t[:] ks = np.ascontiguousarray(ks_in, dtype=np.int32)
    cdef const int32_t[:] ke = np.ascontiguousarray(ke_in, dtype=np.int32)
    cdef const int32_t[:] js = np.ascontiguousarray(js_in, dtype=np.int32)
    cdef const int32_t[:] je = np.ascontiguousarray(je_in, dtype=np.int32)
    cdef const int32_t[:, :] WK = np.ascontiguousarray(WK_in, dtype=np.int32)
    cdef const int32_t[:, :] WJ = np.ascontiguousarray(WJ_in, dtype=np.int32)
    cdef const int64_t[:, :] D = np.ascontiguousarray(D_in, dtype=np.int64)
    cdef int64_t INF = 1 << 60
    O_arr = np.full((nc, nc), INF, dtype=np.int64)
    cdef int64_t[:, :] O = O_arr
    # pairs grouped by interior (end of left window, start of right window)
    cdef vector[vector[int32_t]] kin_l, jin_l
    kin_l.resize(nc)
    jin_l.resize(nc)
    cdef Py_ssize_t w, i, j, k, p, q, wa, wb, L
    for w in range(ks.shape[0]):
        kin_l[ke[w]].push_back(<int32_t>w)
    for w in range(js.shape[0]):
        jin_l[je[w]].push_back(<int32_t>w)
    cdef vector[vector[int32_t]] kin_r, jin_r
    kin_r.resize(nc)
    jin_r.resize(nc)
    for w in range(ks.shape[0]):
        kin_r[ks[w]].push_back(<int32_t>w)
    for w in range(js.shape[0]):
        jin_r[js[w]].push_back(<int32_t>w)
    cdef int64_t best, v
    cdef int32_t wt
    if nc == 0:
        return O_arr
    with nogil:
        O[0, nc - 1] = 0
        for L in range(nc - 2, -1, -1):
            for i in range(0, nc - L):
                j = i + L
                if L == nc - 1:
                    continue
                best = INF
                for k in range(0, i):
                    v = O[k, j] + D[k, i]
                    if v < best:
                        best = v
                for k in range(j + 1, nc):
                    v = O[i, k] + D[j, k]
                    if v < best:
                        best = v
                for p in range(<Py_ssize_t>kin_l[i].size()):
                    wa = kin_l[i][p]
                    for q in range(<Py_ssize_t>kin_r[j].size()):
                        wb = kin_r[j][q]
                        wt = WK[wa, wb]
                        if wt < 0 or (ks[wa] == i and ke[wb] == j):
                            continue
                        v = O[ks[wa], ke[wb]] + wt
                        if v < best:
                            best = v
                for p in range(<Py_ssize_t>jin_l[i].size()):
                    wa = jin_l[i][p]
                    for q in range(<Py_ssize_t>jin_r[j].size()):
                        wb = jin_r[j][q]
                        wt = WJ[wa, wb]
                        if wt < 0 or (js[wa] == i and je[wb] == j):
                            continue
                        v = O[js[wa], je[wb]] + wt
                        if v < best:
                            best = v
                O[i, j] = best
    return O_arr
