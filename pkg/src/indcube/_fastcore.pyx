# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled compute kernels: drop-in port of ``_purecore``.

Same functions, same outputs, same orderings -- including identical
greedy/augmenting tie-breaks, so the two backends return byte-identical
solver results and the parity tests can compare them wholesale.  See
``_purecore`` for the algorithm notes; only the data layout differs
(flat C arrays instead of Python lists).
"""

import os

from libc.stdlib cimport malloc, free, qsort
from libc.time cimport clock, CLOCKS_PER_SEC

from .graphs import ResourceBudgetError

BACKEND_NAME = "fast"

ctypedef unsigned long long u64

cdef extern from *:
    int __builtin_popcountll(unsigned long long) nogil

cdef int _HUGE = 1 << 30


# ---------------------------------------------------------------- enumeration

cdef int _load_adj(object adj, int n, u64* out) except -1:
    cdef int v
    for v in range(n):
        out[v] = adj[v]
    return 0


cdef int _rec_all(int n, u64* adj, u64 mask, int start, list out,
                  long long budget) except -1:
    cdef int v
    out.append(mask)
    if budget >= 0 and len(out) > budget:
        raise ResourceBudgetError(
            f"enumeration exceeded the {budget}-set budget"
        )
    for v in range(start, n):
        if not (adj[v] & mask):
            _rec_all(n, adj, mask | (<u64>1 << v), v + 1, out, budget)
    return 0


def enumerate_all(int n, adj, budget=None):
    """All independent-set bitmasks, lexicographic by vertex tuple."""
    cdef u64 cadj[64]
    cdef list out = []
    cdef long long cbudget = -1 if budget is None else budget
    _load_adj(adj, n, cadj)
    _rec_all(n, cadj, 0, 0, out, cbudget)
    return out


cdef int _rec_layer(int n, u64* adj, u64 mask, int start, int size, int r,
                    list out, long long budget) except -1:
    cdef int v
    if size == r:
        out.append(mask)
        if budget >= 0 and len(out) > budget:
            raise ResourceBudgetError(
                f"enumeration exceeded the {budget}-set budget"
            )
        return 0
    if size + (n - start) < r:
        return 0
    for v in range(start, n):
        if not (adj[v] & mask):
            _rec_layer(n, adj, mask | (<u64>1 << v), v + 1, size + 1, r,
                       out, budget)
    return 0


def enumerate_layer(int n, adj, int r, budget=None):
    """Independent sets of size exactly r, lexicographic by vertex tuple."""
    cdef u64 cadj[64]
    cdef list out = []
    cdef long long cbudget = -1 if budget is None else budget
    _load_adj(adj, n, cadj)
    if 0 <= r <= n:
        _rec_layer(n, cadj, 0, 0, 0, r, out, cbudget)
    return out


cdef void _rec_counts(int n, u64* adj, u64 mask, int start, int size,
                      long long* counts) noexcept nogil:
    cdef int v
    counts[size] += 1
    for v in range(start, n):
        if not (adj[v] & mask):
            _rec_counts(n, adj, mask | (<u64>1 << v), v + 1, size + 1, counts)


def layer_counts(int n, adj):
    """Number of independent sets of each size 0..n (no materialization)."""
    cdef u64 cadj[64]
    cdef long long ccounts[65]
    cdef int i
    _load_adj(adj, n, cadj)
    for i in range(n + 1):
        ccounts[i] = 0
    _rec_counts(n, cadj, 0, 0, 0, ccounts)
    return [ccounts[i] for i in range(n + 1)]


cdef void _rec_outdeg(int n, u64* adj, u64 mask, int start, int size, int r,
               u64 full, long long* hist) noexcept nogil:
    cdef int v, d
    cdef u64 free_bits, low
    if size == r:
        d = 0
        free_bits = full & ~mask
        while free_bits:
            low = free_bits & (~free_bits + 1)
            v = __builtin_popcountll(low - 1)
            if not (adj[v] & mask):
                d += 1
            free_bits ^= low
        hist[d] += 1
        return
    if size + (n - start) < r:
        return
    for v in range(start, n):
        if not (adj[v] & mask):
            _rec_outdeg(n, adj, mask | (<u64>1 << v), v + 1, size + 1, r,
                        full, hist)


def outdeg_histogram(int n, adj, int r):
    """hist[d] = number of independent r-sets with exactly d addable vertices."""
    cdef u64 cadj[64]
    cdef long long chist[66]
    cdef int i
    cdef u64 full = (<u64>1 << n) - 1
    _load_adj(adj, n, cadj)
    for i in range(n + 2):
        chist[i] = 0
    if 0 <= r <= n:
        _rec_outdeg(n, cadj, 0, 0, 0, r, full, chist)
    return [chist[i] for i in range(n + 2)]


# ------------------------------------------------------------- band chain cover

cdef int _cmp_u64(const void* a, const void* b) noexcept nogil:
    cdef u64 x = (<const u64*>a)[0]
    cdef u64 y = (<const u64*>b)[0]
    if x < y:
        return -1
    if x > y:
        return 1
    return 0


cdef long long _lower_bound(u64* arr, long long lo, long long hi,
                            u64 key) noexcept nogil:
    cdef long long mid
    while lo < hi:
        mid = (lo + hi) >> 1
        if arr[mid] < key:
            lo = mid + 1
        else:
            hi = mid
    return lo


cdef void _rec_collect(int n, u64* adj, u64 mask, int start, int size,
                       int r_lo, int r_hi, u64* buf, long long* cursors,
                       long long* offsets) noexcept nogil:
    cdef int v
    if size >= r_lo:
        buf[offsets[size - r_lo] + cursors[size - r_lo]] = mask
        cursors[size - r_lo] += 1
    if size == r_hi:
        return
    for v in range(start, n):
        if not (adj[v] & mask):
            _rec_collect(n, adj, mask | (<u64>1 << v), v + 1, size + 1,
                         r_lo, r_hi, buf, cursors, offsets)




cdef u64 _GOLD = <u64>0x9E3779B97F4A7C15  # 2^64 / golden ratio, odd


cdef object _audit(int n, u64* cadj, u64* masks_c, long long N,
                   long long* offsets, int L, int r_lo, long long width,
                   char* ant_flag, long long ant_count,
                   int* chain_flat, long long* chain_off,
                   int* asrc, int* in_off, int* in_arc,
                   char* marked, char* chain_seen):
    """Certificate check reading only the solver's outputs.

    Returns None on a good certificate, else a short failure reason.
    Checks what ``_purecore._audit_cover`` checks: ground set sorted/
    independent/closed under one-element removal, antichain incomparable
    (upward marking sweep), chains an exact partition into strictly
    nested chains, and the size equalities. One difference of mechanics:
    the sweep here walks the solver's one-step arc lists instead of
    re-searching each one-element removal, after first proving those
    lists ARE the one-element removals (per element: in-degree equals
    set size, every listed arc is a distinct one-bit-step subset). That
    keeps the closure precondition verified without a per-bit binary
    search over millions of elements.
    """
    cdef long long i, j, k, c, prev
    cdef int li
    cdef u64 m, w, low, sub, pm
    cdef bint tainted
    for li in range(L):
        for i in range(offsets[li], offsets[li + 1]):
            m = masks_c[i]
            if __builtin_popcountll(m) != r_lo + li:
                return "ground element in the wrong layer"
            if i > offsets[li] and masks_c[i - 1] >= m:
                return "ground set not sorted by (size, value)"
            w = m
            while w:
                low = w & (~w + 1)
                if cadj[__builtin_popcountll(low - 1)] & m:
                    return "ground element is not an independent set"
                w ^= low
    if ant_count != width or chain_off[width] != N:
        return "certificate sizes do not match the width"

    for i in range(N):
        marked[i] = 0
    for li in range(L):
        for i in range(offsets[li], offsets[li + 1]):
            tainted = False
            if li > 0:
                m = masks_c[i]
                if in_off[i + 1] - in_off[i] != r_lo + li:
                    return "band is not closed under one-element removal"
                prev = -1
                for k in range(in_off[i], in_off[i + 1]):
                    j = asrc[in_arc[k]]
                    sub = masks_c[j]
                    if (sub & ~m) or __builtin_popcountll(m ^ sub) != 1:
                        return "cover arc is not a one-element step"
                    if j <= prev:
                        return "cover arc repeated"
                    prev = j
                    if marked[j]:
                        tainted = True
                        break
            if tainted and ant_flag[i]:
                return "antichain contains a comparable pair"
            if tainted or ant_flag[i]:
                marked[i] = 1

    for i in range(N):
        chain_seen[i] = 0
    for c in range(width):
        if chain_off[c + 1] <= chain_off[c]:
            return "empty chain in the cover"
        for k in range(chain_off[c], chain_off[c + 1]):
            i = chain_flat[k]
            if i < 0 or i >= N:
                return "chain index out of range"
            if chain_seen[i]:
                return "chains overlap"
            chain_seen[i] = 1
            if k > chain_off[c]:
                pm = masks_c[chain_flat[k - 1]]
                m = masks_c[i]
                if (pm & ~m) or pm == m:
                    return "chain is not strictly nested"
    return None


def solve_band_cover(int n, adj, int r_lo, int r_hi, budget=None,
                     materialize=True):
    """Minimum chain cover / maximum antichain of a layer band.

    Same contract and same output as the pure version, computed on flat
    arrays: (masks, width, antichain_indices, chains). With
    materialize=False the certificate is audited in-core instead of
    returned and the result is (width, layer_sizes, audit_failure).
    """
    cdef u64 cadj[64]
    cdef long long lay_count[65]
    cdef long long offsets[66]
    cdef long long cursors[65]
    cdef long long ccounts[65]
    cdef int L = r_hi - r_lo + 1
    cdef long long N = 0, M = 0, i, j, e, k, a, x
    cdef int r, v, li
    cdef u64 mask, bit, cand
    _load_adj(adj, n, cadj)

    # pass 1: exact layer counts, budget check
    for i in range(n + 1):
        ccounts[i] = 0
    _rec_counts(n, cadj, 0, 0, 0, ccounts)
    for r in range(L):
        lay_count[r] = ccounts[r_lo + r] if r_lo + r <= n else 0
        N += lay_count[r]
        if budget is not None and N > budget:
            raise ResourceBudgetError(
                f"band holds more than the {budget}-element solver budget"
            )
    if N == 0:
        if materialize:
            return [], 0, [], []
        return 0, [0] * L, None
    if N >= (<long long>1) << 31:
        raise ResourceBudgetError("band too large for 32-bit indexing")

    # biggest layer, ties to the smaller size: a free lower bound on the
    # width, letting the cancelling flow stop the moment it is attained
    cdef int best_li = 0
    for r in range(1, L):
        if lay_count[r] > lay_count[best_li]:
            best_li = r

    cdef u64* masks_c = <u64*>malloc(N * sizeof(u64))
    cdef int* asrc = NULL
    cdef int* adst = NULL
    cdef int* out_off = NULL
    cdef int* out_arc = NULL
    cdef int* in_off = NULL
    cdef int* in_arc = NULL
    cdef int* tmp_cur = NULL
    cdef char* covered = NULL
    cdef int* f_split = NULL
    cdef int* f_cov = NULL
    cdef int* f_src = NULL
    cdef int* f_snk = NULL
    cdef int* cap = NULL
    cdef int* src_arc = NULL
    cdef int* snk_arc = NULL
    cdef int* src_list = NULL
    cdef int* snk_list = NULL
    cdef int* csr_off = NULL
    cdef int* csr_to = NULL
    cdef int* csr_aid = NULL
    cdef int* level = NULL
    cdef int* bfs_q = NULL
    cdef int* itc = NULL
    cdef int* dfs_node = NULL
    cdef int* dfs_pos = NULL
    cdef int* dfs_fmin = NULL
    cdef char* reach = NULL
    cdef int* out_ptr = NULL
    cdef char* seen = NULL
    cdef int* fin_cov = NULL
    cdef int* fin_src = NULL
    cdef int* chain_flat = NULL
    cdef long long* chain_off = NULL
    cdef char* ant_flag = NULL
    if masks_c == NULL:
        raise MemoryError()

    cdef int* mu_arc = NULL
    cdef int* md = NULL
    cdef int* dist = NULL
    cdef int* hk_q = NULL
    cdef int* stk_u = NULL
    cdef int* stk_k = NULL
    cdef int* stk_e = NULL
    cdef int* htab = NULL
    cdef int raw_buf[160]
    cdef int raw_len, hk_inf, dist_nil, w, hbits, hshift
    cdef long long cur, cov_base, S, T, num_nodes, t, sp, hsize, hmask, h
    cdef long long n_paths = 0, arc_total, aid, qh, qt, u, w_node
    cdef long long depth, pk, pu, reduction, sptr, width, n_phases
    cdef long long n_src = 0, n_snk = 0, bound, lt, kpos, cpos, ant_count
    cdef long long lo_beg, lo_end
    cdef int d_push, fval
    cdef bint advanced, stop_early
    cdef bint profile = bool(os.environ.get("INDCUBE_SOLVE_PROFILE"))
    cdef double t_mark = clock() / <double>CLOCKS_PER_SEC
    cdef double t_now

    try:
        # layer offsets, then one DFS filling every layer buffer
        offsets[0] = 0
        for r in range(L):
            offsets[r + 1] = offsets[r] + lay_count[r]
            cursors[r] = 0
        _rec_collect(n, cadj, 0, 0, 0, r_lo, r_hi, masks_c, cursors,
                     offsets)
        for r in range(L):
            qsort(masks_c + offsets[r], lay_count[r], sizeof(u64), _cmp_u64)
        if profile:
            t_now = clock() / <double>CLOCKS_PER_SEC
            print(f"  [solve] enum+sort: {t_now - t_mark:.3f}s  N={N}")
            t_mark = t_now

        # cover arcs i -> j (j = i plus one vertex). Counting needs no
        # lookup: layers are complete, so every independent one-vertex
        # extension from a non-top layer is present in the next one.
        M = 0
        for li in range(L - 1):
            for i in range(offsets[li], offsets[li + 1]):
                mask = masks_c[i]
                for v in range(n):
                    bit = <u64>1 << v
                    if not (mask & bit) and not (cadj[v] & mask):
                        M += 1
        if 2 * N + 2 * M + 4 * N >= (<long long>1) << 31:
            raise ResourceBudgetError("band too large for 32-bit indexing")
        if profile:
            t_now = clock() / <double>CLOCKS_PER_SEC
            print(f"  [solve] arc count: {t_now - t_mark:.3f}s  M={M}")
            t_mark = t_now
        asrc = <int*>malloc(max(M, 1) * sizeof(int))
        adst = <int*>malloc(max(M, 1) * sizeof(int))
        if asrc == NULL or adst == NULL:
            raise MemoryError()
        # target lookup via an open-addressed table per layer (the sorted
        # binary search costs ~18 probes at gnp sizes, the table ~1.2)
        hbits = 2
        for li in range(L):
            while ((<long long>1) << hbits) < 2 * lay_count[li]:
                hbits += 1
        hsize = (<long long>1) << hbits
        htab = <int*>malloc(hsize * sizeof(int))
        if htab == NULL:
            raise MemoryError()
        e = 0
        for li in range(L - 1):
            if lay_count[li + 1] == 0:
                continue
            hshift = 64
            while ((<long long>1) << (64 - hshift)) < 2 * lay_count[li + 1]:
                hshift -= 1
            hmask = ((<long long>1) << (64 - hshift)) - 1
            for j in range(hmask + 1):
                htab[j] = -1
            for j in range(offsets[li + 1], offsets[li + 2]):
                h = <long long>((masks_c[j] * _GOLD) >> hshift)
                while htab[h] >= 0:
                    h = (h + 1) & hmask
                htab[h] = <int>j
            for i in range(offsets[li], offsets[li + 1]):
                mask = masks_c[i]
                for v in range(n):
                    bit = <u64>1 << v
                    if (mask & bit) or (cadj[v] & mask):
                        continue
                    cand = mask | bit
                    h = <long long>((cand * _GOLD) >> hshift)
                    while htab[h] >= 0 and masks_c[htab[h]] != cand:
                        h = (h + 1) & hmask
                    if htab[h] >= 0:
                        asrc[e] = <int>i
                        adst[e] = htab[h]
                        e += 1
        free(htab)
        htab = NULL
        if e != M:
            raise RuntimeError("cover arc count mismatch (layer incomplete?)")
        if profile:
            t_now = clock() / <double>CLOCKS_PER_SEC
            print(f"  [solve] arc fill: {t_now - t_mark:.3f}s")
            t_mark = t_now

        # CSR adjacency of the cover digraph, arc ids ascending within
        # each node (same order as the pure version's append-built lists)
        out_off = <int*>malloc((N + 1) * sizeof(int))
        in_off = <int*>malloc((N + 1) * sizeof(int))
        out_arc = <int*>malloc(max(M, 1) * sizeof(int))
        in_arc = <int*>malloc(max(M, 1) * sizeof(int))
        tmp_cur = <int*>malloc(N * sizeof(int))
        if (out_off == NULL or in_off == NULL or out_arc == NULL
                or in_arc == NULL or tmp_cur == NULL):
            raise MemoryError()
        for i in range(N + 1):
            out_off[i] = 0
            in_off[i] = 0
        for e in range(M):
            out_off[asrc[e] + 1] += 1
            in_off[adst[e] + 1] += 1
        for i in range(N):
            out_off[i + 1] += out_off[i]
            in_off[i + 1] += in_off[i]
        for i in range(N):
            tmp_cur[i] = out_off[i]
        for e in range(M):
            out_arc[tmp_cur[asrc[e]]] = <int>e
            tmp_cur[asrc[e]] += 1
        for i in range(N):
            tmp_cur[i] = in_off[i]
        for e in range(M):
            in_arc[tmp_cur[adst[e]]] = <int>e
            tmp_cur[adst[e]] += 1
        if profile:
            t_now = clock() / <double>CLOCKS_PER_SEC
            print(f"  [solve] csr: {t_now - t_mark:.3f}s")
            t_mark = t_now

        # --- feasible flow seeding the cancelling max-flow: a maximum
        # matching between every pair of adjacent layers (Hopcroft-Karp),
        # linked into chains, each chain extended to run source-to-sink.
        # Adjacent pairs consume independent degree slots, so this seeds
        # a smallest saturated-chain partition; Dinic below still owns
        # optimality, it just starts next to (usually at) the answer.
        mu_arc = <int*>malloc(N * sizeof(int))
        md = <int*>malloc(N * sizeof(int))
        dist = <int*>malloc(N * sizeof(int))
        hk_q = <int*>malloc(N * sizeof(int))
        stk_u = <int*>malloc((N + 1) * sizeof(int))
        stk_k = <int*>malloc((N + 1) * sizeof(int))
        stk_e = <int*>malloc((N + 1) * sizeof(int))
        covered = <char*>malloc(N)  # audit scratch (zeroed there)
        f_split = <int*>malloc(N * sizeof(int))
        f_src = <int*>malloc(N * sizeof(int))
        f_snk = <int*>malloc(N * sizeof(int))
        f_cov = <int*>malloc(max(M, 1) * sizeof(int))
        if (mu_arc == NULL or md == NULL or dist == NULL or hk_q == NULL
                or stk_u == NULL or stk_k == NULL or stk_e == NULL
                or covered == NULL or f_split == NULL or f_src == NULL
                or f_snk == NULL or f_cov == NULL):
            raise MemoryError()
        hk_inf = <int>(N + 1)
        for i in range(N):
            mu_arc[i] = -1
            md[i] = -1
        for li in range(L - 1):
            lo_beg = offsets[li]
            lo_end = offsets[li + 1]
            for i in range(lo_beg, lo_end):
                for k in range(out_off[i], out_off[i + 1]):
                    e = out_arc[k]
                    if md[adst[e]] < 0:
                        mu_arc[i] = <int>e
                        md[adst[e]] = <int>i
                        break
            while True:
                qt = 0
                for i in range(lo_beg, lo_end):
                    if mu_arc[i] < 0:
                        dist[i] = 0
                        hk_q[qt] = <int>i
                        qt += 1
                    else:
                        dist[i] = hk_inf
                dist_nil = hk_inf
                qh = 0
                while qh < qt:
                    u = hk_q[qh]
                    qh += 1
                    if dist[u] >= dist_nil:
                        continue
                    for k in range(out_off[u], out_off[u + 1]):
                        w = md[adst[out_arc[k]]]
                        if w < 0:
                            if dist[u] + 1 < dist_nil:
                                dist_nil = dist[u] + 1
                        elif dist[w] == hk_inf:
                            dist[w] = dist[u] + 1
                            hk_q[qt] = w
                            qt += 1
                if dist_nil == hk_inf:
                    break
                for i in range(lo_beg, lo_end):
                    if mu_arc[i] >= 0:
                        continue
                    # alternating dfs along the level structure, iterative
                    stk_u[0] = <int>i
                    stk_k[0] = out_off[i]
                    sp = 0
                    while sp >= 0:
                        u = stk_u[sp]
                        k = stk_k[sp]
                        if k == out_off[u + 1]:
                            dist[u] = hk_inf  # dead end, prune this phase
                            sp -= 1
                            continue
                        stk_k[sp] = <int>(k + 1)
                        e = out_arc[k]
                        j = adst[e]
                        w = md[j]
                        if w < 0:
                            stk_e[sp] = <int>e
                            for t in range(sp, -1, -1):
                                mu_arc[stk_u[t]] = stk_e[t]
                                md[adst[stk_e[t]]] = stk_u[t]
                            break
                        if dist[w] == dist[u] + 1:
                            stk_e[sp] = <int>e
                            sp += 1
                            stk_u[sp] = w
                            stk_k[sp] = out_off[w]

        for i in range(N):
            f_split[i] = 1
            f_src[i] = 0
            f_snk[i] = 0
        for e in range(M):
            f_cov[e] = 0
        for i in range(N):
            if mu_arc[i] >= 0:
                f_cov[mu_arc[i]] += 1
        for i in range(N):
            if md[i] >= 0:
                continue  # interior of a chain that starts lower down
            n_paths += 1
            cur = i  # extend the chain's low end down to a source element
            while in_off[cur + 1] > in_off[cur]:
                e = in_arc[in_off[cur]]
                f_cov[e] += 1
                cur = asrc[e]
                f_split[cur] += 1
            f_src[cur] += 1
            cur = i  # follow the matching up, then extend to a sink
            while mu_arc[cur] >= 0:
                cur = adst[mu_arc[cur]]
            while out_off[cur + 1] > out_off[cur]:
                e = out_arc[out_off[cur]]
                f_cov[e] += 1
                cur = adst[e]
                f_split[cur] += 1
            f_snk[cur] += 1
        if profile:
            t_now = clock() / <double>CLOCKS_PER_SEC
            print(f"  [solve] matching: {t_now - t_mark:.3f}s"
                  f"  paths={n_paths}")
            t_mark = t_now

        # --- residual graph; arc ids match the pure build exactly:
        # split pairs (2i, 2i+1), cover pairs from cov_base, boundary
        # pairs appended per element in index order
        num_nodes = 2 * N + 2
        S = 2 * N
        T = 2 * N + 1
        src_arc = <int*>malloc(N * sizeof(int))
        snk_arc = <int*>malloc(N * sizeof(int))
        src_list = <int*>malloc(N * sizeof(int))
        snk_list = <int*>malloc(N * sizeof(int))
        if (src_arc == NULL or snk_arc == NULL or src_list == NULL
                or snk_list == NULL):
            raise MemoryError()
        cov_base = 2 * N
        n_src = 0
        n_snk = 0
        for i in range(N):
            src_arc[i] = -1
            snk_arc[i] = -1
            if in_off[i + 1] == in_off[i]:
                src_list[n_src] = <int>i
                n_src += 1
            if out_off[i + 1] == out_off[i]:
                snk_list[n_snk] = <int>i
                n_snk += 1
        arc_total = 2 * N + 2 * M + 2 * (n_src + n_snk)
        cap = <int*>malloc(arc_total * sizeof(int))
        if cap == NULL:
            raise MemoryError()
        for i in range(N):
            cap[2 * i] = _HUGE
            cap[2 * i + 1] = f_split[i] - 1
        for e in range(M):
            cap[cov_base + 2 * e] = _HUGE
            cap[cov_base + 2 * e + 1] = f_cov[e]
        aid = cov_base + 2 * M
        for i in range(N):
            if in_off[i + 1] == in_off[i]:
                src_arc[i] = <int>aid
                cap[aid] = _HUGE
                cap[aid + 1] = f_src[i]
                aid += 2
            if out_off[i + 1] == out_off[i]:
                snk_arc[i] = <int>aid
                cap[aid] = _HUGE
                cap[aid + 1] = f_snk[i]
                aid += 2

        # CSR of the residual graph, per-node arcs in the pure build's
        # traversal order (reverse insertion)
        csr_off = <int*>malloc((num_nodes + 1) * sizeof(int))
        csr_to = <int*>malloc(arc_total * sizeof(int))
        csr_aid = <int*>malloc(arc_total * sizeof(int))
        if csr_off == NULL or csr_to == NULL or csr_aid == NULL:
            raise MemoryError()
        csr_off[0] = 0
        for i in range(N):
            csr_off[2 * i + 1] = csr_off[2 * i] + 1 \
                + (in_off[i + 1] - in_off[i]) + (1 if src_arc[i] >= 0 else 0)
            csr_off[2 * i + 2] = csr_off[2 * i + 1] + 1 \
                + (out_off[i + 1] - out_off[i]) + (1 if snk_arc[i] >= 0 else 0)
        csr_off[S + 1] = csr_off[S] + n_src
        csr_off[T + 1] = csr_off[T] + n_snk
        for i in range(N):
            k = csr_off[2 * i]
            if src_arc[i] >= 0:
                csr_aid[k] = src_arc[i] + 1
                csr_to[k] = <int>S
                k += 1
            for a in range(in_off[i + 1] - 1, in_off[i] - 1, -1):
                e = in_arc[a]
                csr_aid[k] = <int>(cov_base + 2 * e + 1)
                csr_to[k] = 2 * asrc[e] + 1
                k += 1
            csr_aid[k] = <int>(2 * i)
            csr_to[k] = <int>(2 * i + 1)
            k = csr_off[2 * i + 1]
            if snk_arc[i] >= 0:
                csr_aid[k] = snk_arc[i]
                csr_to[k] = <int>T
                k += 1
            for a in range(out_off[i + 1] - 1, out_off[i] - 1, -1):
                e = out_arc[a]
                csr_aid[k] = <int>(cov_base + 2 * e)
                csr_to[k] = 2 * adst[e]
                k += 1
            csr_aid[k] = <int>(2 * i + 1)
            csr_to[k] = <int>(2 * i)
        k = csr_off[S]
        for a in range(n_src - 1, -1, -1):
            csr_aid[k] = src_arc[src_list[a]]
            csr_to[k] = 2 * src_list[a]
            k += 1
        k = csr_off[T]
        for a in range(n_snk - 1, -1, -1):
            csr_aid[k] = snk_arc[snk_list[a]] + 1
            csr_to[k] = 2 * snk_list[a] + 1
            k += 1
        if profile:
            t_now = clock() / <double>CLOCKS_PER_SEC
            print(f"  [solve] residual build: {t_now - t_mark:.3f}s"
                  f"  arcs={arc_total}")
            t_mark = t_now

        # --- Dinic, T -> S, replicating the pure control flow; stops as
        # soon as the cancelled flow reaches the biggest-layer bound
        level = <int*>malloc(num_nodes * sizeof(int))
        bfs_q = <int*>malloc(num_nodes * sizeof(int))
        itc = <int*>malloc(num_nodes * sizeof(int))
        dfs_node = <int*>malloc((num_nodes + 2) * sizeof(int))
        dfs_pos = <int*>malloc((num_nodes + 2) * sizeof(int))
        dfs_fmin = <int*>malloc((num_nodes + 2) * sizeof(int))
        if (level == NULL or bfs_q == NULL or itc == NULL or dfs_node == NULL
                or dfs_pos == NULL or dfs_fmin == NULL):
            raise MemoryError()
        bound = n_paths - lay_count[best_li]
        reduction = 0
        stop_early = reduction >= bound
        n_phases = 0
        while not stop_early:
            n_phases += 1
            for i in range(num_nodes):
                level[i] = -1
            level[T] = 0
            bfs_q[0] = <int>T
            qh = 0
            qt = 1
            lt = num_nodes  # level of S once discovered
            while qh < qt:
                u = bfs_q[qh]
                qh += 1
                if level[u] >= lt:
                    continue
                for k in range(csr_off[u], csr_off[u + 1]):
                    w_node = csr_to[k]
                    if cap[csr_aid[k]] > 0 and level[w_node] < 0:
                        level[w_node] = level[u] + 1
                        if w_node == S:
                            lt = level[w_node]
                        bfs_q[qt] = <int>w_node
                        qt += 1
            if level[S] < 0:
                break
            for i in range(num_nodes):
                itc[i] = csr_off[i]
            while True:
                # one dfs(T, HUGE) invocation
                depth = 0
                dfs_node[0] = <int>T
                dfs_fmin[0] = _HUGE
                d_push = 0
                while True:
                    u = dfs_node[depth]
                    if u == S:
                        d_push = dfs_fmin[depth]
                        for k in range(depth, 0, -1):
                            e = csr_aid[dfs_pos[k]]
                            cap[e] -= d_push
                            cap[e ^ 1] += d_push
                        break
                    kpos = itc[u]
                    advanced = False
                    while kpos < csr_off[u + 1]:
                        w_node = csr_to[kpos]
                        e = csr_aid[kpos]
                        if cap[e] > 0 and level[w_node] == level[u] + 1:
                            depth += 1
                            dfs_node[depth] = <int>w_node
                            dfs_pos[depth] = <int>kpos
                            fval = dfs_fmin[depth - 1]
                            if cap[e] < fval:
                                fval = cap[e]
                            dfs_fmin[depth] = fval
                            advanced = True
                            break
                        kpos += 1
                        itc[u] = <int>kpos
                    if advanced:
                        continue
                    if depth == 0:
                        d_push = 0
                        break
                    pk = dfs_pos[depth]
                    depth -= 1
                    pu = dfs_node[depth]
                    itc[pu] = <int>(pk + 1)
                if d_push == 0:
                    break
                reduction += d_push
                if reduction >= bound:
                    stop_early = True
                    break
        if profile:
            t_now = clock() / <double>CLOCKS_PER_SEC
            print(f"  [solve] dinic: {t_now - t_mark:.3f}s"
                  f"  cancelled={reduction}  phases={n_phases}")
            t_mark = t_now

        width = n_paths - reduction

        # --- antichain: the biggest layer when the bound was attained,
        # else read off the sink side of the residual graph
        ant_flag = <char*>malloc(N)
        if ant_flag == NULL:
            raise MemoryError()
        for i in range(N):
            ant_flag[i] = 0
        ant_count = 0
        if reduction == bound:
            for i in range(offsets[best_li], offsets[best_li + 1]):
                ant_flag[i] = 1
            ant_count = lay_count[best_li]
        else:
            reach = <char*>malloc(num_nodes)
            if reach == NULL:
                raise MemoryError()
            for i in range(num_nodes):
                reach[i] = 0
            reach[T] = 1
            bfs_q[0] = <int>T
            qh = 0
            qt = 1
            while qh < qt:
                u = bfs_q[qh]
                qh += 1
                for k in range(csr_off[u], csr_off[u + 1]):
                    w_node = csr_to[k]
                    if cap[csr_aid[k]] > 0 and not reach[w_node]:
                        reach[w_node] = 1
                        bfs_q[qt] = <int>w_node
                        qt += 1
            for i in range(N):
                if reach[2 * i + 1] and not reach[2 * i]:
                    ant_flag[i] = 1
                    ant_count += 1

        # --- chain partition from the final flow's path decomposition
        fin_cov = <int*>malloc(max(M, 1) * sizeof(int))
        fin_src = <int*>malloc(N * sizeof(int))
        out_ptr = <int*>malloc(N * sizeof(int))
        seen = <char*>malloc(N)
        chain_flat = <int*>malloc(N * sizeof(int))
        chain_off = <long long*>malloc((width + 1) * sizeof(long long))
        if (fin_cov == NULL or fin_src == NULL or out_ptr == NULL
                or seen == NULL or chain_flat == NULL or chain_off == NULL):
            raise MemoryError()
        for e in range(M):
            fin_cov[e] = cap[cov_base + 2 * e + 1]
        for i in range(N):
            fin_src[i] = cap[src_arc[i] + 1] if src_arc[i] >= 0 else 0
            out_ptr[i] = out_off[i]
            seen[i] = 0
        chain_off[0] = 0
        cpos = 0
        sptr = 0
        for j in range(width):
            while fin_src[sptr] == 0:
                sptr += 1
            cur = sptr
            fin_src[cur] -= 1
            raw_buf[0] = <int>cur
            raw_len = 1
            while True:
                k = out_ptr[cur]
                while k < out_off[cur + 1] and fin_cov[out_arc[k]] == 0:
                    k += 1
                out_ptr[cur] = <int>k
                if k == out_off[cur + 1]:
                    break
                fin_cov[out_arc[k]] -= 1
                cur = adst[out_arc[k]]
                raw_buf[raw_len] = <int>cur
                raw_len += 1
            for a in range(raw_len):
                x = raw_buf[a]
                if not seen[x]:
                    seen[x] = 1
                    chain_flat[cpos] = <int>x
                    cpos += 1
            chain_off[j + 1] = cpos

        if materialize:
            masks = [masks_c[i] for i in range(N)]
            antichain = [i for i in range(N) if ant_flag[i]]
            chains = [
                [chain_flat[k] for k in range(chain_off[j], chain_off[j + 1])]
                for j in range(width)
            ]
            if profile:
                t_now = clock() / <double>CLOCKS_PER_SEC
                print(f"  [solve] decomp+pyout: {t_now - t_mark:.3f}s")
            return masks, width, antichain, chains

        # reuse solver scratch for the audit's two mark arrays
        audit = _audit(n, cadj, masks_c, N, offsets, L, r_lo, width,
                       ant_flag, ant_count, chain_flat, chain_off,
                       asrc, in_off, in_arc, covered, seen)
        if profile:
            t_now = clock() / <double>CLOCKS_PER_SEC
            print(f"  [solve] decomp+audit: {t_now - t_mark:.3f}s")
        return width, [lay_count[r] for r in range(L)], audit
    finally:
        free(masks_c)
        free(asrc)
        free(adst)
        free(htab)
        free(mu_arc)
        free(md)
        free(dist)
        free(hk_q)
        free(stk_u)
        free(stk_k)
        free(stk_e)
        free(out_off)
        free(out_arc)
        free(in_off)
        free(in_arc)
        free(tmp_cur)
        free(covered)
        free(f_split)
        free(f_cov)
        free(f_src)
        free(f_snk)
        free(cap)
        free(src_arc)
        free(snk_arc)
        free(src_list)
        free(snk_list)
        free(csr_off)
        free(csr_to)
        free(csr_aid)
        free(level)
        free(bfs_q)
        free(itc)
        free(dfs_node)
        free(dfs_pos)
        free(dfs_fmin)
        free(reach)
        free(out_ptr)
        free(seen)
        free(fin_cov)
        free(fin_src)
        free(chain_flat)
        free(chain_off)
        free(ant_flag)
