"""Pure-Python compute kernels: enumeration and band chain-cover solving.

This module is the reference implementation; ``_fastcore`` is an
algorithmically identical compiled port. Both expose the same functions
over plain ints/lists so the selection in ``backend`` is transparent.

Enumeration: label-order backtracking over vertices, pruning with
adjacency bitmasks. Preorder emission gives ascending lexicographic
order of sorted vertex tuples, which is the package-wide output order.

Band solving: the ground set is the independent sets with sizes in
[r_lo, r_hi] ordered by strict containment. Because independence is
hereditary, single-element-addition arcs inside the band transitively
generate exactly that order, so a minimum chain cover can be computed as
a minimum feasible flow on the (small, sparse) cover digraph instead of
a matching on the (huge, dense) transitive closure:

  nodes   in(i) -> out(i) per element (lower bound 1: every element must
          be covered), out(i) -> in(j) per cover arc, a source feeding
          the minimal elements and a sink draining the maximal ones; all
          upper bounds infinite.
  solve   seed a feasible flow from maximum matchings between adjacent
          layers (Hopcroft-Karp; adjacent pairs consume independent
          degree slots, so this is a smallest partition into saturated
          chains — in practice optimal or within a hair), then cancel
          any surplus by running max-flow from sink to source on the
          residual graph (Dinic). The final flow value is the minimum
          number of containment chains covering every element, which
          equals the maximum antichain size: an antichain is a lower
          bound for any covering chain family, and de-overlapping a
          minimum path
          decomposition (keep first occurrence of each element) yields
          that many *disjoint* non-empty chains, a matching upper bound.
  dual    the antichain itself is read off the final residual graph:
          with T* = nodes reachable from the sink, the elements whose
          split arc crosses into T* (in(i) outside, out(i) inside) are
          pairwise incomparable and there are exactly `width` of them.

Every solve is certified before a report is built: either downstream in
width.py (full reports) or by the in-core audit (materialize=False, used
by the bulk experiments where converting millions of masks to Python
objects would dominate the runtime). The audit re-reads only the solver's
outputs and additionally verifies the band-completeness precondition the
sweep relies on.
"""
from __future__ import annotations

from .graphs import ResourceBudgetError

BACKEND_NAME = "pure"

_HUGE = 1 << 30


# ---------------------------------------------------------------- enumeration

def enumerate_all(n: int, adj, budget: int | None = None) -> list[int]:
    """All independent-set bitmasks, lexicographic by vertex tuple."""
    out: list[int] = []
    cap = budget if budget is not None else float("inf")

    def rec(mask: int, start: int) -> None:
        out.append(mask)
        if len(out) > cap:
            raise ResourceBudgetError(
                f"enumeration exceeded the {budget}-set budget"
            )
        for v in range(start, n):
            if not (adj[v] & mask):
                rec(mask | (1 << v), v + 1)

    rec(0, 0)
    return out


def enumerate_layer(n: int, adj, r: int, budget: int | None = None) -> list[int]:
    """Independent sets of size exactly r, lexicographic by vertex tuple."""
    out: list[int] = []
    cap = budget if budget is not None else float("inf")

    def rec(mask: int, start: int, size: int) -> None:
        if size == r:
            out.append(mask)
            if len(out) > cap:
                raise ResourceBudgetError(
                    f"enumeration exceeded the {budget}-set budget"
                )
            return
        if size + (n - start) < r:
            return
        for v in range(start, n):
            if not (adj[v] & mask):
                rec(mask | (1 << v), v + 1, size + 1)

    if 0 <= r <= n:
        rec(0, 0, 0)
    return out


def layer_counts(n: int, adj) -> list[int]:
    """Number of independent sets of each size 0..n (no materialization)."""
    counts = [0] * (n + 1)

    def rec(mask: int, start: int, size: int) -> None:
        counts[size] += 1
        for v in range(start, n):
            if not (adj[v] & mask):
                rec(mask | (1 << v), v + 1, size + 1)

    rec(0, 0, 0)
    return counts


def outdeg_histogram(n: int, adj, r: int) -> list[int]:
    """hist[d] = number of independent r-sets with exactly d addable vertices."""
    hist = [0] * (n + 2)
    full = (1 << n) - 1

    def outdeg(mask: int) -> int:
        d = 0
        free = full & ~mask
        while free:
            low = free & -free
            v = low.bit_length() - 1
            if not (adj[v] & mask):
                d += 1
            free ^= low
        return d

    for mask in enumerate_layer(n, adj, r):
        hist[outdeg(mask)] += 1
    return hist


# ------------------------------------------------------------- band chain cover

def solve_band_cover(n: int, adj, r_lo: int, r_hi: int,
                     budget: int | None = None, materialize: bool = True):
    """Minimum chain cover / maximum antichain of a layer band.

    Returns (masks, width, antichain_indices, chains) where `masks` is
    the ground set sorted by (size, mask), `antichain_indices` indexes a
    maximum antichain into it, and `chains` is a list of exactly `width`
    index lists partitioning range(len(masks)), each strictly increasing
    by containment. Raises ResourceBudgetError past `budget` elements.

    With materialize=False the certificate is audited in-core instead of
    returned, and the result is the light tuple (width, layer_sizes,
    audit_failure) with audit_failure None on a good certificate.
    """
    layers = []
    total = 0
    for r in range(r_lo, r_hi + 1):
        lay = sorted(enumerate_layer(n, adj, r))
        total += len(lay)
        if budget is not None and total > budget:
            raise ResourceBudgetError(
                f"band holds more than the {budget}-element solver budget"
            )
        layers.append(lay)
    masks = [m for lay in layers for m in lay]
    N = len(masks)
    if N == 0:
        return ([], 0, [], []) if materialize else (0, [0] * len(layers), None)
    lay_sizes = [len(lay) for lay in layers]
    # biggest layer, ties to the smaller size: a free lower bound on the
    # width, letting the cancelling flow stop the moment it is attained
    best_li = max(range(len(layers)), key=lambda k: (lay_sizes[k], -k))

    # Layer index offsets, and per-layer position lookup for arc targets.
    offsets = []
    off = 0
    for lay in layers:
        offsets.append(off)
        off += len(lay)
    pos_in_layer = [
        {m: k for k, m in enumerate(lay)} for lay in layers
    ]

    # Cover arcs i -> j (j = i plus one vertex), CSR both directions.
    asrc: list[int] = []
    adst: list[int] = []
    sizes = [bin(m).count("1") for m in masks]
    for i in range(N):
        li = sizes[i] - r_lo
        if li + 1 >= len(layers):
            continue
        mask = masks[i]
        lookup = pos_in_layer[li + 1]
        nxt_off = offsets[li + 1]
        for v in range(n):
            bit = 1 << v
            if mask & bit or adj[v] & mask:
                continue
            j = lookup.get(mask | bit)
            if j is not None:
                asrc.append(i)
                adst.append(nxt_off + j)
    M = len(asrc)

    out_head = [[] for _ in range(N)]
    in_head = [[] for _ in range(N)]
    for e in range(M):
        out_head[asrc[e]].append(e)
        in_head[adst[e]].append(e)

    # --- feasible flow seeding the cancelling max-flow: a maximum
    # matching between every pair of adjacent layers (Hopcroft-Karp),
    # linked into chains, each chain then extended to run source-to-sink.
    # Adjacent-layer matchings use independent degree slots, so this
    # seeds N - sum(matchings) paths; the max-flow below still owns
    # optimality, it just starts next to (usually at) the answer.
    INF = N + 1
    mu_arc = [-1] * N  # matched out-arc of an element, or -1
    md = [-1] * N      # matched lower partner of an element, or -1
    dist = [INF] * N
    bfs_q = [0] * N
    stack_u = [0] * (N + 1)
    stack_k = [0] * (N + 1)
    stack_e = [0] * (N + 1)
    for li in range(len(layers) - 1):
        lo_beg = offsets[li]
        lo_end = offsets[li] + lay_sizes[li]
        for i in range(lo_beg, lo_end):
            for e in out_head[i]:
                if md[adst[e]] < 0:
                    mu_arc[i] = e
                    md[adst[e]] = i
                    break
        while True:
            qt = 0
            for i in range(lo_beg, lo_end):
                if mu_arc[i] < 0:
                    dist[i] = 0
                    bfs_q[qt] = i
                    qt += 1
                else:
                    dist[i] = INF
            dist_nil = INF
            qh = 0
            while qh < qt:
                u = bfs_q[qh]
                qh += 1
                if dist[u] >= dist_nil:
                    continue
                for e in out_head[u]:
                    w = md[adst[e]]
                    if w < 0:
                        if dist[u] + 1 < dist_nil:
                            dist_nil = dist[u] + 1
                    elif dist[w] == INF:
                        dist[w] = dist[u] + 1
                        bfs_q[qt] = w
                        qt += 1
            if dist_nil == INF:
                break
            for i0 in range(lo_beg, lo_end):
                if mu_arc[i0] >= 0:
                    continue
                # alternating dfs along the level structure, iterative
                stack_u[0] = i0
                stack_k[0] = 0
                sp = 0
                while sp >= 0:
                    u = stack_u[sp]
                    k = stack_k[sp]
                    if k == len(out_head[u]):
                        dist[u] = INF  # dead end, prune for this phase
                        sp -= 1
                        continue
                    stack_k[sp] = k + 1
                    e = out_head[u][k]
                    j = adst[e]
                    w = md[j]
                    if w < 0:
                        stack_e[sp] = e
                        for t in range(sp, -1, -1):
                            et = stack_e[t]
                            mu_arc[stack_u[t]] = et
                            md[adst[et]] = stack_u[t]
                        break
                    if dist[w] == dist[u] + 1:
                        stack_e[sp] = e
                        sp += 1
                        stack_u[sp] = w
                        stack_k[sp] = 0

    f_split = [1] * N
    f_cov = [0] * M
    f_src = [0] * N
    f_snk = [0] * N
    n_paths = 0
    for i in range(N):
        if mu_arc[i] >= 0:
            f_cov[mu_arc[i]] += 1
    for i in range(N):
        if md[i] >= 0:
            continue  # interior of a chain that starts lower down
        n_paths += 1
        cur = i  # extend the chain's low end down to a source element
        while in_head[cur]:
            e = in_head[cur][0]
            f_cov[e] += 1
            cur = asrc[e]
            f_split[cur] += 1
        f_src[cur] += 1
        cur = i  # follow the matching up, then extend to a sink element
        while mu_arc[cur] >= 0:
            cur = adst[mu_arc[cur]]
        while out_head[cur]:
            e = out_head[cur][0]
            f_cov[e] += 1
            cur = adst[e]
            f_split[cur] += 1
        f_snk[cur] += 1

    # --- residual graph for the cancelling max-flow (sink -> source)
    num_nodes = 2 * N + 2
    S = 2 * N
    T = 2 * N + 1
    head = [-1] * num_nodes
    nxt: list[int] = []
    ato: list[int] = []
    cap: list[int] = []

    def add_pair(x: int, y: int, cap_fwd: int, cap_bwd: int) -> None:
        for node, other, c in ((x, y, cap_fwd), (y, x, cap_bwd)):
            ato.append(other)
            cap.append(c)
            nxt.append(head[node])
            head[node] = len(ato) - 1

    for i in range(N):
        add_pair(2 * i, 2 * i + 1, _HUGE, f_split[i] - 1)
    cov_base = len(ato)
    for e in range(M):
        add_pair(2 * asrc[e] + 1, 2 * adst[e], _HUGE, f_cov[e])
    src_arc = [-1] * N
    snk_arc = [-1] * N
    for i in range(N):
        if not in_head[i]:
            add_pair(S, 2 * i, _HUGE, f_src[i])
            src_arc[i] = len(ato) - 2
        if not out_head[i]:
            add_pair(2 * i + 1, T, _HUGE, f_snk[i])
            snk_arc[i] = len(ato) - 2

    bound = n_paths - lay_sizes[best_li]
    reduction = _dinic(num_nodes, head, nxt, ato, cap, T, S, bound)
    width = n_paths - reduction

    if reduction == bound:
        # width equals the biggest layer, which is itself a maximum
        # antichain -- no need to read one off the residual graph
        antichain = list(range(offsets[best_li],
                               offsets[best_li] + lay_sizes[best_li]))
    else:
        # --- antichain from the sink side of the residual graph
        reach = _residual_reach(num_nodes, head, nxt, ato, cap, T)
        antichain = [
            i for i in range(N) if reach[2 * i + 1] and not reach[2 * i]
        ]

    # --- chain partition from the final flow's path decomposition
    fin_cov = [cap[cov_base + 2 * e + 1] for e in range(M)]
    fin_src = [cap[src_arc[i] + 1] if src_arc[i] >= 0 else 0 for i in range(N)]
    out_ptr = [0] * N
    chains: list[list[int]] = []
    seen = [False] * N
    starts = [i for i in range(N) if fin_src[i] > 0]
    sptr = 0
    for _ in range(width):
        while fin_src[starts[sptr]] == 0:
            sptr += 1
        cur = starts[sptr]
        fin_src[cur] -= 1
        raw = [cur]
        while True:
            lst = out_head[cur]
            k = out_ptr[cur]
            while k < len(lst) and fin_cov[lst[k]] == 0:
                k += 1
            out_ptr[cur] = k
            if k == len(lst):
                break
            fin_cov[lst[k]] -= 1
            cur = adst[lst[k]]
            raw.append(cur)
        chain = [x for x in raw if not seen[x]]
        for x in chain:
            seen[x] = True
        chains.append(chain)
    if materialize:
        return masks, width, antichain, chains
    audit = _audit_cover(n, adj, masks, r_lo, width, antichain, chains)
    return width, lay_sizes, audit


def _audit_cover(n, adj, masks, r_lo, width, antichain, chains):
    """Certificate check reading only the solver's outputs.

    Returns None on a good certificate, else a short failure reason.
    Verifies the ground set itself (sorted, independent, subset-closed
    down to the band floor), the antichain (no comparable pair, via an
    upward marking sweep), and the chain cover (exact partition into
    strictly nested chains), plus the size equalities that make the pair
    a proof of optimality.
    """
    N = len(masks)
    sizes = [m.bit_count() for m in masks]
    for i in range(1, N):
        if sizes[i] < sizes[i - 1] or (
                sizes[i] == sizes[i - 1] and masks[i] <= masks[i - 1]):
            return "ground set not sorted by (size, value)"
    for i in range(N):
        m = masks[i]
        w = m
        while w:
            low = w & -w
            if adj[low.bit_length() - 1] & m:
                return "ground element is not an independent set"
            w ^= low
    if len(antichain) != width or len(chains) != width:
        return "certificate sizes do not match the width"

    pos = {m: i for i, m in enumerate(masks)}
    in_ant = bytearray(N)
    for i in antichain:
        if not 0 <= i < N:
            return "antichain index out of range"
        if in_ant[i]:
            return "antichain repeats an element"
        in_ant[i] = 1
    marked = bytearray(N)
    for i in range(N):
        m = masks[i]
        tainted = False
        if sizes[i] > r_lo:
            w = m
            while w:
                low = w & -w
                j = pos.get(m ^ low)
                if j is None:
                    return "band is not closed under one-element removal"
                if marked[j]:
                    tainted = True
                    break
                w ^= low
        if tainted and in_ant[i]:
            return "antichain contains a comparable pair"
        if tainted or in_ant[i]:
            marked[i] = 1

    seen = bytearray(N)
    for ch in chains:
        if not ch:
            return "empty chain in the cover"
        prev = -1
        for idx in ch:
            if not 0 <= idx < N:
                return "chain index out of range"
            if seen[idx]:
                return "chains overlap"
            seen[idx] = 1
            m = masks[idx]
            if prev >= 0 and (prev & ~m or prev == m):
                return "chain is not strictly nested"
            prev = m
    if sum(seen) != N:
        return "chains do not cover the ground set"
    return None


def _dinic(num_nodes, head, nxt, ato, cap, s, t, stop_after=None) -> int:
    """Max-flow on an arc-paired residual graph (arc e pairs with e^1).

    `stop_after` is a caller-proved upper bound on this flow's value;
    the search returns the moment it is reached, skipping provably
    fruitless later phases.
    """
    total = 0
    if stop_after is not None and total >= stop_after:
        return total
    level = [0] * num_nodes
    while True:
        for i in range(num_nodes):
            level[i] = -1
        level[s] = 0
        q = [s]
        qi = 0
        lt = num_nodes  # level of t once discovered; nothing deeper helps
        while qi < len(q):
            u = q[qi]
            qi += 1
            if level[u] >= lt:
                continue
            e = head[u]
            while e != -1:
                v = ato[e]
                if cap[e] > 0 and level[v] < 0:
                    level[v] = level[u] + 1
                    if v == t:
                        lt = level[v]
                    q.append(v)
                e = nxt[e]
        if level[t] < 0:
            return total
        it = list(head)

        def dfs(u: int, f: int) -> int:
            if u == t:
                return f
            e = it[u]
            while e != -1:
                v = ato[e]
                if cap[e] > 0 and level[v] == level[u] + 1:
                    d = dfs(v, f if f < cap[e] else cap[e])
                    if d:
                        cap[e] -= d
                        cap[e ^ 1] += d
                        it[u] = e
                        return d
                e = nxt[e]
                it[u] = e
            return 0

        while True:
            pushed = dfs(s, _HUGE)
            if not pushed:
                break
            total += pushed
            if stop_after is not None and total >= stop_after:
                return total


def _residual_reach(num_nodes, head, nxt, ato, cap, start):
    reach = [False] * num_nodes
    reach[start] = True
    q = [start]
    qi = 0
    while qi < len(q):
        u = q[qi]
        qi += 1
        e = head[u]
        while e != -1:
            v = ato[e]
            if cap[e] > 0 and not reach[v]:
                reach[v] = True
                q.append(v)
            e = nxt[e]
    return reach
