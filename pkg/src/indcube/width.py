"""Maximum antichains with machine-checked Dilworth certificates.

Two solver routes, one certificate contract:

* :func:`max_antichain` works on an arbitrary family: it materializes the
  strict-containment order, runs Hopcroft--Karp on the element-split
  bipartite graph, and reads the antichain off the matching's minimum
  vertex cover.  Quadratic-ish; budgeted at ``MATCH_BUDGET`` elements.
* :func:`max_antichain_band` works on a run of consecutive layers of a
  single graph (the full cube is the band 0..n).  Because independence
  is hereditary, every containment inside such a band factors through
  one-vertex additions that stay inside the band, so a minimum chain
  cover can be found as a minimum feasible flow over the one-add cover
  digraph -- far smaller than the transitive closure.  Handled by the
  selected backend (compiled when available).

Every report is verified before it is returned: the antichain really is
an antichain, the chains really are nested and partition the ground set,
and their counts agree.  That equality *is* the optimality proof, so a
report that comes back at all is correct regardless of solver internals.
"""
from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations
from math import comb

from . import backend, cube, graphs
from .cube import Family, render_set, set_to_vertices
from .graphs import Graph, ResourceBudgetError

# Element budget for the generic matching route (transitive closure is
# materialized as bit-rows: memory grows with the square of this).
MATCH_BUDGET = 20_000

# Element budget for the layered band route.  The compiled backend is
# comfortable here; the pure-Python fallback handles the same sizes but
# takes minutes rather than seconds past ~10^5 elements.
FLOW_BUDGET = 2_000_000

# Pairwise antichain checking is quadratic; past this size the band
# route verifies by a linear sweep over one-vertex-removal predecessors.
PAIRWISE_CHECK_LIMIT = 4096


@dataclass(frozen=True)
class ContainmentOrder:
    """A family's strict-containment relation, transitively closed.

    ``succ[i]`` is a bit-row over element indices: bit j set means
    ``elements[i]`` is a proper subset of ``elements[j]``.  Elements are
    indexed in (cardinality, vertex-tuple) order so all successors of an
    element sit strictly to its right.
    """

    elements: tuple[int, ...]
    succ: tuple[int, ...]
    related_pairs: int

    def __len__(self) -> int:
        return len(self.elements)


@dataclass(frozen=True)
class WidthReport:
    """A width value together with its Dilworth certificate.

    ``width == len(antichain) == len(chain_cover)`` and the certificate
    has been machine-checked, so the value is self-validating.
    ``ratio`` compares the width against the largest layer of the solved
    ground set.
    """

    width: int
    antichain: Family
    chain_cover: tuple[tuple[int, ...], ...]
    max_layer: int
    ratio: float
    certificate_ok: bool

    def to_dict(self) -> dict:
        return {
            "schema_version": 1,
            "width": self.width,
            "max_layer": self.max_layer,
            "ratio": self.ratio,
            "certificate_ok": self.certificate_ok,
            "antichain": [render_set(m) for m in self.antichain],
            "chains": [[render_set(m) for m in ch] for ch in self.chain_cover],
        }

    def to_text(self) -> str:
        lines = [
            f"width: {self.width}",
            f"max_layer: {self.max_layer}",
            f"ratio: {self.ratio:.6f}",
            f"certificate_ok: {self.certificate_ok}",
            "antichain:",
        ]
        lines.extend("  " + render_set(m) for m in self.antichain)
        lines.append("chains:")
        lines.extend(
            "  " + " < ".join(render_set(m) for m in ch) for ch in self.chain_cover
        )
        return "\n".join(lines)


def build_order(elements: Family) -> ContainmentOrder:
    """Materialize the strict-containment order of a family.

    Subset tests run column-wise: for each vertex, a bit-row marks the
    elements containing it, and the supersets of a set are the AND of
    its vertices' rows.  Only strictly-larger cardinalities are kept, so
    the relation is irreflexive and (being genuine containment)
    transitive.  Memory is quadratic in the family size; the matching
    solver's ``MATCH_BUDGET`` is the intended scale.
    """
    n = elements.graph.n
    elems = sorted(elements.members, key=lambda m: (m.bit_count(), set_to_vertices(m)))
    N = len(elems)
    full = (1 << N) - 1

    # first index strictly past each element's own cardinality block
    bigger_start = [N] * N
    for i in range(N - 1, -1, -1):
        if i + 1 < N and elems[i].bit_count() == elems[i + 1].bit_count():
            bigger_start[i] = bigger_start[i + 1]
        else:
            bigger_start[i] = i + 1

    cols = [0] * n
    for j, m in enumerate(elems):
        bit = 1 << j
        w = m
        while w:
            low = w & -w
            cols[low.bit_length() - 1] |= bit
            w ^= low

    succ = []
    related = 0
    for i, m in enumerate(elems):
        row = full ^ ((1 << bigger_start[i]) - 1)
        w = m
        while w and row:
            low = w & -w
            row &= cols[low.bit_length() - 1]
            w ^= low
        succ.append(row)
        related += row.bit_count()
    return ContainmentOrder(tuple(elems), tuple(succ), related)


def _hopcroft_karp(n_elems: int, succ: tuple[int, ...]) -> tuple[list[int], list[int]]:
    """Maximum matching in the element-split bipartite graph.

    Left copy i may be matched to right copy j whenever i < j in the
    order (succ bit set).  Returns (match_left, match_right), -1 for
    unmatched.  Iterative throughout: augmenting paths can be long even
    in shallow posets.
    """
    INF = n_elems + 1
    match_l = [-1] * n_elems
    match_r = [-1] * n_elems
    dist = [0] * n_elems

    while True:
        # BFS phase: layer the left vertices starting from the free ones.
        queue = []
        for u in range(n_elems):
            if match_l[u] == -1:
                dist[u] = 0
                queue.append(u)
            else:
                dist[u] = INF
        found = False
        head = 0
        while head < len(queue):
            u = queue[head]
            head += 1
            row = succ[u]
            while row:
                low = row & -row
                v = low.bit_length() - 1
                row ^= low
                w = match_r[v]
                if w == -1:
                    found = True
                elif dist[w] == INF:
                    dist[w] = dist[u] + 1
                    queue.append(w)
        if not found:
            return match_l, match_r

        # DFS phase: vertex-disjoint shortest augmenting paths.
        cursor = list(succ)
        for start in range(n_elems):
            if match_l[start] != -1:
                continue
            path = []  # (left, right) edges taken
            stack = [start]
            while stack:
                u = stack[-1]
                advanced = False
                while cursor[u]:
                    low = cursor[u] & -cursor[u]
                    cursor[u] ^= low
                    v = low.bit_length() - 1
                    w = match_r[v]
                    if w == -1:
                        # augment along the stacked path plus (u, v)
                        path.append((u, v))
                        for lu, rv in path:
                            match_l[lu] = rv
                            match_r[rv] = lu
                        path.clear()
                        stack.clear()
                        advanced = True
                        break
                    if dist[w] == dist[u] + 1:
                        path.append((u, v))
                        stack.append(w)
                        advanced = True
                        break
                if not advanced:
                    dist[u] = INF  # dead end; never revisit this phase
                    stack.pop()
                    if path:
                        path.pop()
    # unreachable


def _konig_antichain(
    order: ContainmentOrder, match_l: list[int], match_r: list[int]
) -> list[int]:
    """Antichain indices from the matching's minimum vertex cover.

    Alternating-reachability from the free left copies marks Z; the
    cover is (L minus Z_L) union Z_R, and the elements with left copy in
    Z_L and right copy outside Z_R are pairwise incomparable -- any
    containment between two of them would be an uncovered edge.
    """
    n_elems = len(order)
    z_l = 0
    z_r = 0
    frontier = 0
    for u in range(n_elems):
        if match_l[u] == -1:
            frontier |= 1 << u
    while frontier:
        z_l |= frontier
        reached_r = 0
        w = frontier
        while w:
            low = w & -w
            reached_r |= order.succ[low.bit_length() - 1]
            w ^= low
        reached_r &= ~z_r
        z_r |= reached_r
        nxt = 0
        w = reached_r
        while w:
            low = w & -w
            v = low.bit_length() - 1
            w ^= low
            # v is matched: a free right vertex here would extend an
            # alternating path from a free left vertex, i.e. an
            # augmenting path, impossible after Hopcroft--Karp finishes.
            nxt |= 1 << match_r[v]
        frontier = nxt & ~z_l
    return [i for i in range(n_elems) if (z_l >> i) & 1 and not (z_r >> i) & 1]


def _chains_from_matching(
    order: ContainmentOrder, match_l: list[int], match_r: list[int]
) -> list[list[int]]:
    """Decompose the matching into chains: start anywhere no matched
    edge arrives, then follow matched successors."""
    chains = []
    for start in range(len(order)):
        if match_r[start] != -1:
            continue
        chain = [start]
        cur = start
        while match_l[cur] != -1:
            cur = match_l[cur]
            chain.append(cur)
        chains.append(chain)
    return chains


class CertificateError(RuntimeError):
    """A solver produced a report that failed its own optimality check.

    This is always a bug (in the solver, not the input); it exists so a
    broken matching can never masquerade as a width value.
    """


def _check_chains_partition(
    members: tuple[int, ...], chains: list[tuple[int, ...]]
) -> None:
    seen = set()
    for ch in chains:
        if not ch:
            raise CertificateError("empty chain in cover")
        prev = None
        for m in ch:
            if m in seen:
                raise CertificateError(f"element {render_set(m)} in two chains")
            seen.add(m)
            if prev is not None:
                if prev & ~m or prev == m:
                    raise CertificateError(
                        f"chain not nested: {render_set(prev)} !< {render_set(m)}"
                    )
            prev = m
    if len(seen) != len(members) or seen != set(members):
        raise CertificateError("chains do not cover the family exactly")


def _check_antichain_sweep(
    by_size: dict[int, list[int]], antichain: set[int]
) -> None:
    """Linear antichain check for one-add-closed families (layer bands).

    Sweeping sizes upward, ``marked`` collects the elements that are in
    the antichain or above some antichain member; an element is above
    one exactly when some one-vertex-removal predecessor is marked.
    Sound because every containment inside a band of consecutive layers
    passes through one-vertex steps that stay in the band (subsets of an
    independent set are independent, and the intermediate sizes are
    inside the band by construction).
    """
    sizes = sorted(by_size)
    if sizes != list(range(sizes[0], sizes[-1] + 1)):
        raise CertificateError("band layers not consecutive")
    marked: set[int] = set()
    for r in sizes:
        newly = []
        for m in by_size[r]:
            tainted = False
            w = m
            while w:
                sub = m ^ (w & -w)
                if sub in marked:
                    tainted = True
                    break
                w &= w - 1
            if tainted and m in antichain:
                raise CertificateError(
                    f"antichain member {render_set(m)} above another"
                )
            if tainted or m in antichain:
                newly.append(m)
        marked.update(newly)


def _verify_certificate(
    g: Graph,
    members: tuple[int, ...],
    width: int,
    antichain: tuple[int, ...],
    chains: list[tuple[int, ...]],
    band_closed: bool,
) -> None:
    """The non-negotiable optimality check behind every WidthReport."""
    if not (len(antichain) == width == len(chains)):
        raise CertificateError(
            f"certificate sizes disagree: |A|={len(antichain)}, "
            f"chains={len(chains)}, width={width}"
        )
    member_set = set(members)
    for m in antichain:
        if m not in member_set:
            raise CertificateError(f"antichain member {render_set(m)} not in family")
    _check_chains_partition(members, chains)
    if len(antichain) <= PAIRWISE_CHECK_LIMIT or not band_closed:
        if not cube.is_antichain(Family(g, tuple(antichain))):
            raise CertificateError("antichain check failed (pairwise)")
    else:
        by_size: dict[int, list[int]] = {}
        for m in members:
            by_size.setdefault(m.bit_count(), []).append(m)
        _check_antichain_sweep(by_size, set(antichain))


def _layer_tally(members) -> tuple[int, int]:
    """(largest layer size, its cardinality) of a family of masks."""
    counts: dict[int, int] = {}
    for m in members:
        r = m.bit_count()
        counts[r] = counts.get(r, 0) + 1
    best_r = max(counts, key=lambda r: (counts[r], -r))
    return counts[best_r], best_r


def max_antichain(elements: Family) -> WidthReport:
    """Width of an arbitrary family, with certificate.

    Minimum chain cover of the transitively closed order via maximum
    bipartite matching on split elements; the antichain comes from the
    matching's minimum vertex cover, the chains from the matched edges.
    """
    N = len(elements)
    if N == 0:
        raise ValueError("empty family has no width report")
    if N > MATCH_BUDGET:
        raise ResourceBudgetError(
            f"{N} elements exceed the matching budget of {MATCH_BUDGET}"
        )
    order = build_order(elements)
    match_l, match_r = _hopcroft_karp(N, order.succ)
    matched = sum(1 for v in match_l if v != -1)
    width = N - matched

    ant_idx = _konig_antichain(order, match_l, match_r)
    chain_idx = _chains_from_matching(order, match_l, match_r)
    antichain = tuple(
        sorted((order.elements[i] for i in ant_idx), key=set_to_vertices)
    )
    chains = [tuple(order.elements[i] for i in ch) for ch in chain_idx]

    _verify_certificate(
        elements.graph, order.elements, width, antichain, chains, band_closed=False
    )
    max_layer, _ = _layer_tally(order.elements)
    return WidthReport(
        width=width,
        antichain=Family(elements.graph, antichain),
        chain_cover=tuple(chains),
        max_layer=max_layer,
        ratio=width / max_layer,
        certificate_ok=True,
    )


def max_antichain_band(g: Graph, r_lo: int, r_hi: int) -> WidthReport:
    """Width of the suborder on layers r_lo..r_hi of Q(g), with certificate.

    Solved as a minimum feasible flow over the one-vertex-addition cover
    digraph (every element's split arc carries at least one unit): the
    flow is seeded from adjacent-layer maximum matchings, any surplus is
    cancelled by max-flow on the residual, the antichain is read off the
    final residual cut, and duplicated path elements are de-overlapped
    into chains.
    """
    if not 0 <= r_lo <= r_hi <= g.n:
        raise ValueError(f"need 0 <= r_lo <= r_hi <= {g.n}")
    masks, width, ant_idx, chain_idx = backend.solve_band_cover(
        g.n, g.adj, r_lo, r_hi, FLOW_BUDGET
    )
    if not masks:
        return WidthReport(0, Family(g, ()), (), 0, 0.0, True)
    antichain = tuple(sorted((masks[i] for i in ant_idx), key=set_to_vertices))
    chains = [tuple(masks[i] for i in ch) for ch in chain_idx]
    _verify_certificate(g, tuple(masks), width, antichain, chains, band_closed=True)
    max_layer, _ = _layer_tally(masks)
    return WidthReport(
        width=width,
        antichain=Family(g, antichain),
        chain_cover=tuple(chains),
        max_layer=max_layer,
        ratio=width / max_layer,
        certificate_ok=True,
    )


def band_width_stats(g: Graph, r_lo: int, r_hi: int) -> tuple[int, list[int]]:
    """Certified width plus layer sizes of a band, no report materialized.

    The bulk experiments only consume the width and the layer counts;
    building a WidthReport would convert millions of masks, chain lists
    and antichain members into Python objects just to throw them away.
    This route leaves the ground set inside the solver and has the
    certificate audited in-core instead (same checks as
    :func:`_verify_certificate` plus the band-completeness precondition
    the sweep check relies on).  Returns ``(width, layer_sizes)`` with
    one count per layer in r_lo..r_hi; raises :class:`CertificateError`
    if the in-core audit rejects the solver's certificate.
    """
    if not 0 <= r_lo <= r_hi <= g.n:
        raise ValueError(f"need 0 <= r_lo <= r_hi <= {g.n}")
    width, layer_sizes, audit = backend.solve_band_cover(
        g.n, g.adj, r_lo, r_hi, FLOW_BUDGET, materialize=False
    )
    if audit is not None:
        raise CertificateError(f"in-core certificate audit failed: {audit}")
    return width, list(layer_sizes)


def shadow_push(g: Graph, antichain: Family) -> Family:
    """Push an antichain into the middle band without shrinking it.

    While the top layer r satisfies 3r >= n+2, the whole top slice is
    replaced by its lower shadow; while the bottom layer r satisfies
    4r <= n-1, the bottom slice is replaced by its upper shadow.  Each
    step re-verifies the antichain property and non-shrinkage, and the
    result's member sizes all lie strictly between (n-1)/4 and (n+2)/3.
    The size guarantee is a path-cube fact; other graphs are accepted
    and simply fail loudly if a replacement ever shrinks the family.
    """
    n = g.n
    if n < 2:
        raise ValueError("no valid target band for n < 2")
    cube._same_graph(g, antichain)
    if not cube.is_antichain(antichain):
        raise ValueError("input family is not an antichain")
    fam = antichain
    while len(fam) > 0:
        sizes = sorted({m.bit_count() for m in fam})
        r_top, r_bot = sizes[-1], sizes[0]
        if 3 * r_top >= n + 2:
            r, shadow_of = r_top, cube.lower_shadow
        elif 4 * r_bot <= n - 1:
            r, shadow_of = r_bot, cube.upper_shadow
        else:
            break
        slice_members = tuple(m for m in fam if m.bit_count() == r)
        rest = tuple(m for m in fam if m.bit_count() != r)
        moved = shadow_of(g, Family(g, slice_members))
        merged = tuple(sorted(set(rest) | set(moved.members)))
        nxt = Family(g, merged)
        if len(nxt) < len(fam):
            raise CertificateError(
                f"shadow step shrank the family at layer {r}: "
                f"{len(fam)} -> {len(nxt)}"
            )
        if not cube.is_antichain(nxt):
            raise CertificateError(f"shadow step at layer {r} broke the antichain")
        fam = nxt
    return Family(g, tuple(sorted(fam.members, key=set_to_vertices)))


def min_shadow_search(
    n: int, r: int, s: int, budget: int = 1_000_000
) -> tuple[Family, int]:
    """Smallest lower shadow over all s-subsets of layer r of the n-path.

    Pure brute force over all C(q, s) families (first minimizer in
    lexicographic order wins), so only tiny instances are in range; the
    budget caps the number of families scanned.
    """
    g = graphs.path(n)
    layer = cube.enumerate_layer(g, r)
    q = len(layer)
    if not 1 <= s <= q:
        raise ValueError(f"need 1 <= s <= {q}")
    if comb(q, s) > budget:
        raise ResourceBudgetError(
            f"C({q},{s}) = {comb(q, s)} families exceed the budget of {budget}"
        )
    best: tuple[int, ...] | None = None
    best_size = -1
    for combo in combinations(layer.members, s):
        shadow = set()
        for m in combo:
            w = m
            while w:
                low = w & -w
                shadow.add(m ^ low)
                w ^= low
        if best is None or len(shadow) < best_size:
            best, best_size = combo, len(shadow)
    assert best is not None
    return Family(g, best), best_size
