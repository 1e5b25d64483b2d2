"""The independence cube of a graph: enumeration, degrees, shadows.

Vertex sets travel as bitmasks (bit v-1 = vertex v); :class:`Family`
bundles an ordered duplicate-free tuple of them with the graph they are
independent in, so shadow/antichain operations cannot mix graphs.
Counts are Python ints (arbitrary precision) throughout.
"""
from __future__ import annotations

from dataclasses import dataclass

from . import backend
from .graphs import Graph, ResourceBudgetError

# Largest number of sets a single enumeration call may materialize.
ENUM_BUDGET = 5_000_000


def set_to_vertices(mask: int) -> tuple[int, ...]:
    """Bitmask -> sorted 1-indexed vertex tuple."""
    out = []
    while mask:
        low = mask & -mask
        out.append(low.bit_length())
        mask ^= low
    return tuple(out)


def vertices_to_set(vertices) -> int:
    mask = 0
    for v in vertices:
        mask |= 1 << (v - 1)
    return mask


def render_set(mask: int) -> str:
    """Human/dump form: ``{1,3,5}`` (``{}`` for the empty set)."""
    return "{" + ",".join(str(v) for v in set_to_vertices(mask)) + "}"


def is_independent(g: Graph, mask: int) -> bool:
    """True iff no edge of g has both ends in the set."""
    m = mask
    while m:
        low = m & -m
        if g.adj[low.bit_length() - 1] & mask:
            return False
        m ^= low
    return True


@dataclass(frozen=True)
class Family:
    """Ordered, duplicate-free vertex sets, all independent in ``graph``."""

    graph: Graph
    members: tuple[int, ...]

    def __post_init__(self) -> None:
        if len(set(self.members)) != len(self.members):
            raise ValueError("duplicate members in family")
        for m in self.members:
            if not is_independent(self.graph, m):
                raise ValueError(f"member {render_set(m)} is not independent")

    def __len__(self) -> int:
        return len(self.members)

    def __iter__(self):
        return iter(self.members)


def _same_graph(g: Graph, fam: Family) -> None:
    if fam.graph != g:
        raise ValueError("family belongs to a different graph")


def enumerate_all(g: Graph):
    """Yield every independent set once, lexicographic by vertex tuple."""
    yield from backend.enumerate_all(g.n, g.adj, ENUM_BUDGET)


def enumerate_layer(g: Graph, r: int) -> Family:
    """All independent sets of size exactly r (empty family past the
    independence number)."""
    if not 0 <= r <= g.n:
        raise ValueError(f"need 0 <= r <= {g.n}, got {r}")
    masks = backend.enumerate_layer(g.n, g.adj, r, ENUM_BUDGET)
    return Family(g, tuple(masks))


def layer_counts(g: Graph) -> list[int]:
    """counts[r] = number of independent sets of size r, for r = 0..n."""
    return backend.layer_counts(g.n, g.adj)


def in_degree(g: Graph, mask: int) -> int:
    """Number of sets covered from below: always the cardinality."""
    if not is_independent(g, mask):
        raise ValueError("set is not independent")
    return bin(mask).count("1")


def out_degree(g: Graph, mask: int) -> int:
    """Number of vertices whose addition keeps the set independent."""
    if not is_independent(g, mask):
        raise ValueError("set is not independent")
    d = 0
    free = ((1 << g.n) - 1) & ~mask
    while free:
        low = free & -free
        if not (g.adj[low.bit_length() - 1] & mask):
            d += 1
        free ^= low
    return d


def outdegree_histogram(g: Graph, r: int) -> dict[int, int]:
    """Map d -> number of independent r-sets with out-degree d."""
    if not 0 <= r <= g.n:
        raise ValueError(f"need 0 <= r <= {g.n}, got {r}")
    hist = backend.outdeg_histogram(g.n, g.adj, r)
    return {d: c for d, c in enumerate(hist) if c}


def lower_shadow(g: Graph, fam: Family) -> Family:
    """All sets obtained by deleting one vertex from some member."""
    _same_graph(g, fam)
    seen = set()
    out = []
    for mask in fam:
        m = mask
        while m:
            low = m & -m
            sub = mask ^ low
            if sub not in seen:
                seen.add(sub)
                out.append(sub)
            m ^= low
    out.sort(key=set_to_vertices)
    return Family(g, tuple(out))


def upper_shadow(g: Graph, fam: Family) -> Family:
    """All independent sets obtained by adding one vertex to some member."""
    _same_graph(g, fam)
    seen = set()
    out = []
    full = (1 << g.n) - 1
    for mask in fam:
        free = full & ~mask
        while free:
            low = free & -free
            if not (g.adj[low.bit_length() - 1] & mask):
                sup = mask | low
                if sup not in seen:
                    seen.add(sup)
                    out.append(sup)
            free ^= low
    out.sort(key=set_to_vertices)
    return Family(g, tuple(out))


def is_antichain(fam: Family) -> bool:
    """True iff no member strictly contains another.

    Pairwise subset tests grouped by cardinality; fine up to a few
    thousand members (big certified solves use an equivalent linear
    sweep inside the width module instead).
    """
    by_size: dict[int, list[int]] = {}
    for m in fam:
        by_size.setdefault(bin(m).count("1"), []).append(m)
    sizes = sorted(by_size)
    for i, s in enumerate(sizes):
        for t in sizes[i + 1:]:
            for small in by_size[s]:
                for big in by_size[t]:
                    if small & big == small:
                        return False
    return True
