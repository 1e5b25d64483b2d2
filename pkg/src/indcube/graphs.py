"""Host graphs whose independent sets form the independence cube.

Vertices are labeled 1..n; internally vertex v occupies bit v-1 of a
Python int, so a vertex subset is a single machine word for n <= 63.
Every constructor returns an immutable :class:`Graph` whose adjacency is
symmetric and loop-free (checked in tests, relied on everywhere else).
"""
from __future__ import annotations

import random
from dataclasses import dataclass

# Hard capability limit: a vertex set must fit one machine word so the
# enumeration core can treat it as a plain integer.
MAX_VERTICES = 63

# Fixed seed used by command-line entry points when none is given, so
# bare invocations are reproducible.
DEFAULT_SEED = 1729


class ResourceBudgetError(Exception):
    """Raised when a request exceeds a documented size budget.

    Budgets exist so oversized inputs fail loudly instead of silently
    truncating or grinding forever; the CLI maps this to exit code 3.
    """


@dataclass(frozen=True)
class Graph:
    """Undirected graph on vertices 1..n.

    ``adj[i]`` is the neighbor bitmask of vertex i+1 (bit j set means
    vertex j+1 is adjacent).
    """

    n: int
    adj: tuple[int, ...]

    def neighbors_mask(self, v: int) -> int:
        """Neighbor bitmask of vertex ``v`` (1-indexed)."""
        return self.adj[v - 1]

    def edge_count(self) -> int:
        return sum(bin(a).count("1") for a in self.adj) // 2

    def edges(self) -> list[tuple[int, int]]:
        """Sorted list of edges as 1-indexed pairs (u, v) with u < v."""
        out = []
        for i in range(self.n):
            m = self.adj[i]
            while m:
                low = m & -m
                j = low.bit_length() - 1
                if j > i:
                    out.append((i + 1, j + 1))
                m ^= low
        return out


@dataclass(frozen=True)
class PartSpec:
    """Part sizes for a complete multipartite construction."""

    sizes: tuple[int, ...]

    def __post_init__(self) -> None:
        if not self.sizes:
            raise ValueError("at least one part required")
        if any(s < 1 for s in self.sizes):
            raise ValueError("part sizes must be positive")

    @property
    def n(self) -> int:
        return sum(self.sizes)


def _check_n(n: int, minimum: int = 1) -> None:
    if n < minimum:
        raise ValueError(f"need n >= {minimum}, got {n}")
    if n > MAX_VERTICES:
        raise ResourceBudgetError(
            f"n = {n} exceeds the {MAX_VERTICES}-vertex word limit"
        )


def _from_edges(n: int, edges) -> Graph:
    adj = [0] * n
    for u, v in edges:
        adj[u - 1] |= 1 << (v - 1)
        adj[v - 1] |= 1 << (u - 1)
    return Graph(n, tuple(adj))


def path(n: int) -> Graph:
    """Path with edges {i, i+1} for 1 <= i < n."""
    _check_n(n)
    return _from_edges(n, [(i, i + 1) for i in range(1, n)])


def cycle(n: int) -> Graph:
    """Cycle on n >= 3 vertices (path plus the wrap-around edge {n, 1})."""
    _check_n(n, minimum=3)
    return _from_edges(n, [(i, i + 1) for i in range(1, n)] + [(1, n)])


def edgeless(n: int) -> Graph:
    """Graph with no edges; its independence cube is the full n-cube."""
    _check_n(n)
    return Graph(n, (0,) * n)


def complete_multipartite(spec: PartSpec) -> Graph:
    """u ~ v exactly when u and v lie in different parts.

    Independent sets are therefore the subsets of a single part (plus
    the empty set), which is what makes these graphs useful width-gap
    examples: the middle binomial layers of each part can be combined
    into an antichain bigger than any single layer.
    """
    n = spec.n
    _check_n(n)
    part_of = []
    for k, s in enumerate(spec.sizes):
        part_of.extend([k] * s)
    full = (1 << n) - 1
    start = 0
    part_mask = []
    for s in spec.sizes:
        part_mask.append(((1 << s) - 1) << start)
        start += s
    adj = tuple(full & ~part_mask[part_of[i]] for i in range(n))
    return Graph(n, adj)


def sperner_gap_family(m: int) -> Graph:
    """Complete multipartite with one part of size 4m and 2^(2m) parts of size 2m."""
    if m < 1:
        raise ValueError("m must be positive")
    sizes = (4 * m,) + (2 * m,) * (2 ** (2 * m))
    if sum(sizes) > MAX_VERTICES:
        raise ResourceBudgetError(f"gap family m={m} needs {sum(sizes)} vertices")
    return complete_multipartite(PartSpec(sizes))


def tower_family(m: int) -> Graph:
    """Complete multipartite with 2^(2^m - 2^i) parts of size 2^i, i = 0..m."""
    if m < 0:
        raise ValueError("m must be non-negative")
    sizes = []
    for i in range(m + 1):
        sizes.extend([2**i] * (2 ** (2**m - 2**i)))
    if sum(sizes) > MAX_VERTICES:
        raise ResourceBudgetError(f"tower family m={m} needs {sum(sizes)} vertices")
    return complete_multipartite(PartSpec(tuple(sorted(sizes))))


def erdos_renyi(n: int, p: float, seed: int) -> Graph:
    """Each unordered pair {u, v} is an edge independently with probability p.

    Determinism contract: the generator is Python's Mersenne Twister
    (``random.Random(seed)``) and exactly one uniform is drawn per pair,
    pairs in lexicographic order (1,2), (1,3), ..., (n-1,n); the pair is
    an edge iff its uniform is < p. Same (n, p, seed) => identical graph.
    """
    _check_n(n)
    if not 0.0 <= p <= 1.0:
        raise ValueError(f"p must be a probability, got {p}")
    rng = random.Random(seed)
    edges = []
    for u in range(1, n + 1):
        for v in range(u + 1, n + 1):
            if rng.random() < p:
                edges.append((u, v))
    return _from_edges(n, edges)


def serialize_edge_list(g: Graph) -> str:
    """Text form: header "n m", then one "u v" line per edge, sorted."""
    lines = [f"{g.n} {g.edge_count()}"]
    lines.extend(f"{u} {v}" for u, v in g.edges())
    return "\n".join(lines) + "\n"


def parse_edge_list(text: str) -> Graph:
    """Inverse of :func:`serialize_edge_list`; strict, with line numbers.

    Rejects out-of-range vertices, self-loops and duplicate edges.
    Trailing whitespace per line is ignored (tolerates CRLF input), and
    lines starting with '#' are comments (the CLI stamps its invocation
    into output headers that way); error messages use the original line
    numbering.
    """
    numbered = [
        (k, raw)
        for k, raw in enumerate(text.split("\n"), start=1)
        if not raw.lstrip().startswith("#")
    ]
    # drop trailing blank lines only
    while numbered and numbered[-1][1].strip() == "":
        numbered.pop()
    if not numbered:
        raise ValueError("line 1: missing 'n m' header")
    head_no, head_raw = numbered[0]
    head = head_raw.rstrip().split()
    if len(head) != 2:
        raise ValueError(f"line {head_no}: header must be two integers 'n m'")
    try:
        n, m = int(head[0]), int(head[1])
    except ValueError:
        raise ValueError(
            f"line {head_no}: header must be two integers 'n m'"
        ) from None
    _check_n(n)
    if m < 0:
        raise ValueError(f"line {head_no}: negative edge count")
    if len(numbered) - 1 != m:
        raise ValueError(
            f"line {numbered[-1][0]}: expected {m} edge lines, "
            f"found {len(numbered) - 1}"
        )
    seen = set()
    edges = []
    for k, raw in numbered[1:]:
        parts = raw.rstrip().split()
        if len(parts) != 2:
            raise ValueError(f"line {k}: edge line must be two integers 'u v'")
        try:
            u, v = int(parts[0]), int(parts[1])
        except ValueError:
            raise ValueError(f"line {k}: edge line must be two integers 'u v'") from None
        if not (1 <= u <= n and 1 <= v <= n):
            raise ValueError(f"line {k}: vertex out of range 1..{n}")
        if u == v:
            raise ValueError(f"line {k}: self-loop at vertex {u}")
        key = (min(u, v), max(u, v))
        if key in seen:
            raise ValueError(f"line {k}: duplicate edge {key[0]} {key[1]}")
        seen.add(key)
        edges.append(key)
    return _from_edges(n, edges)
