"""Shared brute-force oracles for the test suite.

Everything in here is deliberately dumb and slow: oracles must not share
code paths (bitmask tricks, recursion kernels) with the library they are
checking. They work straight off edge lists and itertools.
"""
from itertools import combinations

# Gate lines registered by test_acceptance; echoed after the run so the
# per-criterion verdicts are visible even when pytest captures stdout.
ACCEPTANCE_LINES: list[str] = []


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)


def edge_pairs(g):
    """Edges of a Graph as a list of 1-indexed (u, v) tuples."""
    return g.edges()


def brute_independent(edges, vertices) -> bool:
    vs = set(vertices)
    return not any(u in vs and v in vs for u, v in edges)


def brute_layer_sets(g, r):
    """All independent r-subsets of [n], as sorted vertex tuples."""
    edges = g.edges()
    return [
        combo
        for combo in combinations(range(1, g.n + 1), r)
        if brute_independent(edges, combo)
    ]


def brute_all_sets(g):
    out = []
    for r in range(g.n + 1):
        out.extend(brute_layer_sets(g, r))
    return out


def brute_outdeg(g, vertices) -> int:
    edges = g.edges()
    vs = set(vertices)
    d = 0
    for b in range(1, g.n + 1):
        if b not in vs and brute_independent(edges, vs | {b}):
            d += 1
    return d


def max_antichain_exhaustive(members) -> int:
    """Exact poset width by branch-and-bound MIS on the comparability graph.

    ``members`` are bitmasks; usable up to ~24 elements. Kept apart from
    the production solver on purpose: no matching, no flow, no Dilworth.
    """
    k = len(members)
    conflict = [0] * k  # conflict[i] bit j: i and j comparable (i != j)
    for i in range(k):
        for j in range(i + 1, k):
            a, b = members[i], members[j]
            if a & ~b == 0 or b & ~a == 0:  # a <= b or b <= a  (or equal)
                conflict[i] |= 1 << j
                conflict[j] |= 1 << i

    best = 0

    def grow(cand: int, size: int) -> None:
        nonlocal best
        if size + cand.bit_count() <= best:
            return
        if cand == 0:
            best = max(best, size)
            return
        v = (cand & -cand).bit_length() - 1
        grow(cand & ~(1 << v) & ~conflict[v], size + 1)  # take v
        grow(cand & ~(1 << v), size)  # skip v
    grow((1 << k) - 1, 0)
    return best
