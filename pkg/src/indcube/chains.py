"""Iterative tagged-chain partitions of the path cube.

Starting from the one-chain partition of Q(P_1), each dimension step
rewrites every chain of the partition of Q(P_n) into chains of
Q(P_{n+1}) according to its tag:

* an A-chain (every member contains n) becomes the B-chain with the
  same sets;
* a B-chain (no member contains n) C_1..C_l becomes the C-chain
  (C_1, ..., C_l, C_l + {n+1}) always, plus the A-chain
  (C_1 + {n+1}, ..., C_{l-1} + {n+1}) when l > 1;
* a C-chain (only the last member contains n) becomes the B-chain with
  the same sets plus the A-chain (C_1 + {n+1}, ..., C_{l-1} + {n+1}).

Every chain of the result meets the largest layer for n <= 7 and n = 9.
At n = 8 exactly one chain misses it, and `repair_n8` performs the
explicit three-chains-into-two splice that fixes it.  For n >= 10 the
builder still produces a true partition; how many chains miss the
largest layer is reported by validation, not asserted.
"""
from __future__ import annotations

from dataclasses import dataclass

from . import cube
from .graphs import ResourceBudgetError, path

# The partition has Fibonacci-many chains; past this the dump alone is
# tens of millions of sets.
MAX_DIMENSION = 25

KIND_A = "A"
KIND_B = "B"
KIND_C = "C"


@dataclass(frozen=True)
class TaggedChain:
    """A containment chain plus its production tag (A, B or C)."""

    sets: tuple[int, ...]
    kind: str

    def __len__(self) -> int:
        return len(self.sets)


@dataclass(frozen=True)
class ChainPartition:
    n: int
    chains: tuple[TaggedChain, ...]


@dataclass(frozen=True)
class PartitionReport:
    """validate_partition output; validation reports, never raises."""

    is_partition: bool
    chains_valid: bool
    chains_missing_largest_layer: int
    chain_count: int


def build_partition(n: int) -> ChainPartition:
    """Apply the production rules from the base C-chain up to dimension n."""
    if n < 1:
        raise ValueError("need n >= 1")
    if n > MAX_DIMENSION:
        raise ResourceBudgetError(
            f"partition of the {n}-path exceeds the n <= {MAX_DIMENSION} budget"
        )
    chains = [TaggedChain((0, 1), KIND_C)]  # (empty set, {1})
    for dim in range(1, n):
        top = 1 << dim  # vertex dim+1 as a mask
        nxt: list[TaggedChain] = []
        for ch in chains:
            s = ch.sets
            if ch.kind == KIND_A:
                nxt.append(TaggedChain(s, KIND_B))
            elif ch.kind == KIND_B:
                if len(s) > 1:
                    nxt.append(TaggedChain(tuple(m | top for m in s[:-1]), KIND_A))
                nxt.append(TaggedChain(s + (s[-1] | top,), KIND_C))
            else:
                if len(s) > 1:
                    nxt.append(TaggedChain(tuple(m | top for m in s[:-1]), KIND_A))
                nxt.append(TaggedChain(s, KIND_B))
        chains = nxt
    return ChainPartition(n, tuple(chains))


# The splice replacing three chains of the n=8 partition by two, written
# as vertex sets: {2,5,8} alone, {2,5} < {2,5,7}, and {5,7} alone turn
# into {2,5} < {2,5,8} and {5,7} < {2,5,7}.
_N8_TARGETS = (
    ((1 << 1) | (1 << 4) | (1 << 7),),
    ((1 << 1) | (1 << 4), (1 << 1) | (1 << 4) | (1 << 6)),
    ((1 << 4) | (1 << 6),),
)
_N8_REPLACEMENTS = {
    1: TaggedChain(((1 << 1) | (1 << 4), (1 << 1) | (1 << 4) | (1 << 7)), KIND_C),
    2: TaggedChain(((1 << 4) | (1 << 6), (1 << 1) | (1 << 4) | (1 << 6)), KIND_B),
}


def repair_n8(p: ChainPartition) -> ChainPartition:
    """Splice the built n=8 partition so every chain meets the largest layer.

    Expects the three specific chains the production rules emit at n=8;
    their absence means the rules themselves regressed, which is an
    error rather than something to paper over.
    """
    if p.n != 8:
        raise ValueError("the splice is specific to n = 8")
    positions = {}
    for idx, ch in enumerate(p.chains):
        for tgt_no, tgt in enumerate(_N8_TARGETS):
            if ch.sets == tgt:
                positions[tgt_no] = idx
    if len(positions) != 3:
        raise ValueError(
            "expected splice targets missing from the built partition "
            f"(found {sorted(positions)}); production rules regressed"
        )
    out: list[TaggedChain] = []
    for idx, ch in enumerate(p.chains):
        if idx == positions[0]:
            continue  # the lone {2,5,8} is absorbed below
        if idx == positions[1]:
            out.append(_N8_REPLACEMENTS[1])
        elif idx == positions[2]:
            out.append(_N8_REPLACEMENTS[2])
        else:
            out.append(ch)
    return ChainPartition(8, tuple(out))


def _chain_tag_ok(n: int, ch: TaggedChain) -> bool:
    top = 1 << (n - 1)
    s = ch.sets
    if not s:
        return False
    for prev, cur in zip(s, s[1:]):
        if prev & ~cur or prev == cur:
            return False
    if ch.kind == KIND_A:
        return all(m & top for m in s)
    if ch.kind == KIND_B:
        return not any(m & top for m in s)
    if ch.kind == KIND_C:
        return len(s) >= 2 and bool(s[-1] & top) and not any(m & top for m in s[:-1])
    return False


def validate_partition(n: int, p: ChainPartition) -> PartitionReport:
    """Check partition-ness, tag invariants, and largest-layer coverage.

    Never raises: a broken partition comes back as a report saying how
    it is broken, so exploratory runs (n >= 10) can tabulate misses.
    """
    g = path(n)
    ground = set(cube.enumerate_all(g))
    seen: set[int] = set()
    duplicates = False
    for ch in p.chains:
        for m in ch.sets:
            if m in seen:
                duplicates = True
            seen.add(m)
    is_partition = (not duplicates) and seen == ground and p.n == n

    chains_valid = all(_chain_tag_ok(n, ch) for ch in p.chains)

    counts = cube.layer_counts(g)
    peak = max(counts)
    largest = {r for r, c in enumerate(counts) if c == peak}
    missing = sum(
        1
        for ch in p.chains
        if not any(m.bit_count() in largest for m in ch.sets)
    )
    return PartitionReport(
        is_partition=is_partition,
        chains_valid=chains_valid,
        chains_missing_largest_layer=missing,
        chain_count=len(p.chains),
    )


def dump_partition(p: ChainPartition) -> str:
    """One chain per line: kind prefix, then sets joined by " < "."""
    return "\n".join(
        f"{ch.kind}: " + " < ".join(cube.render_set(m) for m in ch.sets)
        for ch in p.chains
    )
