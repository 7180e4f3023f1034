"""Noncrossing partitions NC(n), their refinement order and Moebius function.

The Moebius values to the top element are computed by the generic
incidence-algebra recursion mu(pi,pi)=1, sum_{pi<=sigma} mu(sigma,1_n)=0,
walking strict coarsenings of pi directly. The signed-Catalan closed form is
deliberately not used here so the test suite can hold it against this
computation as an independent check.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import comb

from .errors import ResourceLimitError, UsageError

ENUMERATION_CAP = 14


def catalan(n: int) -> int:
    return comb(2 * n, n) // (n + 1)


@dataclass(frozen=True)
class Partition:
    """Noncrossing partition of {1..n}: blocks sorted, ordered by minimum."""

    n: int
    blocks: tuple[tuple[int, ...], ...]

    @staticmethod
    def from_blocks(blocks, n: int | None = None) -> "Partition":
        """Validating constructor; canonicalizes block order."""
        canon = tuple(sorted((tuple(sorted(b)) for b in blocks), key=lambda b: b[0]))
        elems = [x for b in canon for x in b]
        if n is None:
            n = len(elems)
        if sorted(elems) != list(range(1, n + 1)):
            raise UsageError(f"blocks do not partition 1..{n}: {blocks}")
        p = Partition(n, canon)
        if not p.is_noncrossing():
            raise UsageError(f"partition is crossing: {p}")
        return p

    @staticmethod
    def top(n: int) -> "Partition":
        return Partition(n, (tuple(range(1, n + 1)),))

    @staticmethod
    def bottom(n: int) -> "Partition":
        return Partition(n, tuple((i,) for i in range(1, n + 1)))

    def block_index(self) -> tuple[int, ...]:
        """Map element i (1-based) -> index of its block."""
        out = [0] * (self.n + 1)
        for bi, block in enumerate(self.blocks):
            for x in block:
                out[x] = bi
        return tuple(out)

    def is_noncrossing(self) -> bool:
        return _stack_noncrossing(self.n, self.block_index())

    def __str__(self) -> str:
        return "".join("{" + ",".join(map(str, b)) + "}" for b in self.blocks)


def _stack_noncrossing(n: int, assign) -> bool:
    """Scan 1..n keeping a stack of open blocks; crossing = reopening below top."""
    last = {}
    for i in range(1, n + 1):
        last[assign[i]] = i
    stack = []
    open_set = set()
    for i in range(1, n + 1):
        b = assign[i]
        if not stack or stack[-1] != b:
            if b in open_set:
                return False
            stack.append(b)
            open_set.add(b)
        if last[b] == i:
            if stack[-1] != b:
                return False
            stack.pop()
            open_set.remove(b)
    return True


def _check_cap(n: int):
    if n < 1:
        raise UsageError(f"n must be positive, got {n}")
    if n > ENUMERATION_CAP:
        raise ResourceLimitError(
            f"NC({n}) enumeration refused: cap is n <= {ENUMERATION_CAP}"
        )


_nc_cache: dict[int, tuple[Partition, ...]] = {}


def enumerate_nc(n: int) -> tuple[Partition, ...]:
    """All of NC(n) in canonical order: 0_n first, 1_n last.

    Order: number of blocks descending, then lexicographic on the nested
    block tuple. |NC(n)| is the n-th Catalan number.
    """
    _check_cap(n)
    cached = _nc_cache.get(n)
    if cached is None:
        raw = [
            Partition(n, tuple(sorted(blocks, key=lambda b: b[0])))
            for blocks in _gen_blocks(1, n)
        ]
        raw.sort(key=lambda p: (-len(p.blocks), p.blocks))
        cached = tuple(raw)
        _nc_cache[n] = cached
    return cached


def _gen_blocks(lo: int, hi: int):
    """Yield block lists of noncrossing partitions of the interval [lo, hi].

    The block of lo is grown member by member; the gap between consecutive
    members is partitioned independently, which is exactly the noncrossing
    condition.
    """
    if lo > hi:
        yield []
        return

    def grow(block, start):
        # close the block of lo here; [start, hi] is partitioned freely
        for tail in _gen_blocks(start, hi):
            yield [tuple(block)] + tail
        # or adjoin a further member m; the gap [start, m-1] is sealed off
        for m in range(start, hi + 1):
            for gap in _gen_blocks(start, m - 1):
                block.append(m)
                for rest in grow(block, m + 1):
                    yield gap + rest
                block.pop()

    yield from grow([lo], lo + 1)


def leq(p: Partition, q: Partition) -> bool:
    """Refinement order: every block of p lies inside a block of q."""
    if p.n != q.n:
        raise UsageError("partitions of different sizes are incomparable")
    idx = q.block_index()
    for block in p.blocks:
        b0 = idx[block[0]]
        for x in block[1:]:
            if idx[x] != b0:
                return False
    return True


_mobius_cache: dict[int, dict[Partition, int]] = {}


def _strict_coarsenings(p: Partition):
    """All sigma > p in NC(n), by merging blocks of p noncrossingly."""
    b = len(p.blocks)
    n = p.n
    groups: list[list[int]] = []

    def rec(i: int):
        if i == b:
            if len(groups) < b:  # skip the identity grouping
                merged = tuple(
                    tuple(sorted(x for bi in g for x in p.blocks[bi])) for g in groups
                )
                part = Partition(n, tuple(sorted(merged, key=lambda blk: blk[0])))
                if part.is_noncrossing():
                    yield part
            return
        for g in groups:
            g.append(i)
            yield from rec(i + 1)
            g.pop()
        groups.append([i])
        yield from rec(i + 1)
        groups.pop()

    yield from rec(0)


def _mobius_table(n: int) -> dict[Partition, int]:
    table = _mobius_cache.get(n)
    if table is None:
        table = {}
        parts = sorted(enumerate_nc(n), key=lambda p: len(p.blocks))
        for p in parts:
            if len(p.blocks) == 1:
                table[p] = 1
            else:
                table[p] = -sum(table[s] for s in _strict_coarsenings(p))
        _mobius_cache[n] = table
    return table


def mobius_to_top(p: Partition) -> int:
    """mu(p, 1_n) in the incidence algebra of NC(n)."""
    return _mobius_table(p.n)[p]


def enumerate_nc2(n: int) -> tuple[Partition, ...]:
    """Noncrossing pair partitions; empty for odd n."""
    if n % 2:
        _check_cap(n)
        return ()
    return tuple(p for p in enumerate_nc(n) if all(len(b) == 2 for b in p.blocks))


def enumerate_nc_even(n: int) -> tuple[Partition, ...]:
    """Noncrossing partitions with all blocks of even size."""
    return tuple(p for p in enumerate_nc(n) if all(len(b) % 2 == 0 for b in p.blocks))
