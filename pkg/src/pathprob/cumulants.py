"""Operator-valued moments, partitioned moments and cumulants.

The cumulant is the Moebius inversion of the partitioned moments over the
noncrossing lattice:

    k_n(a_1,...,a_n) = sum over pi in NC(n) of E^(pi)(a_1,...,a_n) mu(pi,1_n)

E^(pi) evaluates blocks innermost-first; an inner block's (diagonal) value
multiplies on the right into the factor preceding the block, or accumulates
as a left multiplier when the block starts the surviving sequence. The same
nesting with k in place of E gives the multiplicative partitioned cumulants,
whose total sum over NC(n) must reproduce the moment — the load-bearing
self-test of the whole engine.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Sequence

from .algebra import AlgebraContext, Element, Letter, Mode, reduce_word
from .errors import UsageError
from .kernel import MonomialTable
from .noncrossing import Partition, enumerate_nc, mobius_to_top


def _nested_evaluation(ctx, pi: Partition, factors, block_value):
    """Collapse blocks of pi (leftmost contiguous first) with D_G insertions.

    ``block_value(list_of_factors) -> Element`` evaluates one block; E gives
    the partitioned moment, the cumulant gives the partitioned cumulant.
    """
    facs = {i: f for i, f in enumerate(factors)}
    blocks = [sorted(x - 1 for x in b) for b in pi.blocks]
    left_mult = ctx.one()
    while True:
        survivors = sorted(facs)
        pos_rank = {p: r for r, p in enumerate(survivors)}
        if len(blocks) == 1:
            final = block_value([facs[p] for p in blocks[0]])
            return left_mult * final
        chosen = None
        for blk in sorted(blocks, key=lambda b: b[0]):
            lo, hi = pos_rank[blk[0]], pos_rank[blk[-1]]
            if hi - lo + 1 == len(blk):
                chosen = blk
                break
        d = block_value([facs[p] for p in chosen])
        blocks.remove(chosen)
        for p in chosen:
            del facs[p]
        pred = None
        for p in survivors:
            if p >= chosen[0]:
                break
            pred = p
        if pred is None:
            left_mult = left_mult * d
        else:
            facs[pred] = facs[pred] * d


@dataclass(frozen=True)
class ConnectedSet:
    """Partitions under which a generator word has nonzero nested expectation."""

    word: tuple[Letter, ...]
    partitions: tuple[Partition, ...]


class MomentFunctional:
    """Moment/cumulant calculator for one algebra context.

    Caches cumulants keyed by the exact factor tuple; the Moebius tables are
    shared module-wide through the noncrossing module. By default, cumulants
    of factors with few terms expand multilinearly into monomial tuples and
    run on the integer kernel; ``use_kernel=False`` forces the element-level
    Moebius sum, which is the reference the kernel is tested against.
    """

    KERNEL_EXPANSION_CAP = 4096

    def __init__(self, ctx: AlgebraContext, use_kernel: bool = True):
        self.ctx = ctx
        self.use_kernel = use_kernel
        self._cumulant_memo: dict = {}
        self._table = None

    # --- moments ----------------------------------------------------------

    def _check_factors(self, factors) -> list[Element]:
        factors = list(factors)
        if not factors:
            raise UsageError("need at least one factor")
        for f in factors:
            if not isinstance(f, Element) or not f.ctx.compatible(self.ctx):
                raise UsageError("factor from a different algebra context")
        return factors

    def moment(self, factors: Sequence[Element]) -> Element:
        """E(product of factors); dilations are encoded by the caller."""
        factors = self._check_factors(factors)
        prod = factors[0]
        for f in factors[1:]:
            prod = prod * f
        return prod.expectation()

    def partitioned_moment(self, pi: Partition, factors: Sequence[Element]) -> Element:
        factors = self._check_factors(factors)
        if pi.n != len(factors):
            raise UsageError(f"partition of {pi.n} against {len(factors)} factors")
        return _nested_evaluation(
            self.ctx, pi, factors, lambda fs: self.moment(fs)
        )

    # --- cumulants ----------------------------------------------------------

    def cumulant(self, factors: Sequence[Element]) -> Element:
        factors = self._check_factors(factors)
        key = tuple(factors)
        cached = self._cumulant_memo.get(key)
        if cached is not None:
            return cached
        total = self._kernel_cumulant(factors) if self.use_kernel else None
        if total is None:
            n = len(factors)
            total = self.ctx.zero()
            for pi in enumerate_nc(n):
                term = self.partitioned_moment(pi, factors)
                if not term.is_zero:
                    total = total + term.scaled(mobius_to_top(pi))
        self._cumulant_memo[key] = total
        return total

    def _kernel_cumulant(self, factors) -> Element | None:
        """Multilinear expansion into monomial tuples on the integer kernel."""
        n = len(factors)
        if n > 14:
            return None
        width = 1
        for f in factors:
            width *= max(len(f.terms), 1)
            if width > self.KERNEL_EXPANSION_CAP:
                return None
        if any(f.is_zero for f in factors):
            return self.ctx.zero()
        if self._table is None:
            self._table = MonomialTable(self.ctx.graph)
        table = self._table
        slots = [
            [(table.register(m), c) for m, c in f.sorted_terms()] for f in factors
        ]
        programs = nc_programs(n)
        paper = self.ctx.mode is Mode.PAPER
        acc: dict[int, object] = {}
        for choice in itertools.product(*slots):
            ids = tuple(i for i, _ in choice)
            value = table.cumulant(ids, programs, paper)
            if not value:
                continue
            coeff = choice[0][1]
            for _, c in choice[1:]:
                coeff = coeff * c
            for v, cnt in value.items():
                prev = acc.get(v)
                cur = coeff * cnt
                acc[v] = cur if prev is None else prev + cur
        out = self.ctx.zero()
        for v, c in sorted(acc.items()):
            if c:
                out = out + self.ctx.projection(
                    self.ctx.graph.vertices[v]
                ).scaled(c)
        return out

    def partitioned_cumulant(self, pi: Partition, factors: Sequence[Element]) -> Element:
        factors = self._check_factors(factors)
        if pi.n != len(factors):
            raise UsageError(f"partition of {pi.n} against {len(factors)} factors")
        return _nested_evaluation(
            self.ctx, pi, factors, lambda fs: self.cumulant(fs)
        )

    def moment_from_cumulants(self, factors: Sequence[Element]) -> Element:
        """Sum of partitioned cumulants over NC(n); must equal moment()."""
        factors = self._check_factors(factors)
        total = self.ctx.zero()
        for pi in enumerate_nc(len(factors)):
            total = total + self.partitioned_cumulant(pi, factors)
        return total

    # --- words of pure generator letters -------------------------------------

    def _word_factors(self, word: Sequence[Letter]) -> list[Element]:
        word = list(word)
        if not word:
            raise UsageError("empty word")
        return [self.ctx.from_word([l]) for l in word]

    def connected_set(self, word: Sequence[Letter]) -> ConnectedSet:
        factors = self._word_factors(word)
        hits = tuple(
            pi
            for pi in enumerate_nc(len(factors))
            if not self.partitioned_moment(pi, factors).is_zero
        )
        return ConnectedSet(tuple(word), hits)

    def mu_coefficient(self, word: Sequence[Letter]) -> int:
        return sum(mobius_to_top(pi) for pi in self.connected_set(word).partitions)

    def cumulant_via_mu(self, word: Sequence[Letter]) -> Element:
        """mu-coefficient times E(word): the shortcut route for letter words.

        Equality with cumulant() on the same word is a tested property, not
        an assumption.
        """
        word = list(word)
        m = reduce_word(self.ctx, word)
        if m is None:
            return self.ctx.zero()
        e = self.ctx.monomial(m).expectation()
        if e.is_zero:
            return self.ctx.zero()
        return e.scaled(self.mu_coefficient(word))


# --- kernel programs ---------------------------------------------------------

_program_cache: dict[int, tuple] = {}


def nc_programs(n: int) -> tuple:
    """Kernel evaluation programs for NC(n): (mu, blocks, gates, outer) rows.

    Positions are 0-based. Each non-outermost block gates against the element
    of its immediate parent block sitting just left of it, which is where the
    nested evaluation inserts the block's diagonal value.
    """
    cached = _program_cache.get(n)
    if cached is not None:
        return cached
    progs = []
    for p in enumerate_nc(n):
        blocks = tuple(tuple(x - 1 for x in b) for b in p.blocks)
        spans = [(b[0], b[-1]) for b in blocks]
        gates = []
        outer = []
        for i, (lo, hi) in enumerate(spans):
            parent = -1
            best_lo = -1
            for j, (lo2, hi2) in enumerate(spans):
                if i != j and lo2 < lo and hi < hi2 and lo2 > best_lo:
                    parent = j
                    best_lo = lo2
            if parent < 0:
                outer.append(i)
            else:
                anchor = max(x for x in blocks[parent] if x < lo)
                gates.append((anchor, i))
        progs.append((mobius_to_top(p), blocks, tuple(gates), tuple(outer)))
    out = tuple(progs)
    _program_cache[n] = out
    return out
