"""Lattice-path profiles of generator words.

A word in the generators maps to a walk: step +|w| for L(w), -|w| for L*(w),
0 for a vertex letter. Ending on the axis is a necessary geometric condition
for a nonzero expectation; the sharp predicate goes through reduction, since
geometry cannot distinguish distinct paths of equal length.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

from .algebra import AlgebraContext, Letter, reduce_word


@dataclass(frozen=True)
class LatticePath:
    steps: tuple[int, ...]
    empty: bool = False

    @property
    def heights(self) -> tuple[int, ...]:
        out = []
        h = 0
        for s in self.steps:
            h += s
            out.append(h)
        return tuple(out)

    def ascii(self) -> str:
        """Rise/fall runs for CLI diagnostics; '.' marks a zero step."""
        if self.empty:
            return "(empty)"
        bits = []
        for s in self.steps:
            if s > 0:
                bits.append("/" * s)
            elif s < 0:
                bits.append("\\" * (-s))
            else:
                bits.append(".")
        return " ".join(bits)


def _steps(word: Sequence[Letter]) -> tuple[int, ...]:
    return tuple(-len(l.path) if l.star else len(l.path) for l in word)


def lattice_path(ctx: AlgebraContext, word: Sequence[Letter]) -> LatticePath:
    """Step profile of a word; the zero product gives the empty path."""
    if reduce_word(ctx, word) is None:
        return LatticePath((), empty=True)
    return LatticePath(_steps(word))


def ends_on_axis(word: Sequence[Letter]) -> bool:
    """Purely geometric necessary condition: signed lengths sum to zero."""
    return len(word) > 0 and sum(_steps(word)) == 0


def has_star_axis_property(ctx: AlgebraContext, word: Sequence[Letter]) -> bool:
    """Sharp predicate: the word reduces to a vertex projection."""
    m = reduce_word(ctx, word)
    return m is not None and m.is_vertex_projection
