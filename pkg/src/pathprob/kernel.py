"""Kernel backend selection and integer encoding of algebra data.

The compiled extension (``pathprob._kernel``, built from Cython) and the
pure-Python module ``pathprob._kernel_py`` implement the same functions;
whichever is importable wins, with ``PATHPROB_PURE_KERNEL=1`` forcing the
fallback. ``python -m pathprob.cli`` and the benchmark report the active
backend.
"""

from __future__ import annotations

import os

from . import _kernel_py

try:  # pragma: no cover - exercised only when the extension is built
    from . import _kernel as _compiled
except ImportError:  # pragma: no cover
    _compiled = None

if os.environ.get("PATHPROB_PURE_KERNEL"):
    impl = _kernel_py
else:
    impl = _compiled if _compiled is not None else _kernel_py

BACKEND = "cython" if impl is not _kernel_py else "python"

pure = _kernel_py
compiled = _compiled


class GraphEncoding:
    """Integer view of a graph: edge/vertex indices plus src/dst arrays."""

    def __init__(self, graph):
        self.graph = graph
        self.vertex_index = {v: i for i, v in enumerate(graph.vertices)}
        self.edge_index = {e: i for i, e in enumerate(graph.edge_ids)}
        self.esrc = tuple(self.vertex_index[graph.source(e)] for e in graph.edge_ids)
        self.edst = tuple(self.vertex_index[graph.target(e)] for e in graph.edge_ids)

    def encode_monomial(self, monomial):
        word = tuple(
            sign * (self.edge_index[e] + 1) for e, sign in monomial.word
        )
        return (
            word,
            self.vertex_index[monomial.source],
            self.vertex_index[monomial.target],
        )


class MonomialTable:
    """Growable table of encoded monomials shared by kernel calls.

    Ids are stable under registration, so the expectation memo stays valid
    for the lifetime of the table. The optional per-id family bit feeds the
    mixed-cumulant sweep (bit 1 = first family, bit 2 = second; a monomial
    reachable from both carries 3).
    """

    def __init__(self, graph, monomials=(), families=None):
        self.enc = GraphEncoding(graph)
        self.monos: list = []
        self.degrees: list[int] = []
        self.rsrcs: list[int] = []
        self.families: list[int] = []
        self._index: dict = {}
        self.memo: dict = {}
        monomials = list(monomials)
        fams = list(families) if families is not None else [0] * len(monomials)
        for m, fam in zip(monomials, fams):
            self.register(m, fam)

    def register(self, monomial, family_bit: int = 0) -> int:
        i = self._index.get(monomial)
        if i is not None:
            self.families[i] |= family_bit
            return i
        enc = self.enc.encode_monomial(monomial)
        i = len(self.monos)
        self.monos.append(enc)
        self.degrees.append(monomial.degree)
        # a monomial survives right-multiplication by P(v) exactly when v is
        # its walk target, which is where the nested evaluation gates
        self.rsrcs.append(enc[2])
        self.families.append(family_bit)
        self._index[monomial] = i
        return i

    def __len__(self):
        return len(self.monos)

    def cumulant(self, ids, programs, paper: bool):
        """{vertex index: integer} for the cumulant of the id tuple."""
        return impl.cumulant_of_tuple(
            tuple(ids),
            programs,
            self.monos,
            self.degrees,
            self.rsrcs,
            self.enc.esrc,
            self.enc.edst,
            paper,
            self.memo,
        )

    def sweep(self, n, programs, paper: bool):
        """(witness ids, value dict, checked) over mixed balanced tuples."""
        return impl.sweep_mixed(
            n,
            programs,
            self.monos,
            self.degrees,
            self.rsrcs,
            self.families,
            self.enc.esrc,
            self.enc.edst,
            paper,
            self.memo,
        )

    def as_element(self, value: dict, ctx):
        """Convert a kernel {vertex: int} result into a diagonal Element."""
        out = ctx.zero()
        for vi, c in sorted(value.items()):
            out = out + ctx.projection(self.enc.graph.vertices[vi]).scaled(c)
        return out
