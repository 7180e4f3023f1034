"""Truncated matrix model of the generators on the graph Hilbert space.

An independent check of the vacuum-mode engine: basis vectors are the
admissible paths up to a depth, creation acts by left concatenation,
annihilation by left prefix removal. Entries are exact scalars, so every
oracle comparison in the tests is an equality. Columns whose image would
leave the truncated basis are flagged rather than silently dropped.
"""

from __future__ import annotations

from .algebra import AlgebraContext, Element, Mode
from .errors import ResourceLimitError, UsageError
from .graphs import Graph, Path, concat
from .scalars import GaussianRational

PATH_CAP = 10**6


class FockBasis:
    """Admissible paths of length <= depth, vertices first, then by length."""

    def __init__(self, graph: Graph, depth: int):
        if depth < 0:
            raise UsageError("depth must be nonnegative")
        self.graph = graph
        self.depth = depth
        paths: list[Path] = [graph.vertex_path(v) for v in graph.vertices]
        frontier = paths[:]
        for _ in range(depth):
            nxt = []
            for p in frontier:
                for e in graph.edge_ids:
                    q = concat(p, graph.path(e))
                    if q is not None:
                        nxt.append(q)
            paths.extend(nxt)
            if len(paths) > PATH_CAP:
                raise ResourceLimitError(
                    f"basis would exceed {PATH_CAP} paths at depth {depth}"
                )
            frontier = nxt
        self.paths: tuple[Path, ...] = tuple(paths)
        self.index: dict[Path, int] = {p: i for i, p in enumerate(paths)}

    def __len__(self):
        return len(self.paths)


def fock_basis(graph: Graph, depth: int) -> FockBasis:
    return FockBasis(graph, depth)


class SparseOperator:
    """Exact sparse matrix on a FockBasis with truncation bookkeeping."""

    def __init__(self, basis: FockBasis, entries=None, truncated_cols=frozenset()):
        self.basis = basis
        self.entries: dict[tuple[int, int], GaussianRational] = dict(entries or {})
        self.truncated_cols = frozenset(truncated_cols)

    def add_entry(self, row: int, col: int, coeff: GaussianRational):
        key = (row, col)
        s = self.entries.get(key)
        s = coeff if s is None else s + coeff
        if s:
            self.entries[key] = s
        else:
            self.entries.pop(key, None)

    def column(self, col: int) -> dict[int, GaussianRational]:
        return {r: c for (r, cc), c in self.entries.items() if cc == col}

    def __add__(self, other: "SparseOperator") -> "SparseOperator":
        if self.basis is not other.basis:
            raise UsageError("operators on different bases")
        out = SparseOperator(
            self.basis, self.entries, self.truncated_cols | other.truncated_cols
        )
        for (r, c), coeff in other.entries.items():
            out.add_entry(r, c, coeff)
        return out

    def __mul__(self, other: "SparseOperator") -> "SparseOperator":
        if self.basis is not other.basis:
            raise UsageError("operators on different bases")
        cols: dict[int, list[tuple[int, GaussianRational]]] = {}
        for (r, c), coeff in other.entries.items():
            cols.setdefault(c, []).append((r, coeff))
        my_cols: dict[int, list[tuple[int, GaussianRational]]] = {}
        for (r, c), coeff in self.entries.items():
            my_cols.setdefault(c, []).append((r, coeff))
        truncated = set(other.truncated_cols)
        out = SparseOperator(self.basis)
        for c, pairs in cols.items():
            for mid, coeff in pairs:
                if mid in self.truncated_cols:
                    truncated.add(c)
                for r, coeff2 in my_cols.get(mid, ()):
                    out.add_entry(r, c, coeff * coeff2)
        out.truncated_cols = frozenset(truncated)
        return out

    def __pow__(self, k: int) -> "SparseOperator":
        if k < 1:
            raise UsageError("operator powers need k >= 1")
        out = self
        for _ in range(k - 1):
            out = out * self
        return out

    def conjugate_transpose(self) -> "SparseOperator":
        out = SparseOperator(self.basis)
        for (r, c), coeff in self.entries.items():
            out.add_entry(c, r, coeff.conjugate())
        return out

    def entries_excluding_cols(self, cols) -> dict[tuple[int, int], GaussianRational]:
        return {rc: v for rc, v in self.entries.items() if rc[1] not in cols}


def _check_vacuum(a: Element):
    if a.ctx.mode is not Mode.VACUUM:
        raise UsageError(
            "the matrix model is faithful for vacuum semantics only; "
            "paper-mode relations have no finite-depth matrix realization"
        )


def _monomial_action(basis: FockBasis, mono, h: Path) -> tuple[Path | None, bool]:
    """Image path of a basis vector under L(alpha)L*(beta), None if killed.

    Second component flags truncation (image beyond the basis depth).
    """
    parts = mono.iso_parts()
    if parts is None:
        raise UsageError(f"monomial {mono.render()} is not an isometry pair")
    alpha, beta = parts
    # peel beta off the front of h
    if beta.is_trivial:
        if h.source != beta.base:
            return None, False
        rest = h
    else:
        k = len(beta.edges)
        if len(h.edges) < k or h.edges[:k] != beta.edges:
            return None, False
        rest = (
            Path(h.graph, h.edges[k:], None)
            if len(h.edges) > k
            else h.graph.vertex_path(beta.target)
        )
    img = concat(alpha, rest)
    if img is None:
        return None, False
    if len(img.edges) > basis.depth:
        return None, True
    return img, False


def represent(basis: FockBasis, a: Element) -> SparseOperator:
    """Exact matrix of an element; linear in a, truncation flagged per column."""
    _check_vacuum(a)
    if a.ctx.graph is not basis.graph:
        raise UsageError("element and basis live on different graphs")
    out = SparseOperator(basis)
    truncated = set()
    for mono, coeff in a.terms.items():
        for col, h in enumerate(basis.paths):
            img, trunc = _monomial_action(basis, mono, h)
            if trunc:
                truncated.add(col)
            elif img is not None:
                out.add_entry(basis.index[img], col, coeff)
    out.truncated_cols = frozenset(truncated)
    return out


def represent_word(basis: FockBasis, ctx: AlgebraContext, word) -> SparseOperator:
    """Product of single-letter matrices: the route that bypasses reduction."""
    if ctx.mode is not Mode.VACUUM:
        raise UsageError("word representation requires the vacuum context")
    letters = list(word)
    if not letters:
        raise UsageError("empty word")
    ops = [represent(basis, ctx.from_word([l])) for l in letters]
    out = ops[0]
    for op in ops[1:]:
        out = out * op
    return out


def vacuum_diagonal(basis: FockBasis, op: SparseOperator, ctx: AlgebraContext):
    """Sum of <op xi_v, xi_v> L(v) over vertices, with a validity flag.

    Validity fails when any vertex column was contaminated by truncation.
    """
    out = ctx.zero()
    valid = True
    for i, v in enumerate(basis.graph.vertices):
        if i in op.truncated_cols:
            valid = False
        coeff = op.entries.get((i, i))
        if coeff:
            out = out + ctx.projection(v).scaled(coeff)
    return out, valid


def numeric_expectation(basis: FockBasis, a: Element) -> tuple[Element, bool]:
    """Vacuum diagonal of represent(a); validity per the depth criterion.

    Valid when the basis depth covers the total letter length of every
    monomial, so no column feeding a vertex entry was truncated.
    """
    _check_vacuum(a)
    op = represent(basis, a)
    diag, col_ok = vacuum_diagonal(basis, op, a.ctx)
    depth_ok = all(len(m.word) <= basis.depth for m in a.terms)
    return diag, col_ok and depth_ok
