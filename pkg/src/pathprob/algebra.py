"""The symbolic generator algebra of a graph's free semigroupoid.

Words in the creation/annihilation generators reduce to a normal form: zero,
or a reduced signed walk on the graph. A walk item ``(edge, +1)`` is the
creation generator of that edge, ``(edge, -1)`` its adjoint; the empty walk
anchored at a vertex is that vertex's projection. Two semantics are
supported:

* ``Mode.VACUUM``  — only the identities that hold exactly for the operators
  acting on the graph Hilbert space. Normal forms are partial-isometry pairs
  ``L(alpha)L*(beta)``: a run of creations followed by a run of
  annihilations, and an annihilation meeting a different creation kills the
  product.
* ``Mode.PAPER``   — additionally imposes ``L(e)L*(e) = P(source(e))``,
  which turns every generator into a partial unitary between its endpoint
  projections. Products then cancel like free-group words and any reduced
  signed walk can occur.

Elements are finite linear combinations of nonzero monomials with exact
Gaussian-rational coefficients.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field
from typing import Iterable, NamedTuple

from .errors import NotAFourierExpansion, UsageError
from .graphs import Graph, Path
from .scalars import ONE, GaussianRational


class Mode(enum.Enum):
    PAPER = "paper"
    VACUUM = "vacuum"


@dataclass(frozen=True)
class Letter:
    """A single generator symbol: L(path) or, starred, L*(path)."""

    path: Path
    star: bool = False

    def adjoint(self) -> "Letter":
        return Letter(self.path, not self.star)


def _arrow(graph: Graph, item: tuple[str, int]) -> tuple[str, str]:
    e, sign = item
    s, t = graph.source(e), graph.target(e)
    return (s, t) if sign > 0 else (t, s)


@dataclass(frozen=True)
class Monomial:
    """Reduced signed walk; the normal form of a nonzero generator word.

    ``word`` chains head-to-tail (the target of each arrow is the source of
    the next) and carries no adjacent mutually-inverse pair that the active
    semantics would cancel. The empty walk is the vertex projection at
    ``anchor``.
    """

    graph: Graph = field(compare=False)
    word: tuple[tuple[str, int], ...]
    anchor: str | None = None

    def __post_init__(self):
        if self.word:
            if self.anchor is not None:
                raise UsageError("nonempty walks carry no anchor vertex")
        elif self.anchor is None:
            raise UsageError("the empty walk needs an anchor vertex")

    @property
    def is_vertex_projection(self) -> bool:
        return not self.word

    @property
    def vertex(self) -> str:
        if self.word:
            raise UsageError("not a vertex projection")
        return self.anchor

    @property
    def source(self) -> str:
        if not self.word:
            return self.anchor
        return _arrow(self.graph, self.word[0])[0]

    @property
    def target(self) -> str:
        if not self.word:
            return self.anchor
        return _arrow(self.graph, self.word[-1])[1]

    @property
    def degree(self) -> int:
        return sum(sign for _, sign in self.word)

    @property
    def is_pure(self) -> bool:
        """Single generator shape: L(w), L*(w) or a vertex projection."""
        return all(s > 0 for _, s in self.word) or all(s < 0 for _, s in self.word)

    def iso_parts(self) -> tuple[Path, Path] | None:
        """Split an L(alpha)L*(beta) shape into (alpha, beta); None otherwise.

        Either side may be trivial; both end at the common range vertex.
        """
        k = 0
        n = len(self.word)
        while k < n and self.word[k][1] > 0:
            k += 1
        if any(s > 0 for _, s in self.word[k:]):
            return None
        left_edges = tuple(e for e, _ in self.word[:k])
        right_edges = tuple(e for e, _ in reversed(self.word[k:]))
        if left_edges:
            left = Path(self.graph, left_edges, None)
            mid = left.target
        elif right_edges:
            mid = self.graph.target(right_edges[-1])
            left = Path(self.graph, (), mid)
        else:
            mid = self.anchor
            left = Path(self.graph, (), mid)
        right = Path(self.graph, right_edges, None) if right_edges else Path(self.graph, (), mid)
        return left, right

    def adjoint(self) -> "Monomial":
        return Monomial(
            self.graph,
            tuple((e, -s) for e, s in reversed(self.word)),
            self.anchor,
        )

    def sort_key(self):
        k = 0
        while k < len(self.word) and self.word[k][1] > 0:
            k += 1
        lead = tuple(e for e, _ in self.word[:k]) if k else (self.source,)
        rest = self.word[k:]
        return (k, lead, len(rest), rest)

    def render(self) -> str:
        if not self.word:
            return f"P({self.anchor})"
        runs = []
        for e, s in self.word:
            if runs and runs[-1][0] == s:
                runs[-1][1].append(e)
            else:
                runs.append([s, [e]])
        bits = []
        for s, edges in runs:
            if s > 0:
                bits.append("L(" + ".".join(edges) + ")")
            else:
                bits.append("L*(" + ".".join(reversed(edges)) + ")")
        return "".join(bits)

    def __repr__(self):
        return self.render()


def mul_monomials(m1: Monomial, m2: Monomial, mode: Mode) -> Monomial | None:
    """Product of two normal forms; None encodes the zero operator.

    The walks must chain at the junction; cancellation then happens at the
    seam only. Paper mode cancels mutually inverse items in either order;
    vacuum mode cancels only annihilation-then-creation of one edge and kills
    the product when distinct generators meet star-to-plain.
    """
    if m1.graph is not m2.graph:
        raise UsageError("monomials of different graphs")
    if m1.target != m2.source:
        return None
    w1, w2 = m1.word, m2.word
    i, j, n2 = len(w1), 0, len(w2)
    if mode is Mode.PAPER:
        while i and j < n2 and w1[i - 1][0] == w2[j][0] and w1[i - 1][1] == -w2[j][1]:
            i -= 1
            j += 1
    else:
        while i and j < n2 and w1[i - 1][1] < 0 and w2[j][1] > 0:
            if w1[i - 1][0] != w2[j][0]:
                return None
            i -= 1
            j += 1
    word = w1[:i] + w2[j:]
    if not word:
        return Monomial(m1.graph, (), m1.source)
    return Monomial(m1.graph, word, None)


def letter_monomial(letter: Letter, mode: Mode) -> Monomial:
    """The normal form of a single generator letter."""
    p = letter.path
    if p.is_trivial:
        return Monomial(p.graph, (), p.base)
    if letter.star:
        return Monomial(p.graph, tuple((e, -1) for e in reversed(p.edges)), None)
    return Monomial(p.graph, tuple((e, 1) for e in p.edges), None)


def reduce_word(ctx: "AlgebraContext", word: Iterable[Letter]) -> Monomial | None:
    """Normal form of a product of generator letters; None is zero.

    The fold applies the product rules left to right; each rule is an exact
    identity of the chosen semantics, so any application order agrees.
    """
    letters = list(word)
    if not letters:
        raise UsageError(
            "empty word has no monomial normal form; the identity is the sum "
            "of all vertex projections"
        )
    for l in letters:
        if l.path.graph is not ctx.graph:
            raise UsageError("letter belongs to a different graph")
    acc = letter_monomial(letters[0], ctx.mode)
    for l in letters[1:]:
        acc = mul_monomials(acc, letter_monomial(l, ctx.mode), ctx.mode)
        if acc is None:
            return None
    return acc


class AlgebraContext:
    """A graph together with a fixed reduction semantics."""

    def __init__(self, graph: Graph, mode: Mode = Mode.PAPER):
        self.graph = graph
        self.mode = mode

    def __repr__(self):
        return f"AlgebraContext({self.graph!r}, {self.mode.value})"

    def compatible(self, other: "AlgebraContext") -> bool:
        return self.graph is other.graph and self.mode is other.mode

    # --- element constructors -------------------------------------------

    def zero(self) -> "Element":
        return Element(self, {})

    def element(self, terms: dict[Monomial, GaussianRational]) -> "Element":
        return Element(self, {m: c for m, c in terms.items() if c})

    def monomial(self, m: Monomial, coeff=1) -> "Element":
        """Element with one term; the walk is renormalized for this context."""
        if m.graph is not self.graph:
            raise UsageError("monomial belongs to a different graph")
        if m.word:
            acc = Monomial(self.graph, m.word[:1], None)
            for item in m.word[1:]:
                acc = mul_monomials(acc, Monomial(self.graph, (item,), None), self.mode)
                if acc is None:
                    return self.zero()
            m = acc
        return self.element({m: GaussianRational.of(coeff)})

    def projection(self, v: str) -> "Element":
        if not self.graph.has_vertex(v):
            raise UsageError(f"unknown vertex {v!r}")
        return self.element({Monomial(self.graph, (), v): ONE})

    def one(self) -> "Element":
        """The unit: the sum of all vertex projections."""
        return self.element(
            {Monomial(self.graph, (), v): ONE for v in self.graph.vertices}
        )

    def creation(self, path: Path, coeff=1) -> "Element":
        return self.monomial(letter_monomial(Letter(path, False), self.mode), coeff)

    def annihilation(self, path: Path, coeff=1) -> "Element":
        return self.monomial(letter_monomial(Letter(path, True), self.mode), coeff)

    def from_word(self, word: Iterable[Letter], coeff=1) -> "Element":
        m = reduce_word(self, word)
        if m is None:
            return self.zero()
        return self.element({m: GaussianRational.of(coeff)})


class SupportDecomposition(NamedTuple):
    diagonal: "Element"
    starred: "Element"
    unstarred: "Element"
    vertices: frozenset[str]
    fp_star: frozenset[Path]
    fp_nonstar: frozenset[Path]


class Element(object):
    """Finite exact linear combination of nonzero reduced monomials."""

    __slots__ = ("ctx", "terms", "_key")

    def __init__(self, ctx: AlgebraContext, terms: dict[Monomial, GaussianRational]):
        self.ctx = ctx
        self.terms = terms
        self._key = None

    # --- basics -----------------------------------------------------------

    @property
    def is_zero(self) -> bool:
        return not self.terms

    def sorted_terms(self) -> list[tuple[Monomial, GaussianRational]]:
        return sorted(self.terms.items(), key=lambda mc: mc[0].sort_key())

    def _hash_key(self):
        if self._key is None:
            self._key = (self.ctx.graph, self.ctx.mode, frozenset(self.terms.items()))
        return self._key

    def __eq__(self, other):
        if not isinstance(other, Element):
            return NotImplemented
        return self._hash_key() == other._hash_key()

    def __hash__(self):
        g, mode, terms = self._hash_key()
        return hash((id(g), mode, terms))

    def __bool__(self):
        return not self.is_zero

    # --- linear structure ---------------------------------------------------

    def _check(self, other: "Element"):
        if not isinstance(other, Element):
            raise UsageError(f"expected an Element, got {other!r}")
        if not self.ctx.compatible(other.ctx):
            raise UsageError("elements of different algebra contexts never combine")

    def __add__(self, other: "Element") -> "Element":
        self._check(other)
        terms = dict(self.terms)
        for m, c in other.terms.items():
            s = terms.get(m)
            s = c if s is None else s + c
            if s:
                terms[m] = s
            else:
                terms.pop(m, None)
        return Element(self.ctx, terms)

    def __neg__(self) -> "Element":
        return Element(self.ctx, {m: -c for m, c in self.terms.items()})

    def __sub__(self, other: "Element") -> "Element":
        return self + (-other)

    def scaled(self, c) -> "Element":
        c = GaussianRational.of(c)
        if not c:
            return self.ctx.zero()
        return Element(self.ctx, {m: co * c for m, co in self.terms.items()})

    def __mul__(self, other):
        if isinstance(other, Element):
            self._check(other)
            mode = self.ctx.mode
            out: dict[Monomial, GaussianRational] = {}
            for m1, c1 in self.terms.items():
                for m2, c2 in other.terms.items():
                    m = mul_monomials(m1, m2, mode)
                    if m is None:
                        continue
                    c = c1 * c2
                    s = out.get(m)
                    s = c if s is None else s + c
                    if s:
                        out[m] = s
                    else:
                        out.pop(m, None)
            return Element(self.ctx, out)
        return self.scaled(other)

    def __rmul__(self, other):
        # scalars commute with everything; Element*Element goes through __mul__
        return self.scaled(other)

    def __pow__(self, k: int) -> "Element":
        if k < 1:
            raise UsageError("element powers need k >= 1")
        out = self
        for _ in range(k - 1):
            out = out * self
        return out

    # --- star structure and expectation ------------------------------------

    def adjoint(self) -> "Element":
        return Element(
            self.ctx, {m.adjoint(): c.conjugate() for m, c in self.terms.items()}
        )

    @property
    def is_selfadjoint(self) -> bool:
        return self == self.adjoint()

    def expectation(self) -> "Element":
        """Conditional expectation onto the diagonal: keep vertex projections."""
        return Element(
            self.ctx, {m: c for m, c in self.terms.items() if m.is_vertex_projection}
        )

    @property
    def is_diagonal(self) -> bool:
        return all(m.is_vertex_projection for m in self.terms)

    def vertex_coefficient(self, v: str) -> GaussianRational:
        return self.terms.get(
            Monomial(self.ctx.graph, (), v), GaussianRational.of(0)
        )

    def support_decomposition(self) -> SupportDecomposition:
        """Split a Fourier expansion into diagonal, paired and unpaired parts."""
        diag: dict[Monomial, GaussianRational] = {}
        created: dict[Path, tuple[Monomial, GaussianRational]] = {}
        annihilated: dict[Path, tuple[Monomial, GaussianRational]] = {}
        for m, c in self.terms.items():
            if m.is_vertex_projection:
                diag[m] = c
            elif m.is_pure:
                if m.word[0][1] > 0:
                    created[Path(m.graph, tuple(e for e, _ in m.word), None)] = (m, c)
                else:
                    edges = tuple(e for e, _ in reversed(m.word))
                    annihilated[Path(m.graph, edges, None)] = (m, c)
            else:
                raise NotAFourierExpansion(
                    f"mixed monomial {m.render()} has no Fourier-expansion support"
                )
        star_paths = frozenset(created) & frozenset(annihilated)
        starred: dict[Monomial, GaussianRational] = {}
        unstarred: dict[Monomial, GaussianRational] = {}
        for w, (m, c) in list(created.items()) + list(annihilated.items()):
            tgt = starred if w in star_paths else unstarred
            tgt[m] = c
        return SupportDecomposition(
            Element(self.ctx, diag),
            Element(self.ctx, starred),
            Element(self.ctx, unstarred),
            frozenset(m.anchor for m in diag),
            star_paths,
            (frozenset(created) | frozenset(annihilated)) - star_paths,
        )

    # --- rendering ----------------------------------------------------------

    def render(self) -> str:
        if self.is_zero:
            return "0"
        parts = []
        for i, (m, c) in enumerate(self.sorted_terms()):
            txt = m.render()
            if c.is_real:
                negative = c.re < 0
                mag = -c.re if negative else c.re
                coeff = "" if mag == 1 else f"{mag}*"
                if i == 0:
                    parts.append(("-" if negative else "") + coeff + txt)
                else:
                    parts.append((" - " if negative else " + ") + coeff + txt)
            else:
                lead = "" if i == 0 else " + "
                parts.append(f"{lead}({c.re},{c.im})*{txt}")
        return "".join(parts)

    def __repr__(self):
        return f"<Element {self.render()}>"


# module-level aliases matching the operation names of the build contract
def multiply(a: Element, b: Element) -> Element:
    return a * b


def adjoint(a: Element) -> Element:
    return a.adjoint()


def expectation(a: Element) -> Element:
    return a.expectation()


def support_decompose(a: Element) -> SupportDecomposition:
    return a.support_decomposition()
