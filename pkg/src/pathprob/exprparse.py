"""Parser for operator expressions.

Grammar (whitespace insignificant)::

    element := ['+'|'-'] term (('+'|'-') term)*
    term    := [scalar '*'] atom+ | scalar
    atom    := 'L(' word ')' | 'L*(' word ')' | 'Ls(' word ')' | 'P(' id ')'
    word    := id ('.' id)*
    scalar  := INT ['/' INT] | '(' rat ',' rat ')'      -- complex pair
    rat     := ['+'|'-'] INT ['/' INT]

``Ls`` is a shell-safe alias for ``L*``. A bare scalar term means that
multiple of the identity (the sum of all vertex projections). Juxtaposed
atoms multiply, which lets the parser read back every rendered monomial.
Words inside ``L(...)`` must name declared edges and compose head-to-tail;
anything else is a parse error.
"""

from __future__ import annotations

from fractions import Fraction

from .algebra import AlgebraContext, Element
from .errors import ExpressionError
from .scalars import GaussianRational

_IDENT_CHARS = set("abcdefghijklmnopqrstuvwxyzABCDEFGHIJKLMNOPQRSTUVWXYZ0123456789_-")


class _Parser:
    def __init__(self, text: str, ctx: AlgebraContext):
        self.text = text
        self.pos = 0
        self.ctx = ctx

    def error(self, msg: str):
        raise ExpressionError(f"{msg} (at position {self.pos} in {self.text!r})")

    def skip_ws(self):
        while self.pos < len(self.text) and self.text[self.pos].isspace():
            self.pos += 1

    def peek(self) -> str:
        self.skip_ws()
        return self.text[self.pos] if self.pos < len(self.text) else ""

    def eat(self, ch: str):
        if self.peek() != ch:
            self.error(f"expected {ch!r}")
        self.pos += 1

    def at_atom(self) -> bool:
        self.skip_ws()
        t, i = self.text, self.pos
        if t.startswith("L*(", i) or t.startswith("Ls(", i) or t.startswith("L(", i):
            return True
        return t.startswith("P(", i)

    # --- numbers ----------------------------------------------------------

    def parse_int(self) -> int:
        self.skip_ws()
        start = self.pos
        while self.pos < len(self.text) and self.text[self.pos].isdigit():
            self.pos += 1
        if self.pos == start:
            self.error("expected an integer")
        return int(self.text[start : self.pos])

    def parse_rat(self) -> Fraction:
        sign = 1
        if self.peek() in "+-":
            if self.peek() == "-":
                sign = -1
            self.pos += 1
        num = self.parse_int()
        if self.peek() == "/":
            self.pos += 1
            den = self.parse_int()
            if den == 0:
                self.error("zero denominator")
            return Fraction(sign * num, den)
        return Fraction(sign * num)

    def parse_scalar(self) -> GaussianRational:
        if self.peek() == "(":
            self.eat("(")
            re_ = self.parse_rat()
            self.eat(",")
            im = self.parse_rat()
            self.eat(")")
            return GaussianRational(re_, im)
        return GaussianRational(self.parse_rat())

    # --- atoms ------------------------------------------------------------

    def parse_ident(self) -> str:
        self.skip_ws()
        start = self.pos
        while self.pos < len(self.text) and self.text[self.pos] in _IDENT_CHARS:
            self.pos += 1
        if self.pos == start:
            self.error("expected an identifier")
        return self.text[start : self.pos]

    def parse_word(self):
        ids = [self.parse_ident()]
        while self.peek() == ".":
            self.pos += 1
            ids.append(self.parse_ident())
        g = self.ctx.graph
        for eid in ids:
            if not g.has_edge(eid):
                self.error(f"unknown edge {eid!r}")
        for a, b in zip(ids, ids[1:]):
            if g.target(a) != g.source(b):
                self.error(f"inadmissible word: {a!r} does not compose with {b!r}")
        return g.path(*ids)

    def parse_atom(self) -> Element:
        t, i = self.text, self.pos
        if t.startswith("L*(", i) or t.startswith("Ls(", i):
            self.pos += 3
            p = self.parse_word()
            self.eat(")")
            return self.ctx.annihilation(p)
        if t.startswith("L(", i):
            self.pos += 2
            p = self.parse_word()
            self.eat(")")
            return self.ctx.creation(p)
        if t.startswith("P(", i):
            self.pos += 2
            v = self.parse_ident()
            if not self.ctx.graph.has_vertex(v):
                self.error(f"unknown vertex {v!r}")
            self.eat(")")
            return self.ctx.projection(v)
        self.error("expected L(...), L*(...), Ls(...) or P(...)")

    # --- terms and elements -------------------------------------------------

    def parse_term(self) -> Element:
        if self.at_atom():
            coeff = GaussianRational.of(1)
        else:
            coeff = self.parse_scalar()
            if self.peek() == "*":
                self.pos += 1
                if not self.at_atom():
                    self.error("expected an atom after '*'")
            elif self.at_atom():
                self.error("expected '*' between scalar and atom")
            else:
                return self.ctx.one().scaled(coeff)
        out = self.parse_atom()
        while self.at_atom():
            out = out * self.parse_atom()
        return out.scaled(coeff)

    def parse_element(self) -> Element:
        total = self.ctx.zero()
        sign = 1
        if self.peek() in "+-":
            if self.peek() == "-":
                sign = -1
            self.pos += 1
        while True:
            term = self.parse_term()
            total = total + (term if sign > 0 else -term)
            c = self.peek()
            if not c:
                return total
            if c == "+":
                sign = 1
            elif c == "-":
                sign = -1
            else:
                self.error(f"unexpected {c!r}")
            self.pos += 1


def parse_element(ctx: AlgebraContext, text: str) -> Element:
    """Parse an operator expression in the given algebra context."""
    if not text.strip():
        raise ExpressionError("empty expression")
    return _Parser(text, ctx).parse_element()
