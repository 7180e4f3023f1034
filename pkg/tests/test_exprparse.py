import random
from fractions import Fraction

import pytest

from pathprob import (
    AlgebraContext,
    ExpressionError,
    Mode,
    parse_element,
    scalar,
)

from conftest import circulant, flower, one_loop


def test_basic_forms(loop_paper):
    ctx = loop_paper
    l = ctx.graph.path("l")
    assert parse_element(ctx, "L(l) + L*(l)") == ctx.creation(l) + ctx.annihilation(l)
    assert parse_element(ctx, "L(l)+Ls(l)") == ctx.creation(l) + ctx.annihilation(l)
    assert parse_element(ctx, "2/3*P(v)") == ctx.projection("v").scaled(Fraction(2, 3))
    assert parse_element(ctx, "L(l.l)") == ctx.creation(l ** 2)
    assert parse_element(ctx, "-L(l)") == ctx.creation(l, -1)
    assert parse_element(ctx, "L(l) - L(l)").is_zero


def test_scalars_and_identity():
    ctx = AlgebraContext(circulant(3), Mode.PAPER)
    # a bare scalar multiplies the identity (sum of vertex projections)
    assert parse_element(ctx, "2") == ctx.one().scaled(2)
    assert parse_element(ctx, "1/2 + P(v1)") == ctx.one().scaled(
        Fraction(1, 2)
    ) + ctx.projection("v1")
    assert parse_element(ctx, "(1/2,-3)*P(v2)") == ctx.projection("v2").scaled(
        scalar(Fraction(1, 2), -3)
    )


def test_juxtaposed_atoms_multiply():
    g = flower(2)
    ctx = AlgebraContext(g, Mode.VACUUM)
    a, b = g.path("a"), g.path("b")
    assert parse_element(ctx, "L(a)L*(b)") == ctx.creation(a) * ctx.annihilation(b)
    assert parse_element(ctx, "2*P(v)L(a)") == ctx.creation(a, 2)


def test_errors(loop_paper):
    with pytest.raises(ExpressionError, match="unknown edge 'e9'"):
        parse_element(loop_paper, "L(l.e9)")
    with pytest.raises(ExpressionError, match="unknown vertex"):
        parse_element(loop_paper, "P(w)")
    with pytest.raises(ExpressionError):
        parse_element(loop_paper, "L(l")
    with pytest.raises(ExpressionError):
        parse_element(loop_paper, "")
    with pytest.raises(ExpressionError):
        parse_element(loop_paper, "L(l) 3")
    with pytest.raises(ExpressionError, match="zero denominator"):
        parse_element(loop_paper, "1/0*P(v)")
    ctx = AlgebraContext(circulant(3), Mode.PAPER)
    with pytest.raises(ExpressionError, match="inadmissible"):
        parse_element(ctx, "L(e1.e1)")


def test_roundtrip_randomized():
    rng = random.Random(99)
    for graph in (one_loop(), flower(2), circulant(3)):
        from conftest import all_paths

        paths = all_paths(graph, 2)
        for mode in (Mode.PAPER, Mode.VACUUM):
            ctx = AlgebraContext(graph, mode)
            for _ in range(40):
                a = ctx.zero()
                for _ in range(rng.randint(1, 4)):
                    p = rng.choice(paths)
                    t = ctx.creation(p) if rng.random() < 0.5 else ctx.annihilation(p)
                    c = scalar(
                        Fraction(rng.randint(-3, 3), rng.randint(1, 3)),
                        Fraction(rng.choice([0, 0, 1, -1])),
                    )
                    a = a + t.scaled(c)
                if rng.random() < 0.3:
                    a = a + ctx.projection(rng.choice(graph.vertices))
                if rng.random() < 0.3 and not a.is_zero:
                    a = a * a  # may create mixed monomials
                assert parse_element(ctx, a.render()) == a, a.render()
