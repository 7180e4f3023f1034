import json

import pytest

from pathprob import (
    AlgebraContext,
    Mode,
    MomentFunctional,
    UsageError,
    check_even,
    check_free,
    check_rdiagonal,
    check_semicircular,
    generating_operator,
    predicted_free,
    predicted_free_supports,
)

from conftest import all_paths, circulant, flower, one_loop, single_edge, two_cycle


def test_semicircular_vacuum_loop(loop_vacuum):
    l = loop_vacuum.graph.path("l")
    a = loop_vacuum.creation(l) + loop_vacuum.annihilation(l)
    rep = check_semicircular(loop_vacuum, a, n_max=8)
    assert rep.passed
    assert rep.cumulant_table[(2, None)] == loop_vacuum.projection("v")
    for n in (1, 3, 4, 5, 6, 7, 8):
        assert rep.cumulant_table[(n, None)].is_zero


def test_semicircular_paper_loop_reports_arcsine(loop_paper):
    l = loop_paper.graph.path("l")
    a = loop_paper.creation(l) + loop_paper.annihilation(l)
    rep = check_semicircular(loop_paper, a, n_max=6)
    # the paper-mode relations make the element arcsine-like: k_2 = 2 P(v)
    # but k_4 = -2 P(v) survives, so the bounded check fails with a witness
    assert rep.cumulant_table[(2, None)] == loop_paper.projection("v").scaled(2)
    assert rep.cumulant_table[(4, None)] == loop_paper.projection("v").scaled(-2)
    assert not rep.passed
    assert rep.witness["order"] == 4


def test_semicircular_rejects_non_selfadjoint(loop_paper):
    rep = check_semicircular(loop_paper, loop_paper.creation(loop_paper.graph.path("l")), 4)
    assert rep.verdict == "fail"
    assert rep.witness["reason"] == "not self-adjoint"


def test_even_both_modes():
    g = single_edge()
    e = g.path("e")
    for mode in (Mode.PAPER, Mode.VACUUM):
        ctx = AlgebraContext(g, mode)
        a = ctx.creation(e) + ctx.annihilation(e)
        rep = check_even(ctx, a, n_max=7)
        assert rep.passed
        for n in (1, 3, 5, 7):
            assert rep.cumulant_table[(n, None)].is_zero


def test_even_shape_paper():
    g = single_edge()
    ctx = AlgebraContext(g, Mode.PAPER)
    e = g.path("e")
    a = ctx.creation(e) + ctx.annihilation(e)
    f = MomentFunctional(ctx)
    for n in (2, 4, 6):
        k = f.cumulant([a] * n)
        c1, c2 = k.vertex_coefficient("v1"), k.vertex_coefficient("v2")
        assert c1 == c2 and c1.is_real and c1.re.denominator == 1


def test_even_integers_match_scalar_free_cumulants():
    # independent oracle: a = L(e) + L*(e) has all even paper-mode moments
    # equal to 1 at each endpoint (the words must alternate strictly), so the
    # per-vertex integers mu_n must solve the scalar free moment-cumulant
    # recursion m_n = sum over NC(n) of prod kappa_{|block|} with m_2k = 1
    from pathprob import enumerate_nc

    kappa = {}
    for n in range(1, 7):
        total = 0
        for pi in enumerate_nc(n):
            if len(pi.blocks) == 1:
                continue
            prod = 1
            for b in pi.blocks:
                prod *= kappa.get(len(b), 0)
            total += prod
        moment = 1 if n % 2 == 0 else 0
        kappa[n] = moment - total
    assert (kappa[2], kappa[4], kappa[6]) == (1, -1, 2)
    g = single_edge()
    ctx = AlgebraContext(g, Mode.PAPER)
    e = g.path("e")
    a = ctx.creation(e) + ctx.annihilation(e)
    f = MomentFunctional(ctx)
    for n in (2, 4, 6):
        want = (ctx.projection("v1") + ctx.projection("v2")).scaled(kappa[n])
        assert f.cumulant([a] * n) == want


def test_even_fails_with_diagonal_part(loop_paper):
    l = loop_paper.graph.path("l")
    a = loop_paper.projection("v") + loop_paper.creation(l) + loop_paper.annihilation(l)
    rep = check_even(loop_paper, a, n_max=3)
    assert rep.verdict == "fail"
    assert rep.witness["order"] == 1


def test_rdiagonal_paths_both_modes():
    for graph in (single_edge(), one_loop()):
        w = all_paths(graph, 1)[0]
        for mode in (Mode.PAPER, Mode.VACUUM):
            ctx = AlgebraContext(graph, mode)
            rep = check_rdiagonal(ctx, ctx.creation(w), n_max=6)
            assert rep.passed, (graph, mode, rep.witness)


def test_rdiagonal_nonzero_entries_are_alternating(loop_paper):
    l = loop_paper.graph.path("l")
    rep = check_rdiagonal(loop_paper, loop_paper.creation(l), n_max=6)
    assert rep.passed
    nonzero = {k for k, v in rep.cumulant_table.items() if not v.is_zero}
    assert nonzero == {(2, "1*"), (2, "*1"), (4, "1*1*"), (4, "*1*1"),
                       (6, "1*1*1*"), (6, "*1*1*1")}


def test_rdiagonal_vertex_projection_fails(loop_paper):
    rep = check_rdiagonal(loop_paper, loop_paper.projection("v"), n_max=3)
    assert rep.verdict == "fail"
    assert rep.witness["order"] == 1


def test_free_distinct_edges_flower():
    g = flower(2)
    ctx = AlgebraContext(g, Mode.PAPER)
    rep = check_free(ctx, [ctx.creation(g.path("a"))], [ctx.creation(g.path("b"))],
                     n_max=4, max_word_len=2)
    assert rep.passed


def test_free_power_collision(loop_paper):
    l = loop_paper.graph.path("l")
    rep = check_free(loop_paper, [loop_paper.creation(l ** 2)],
                     [loop_paper.creation(l ** 3)], n_max=4, max_word_len=3)
    assert rep.verdict == "fail"
    assert rep.witness["order"] == 2
    # the colliding word is l^6 from both families
    assert set(rep.witness["factors"]) == {"L(l.l.l.l.l.l)", "L*(l.l.l.l.l.l)"}


def test_free_empty_family_indeterminate(loop_paper):
    rep = check_free(loop_paper, [loop_paper.creation(loop_paper.graph.path("l"))],
                     [], n_max=4)
    assert rep.verdict == "indeterminate"


def test_free_general_route_agrees(loop_paper):
    l = loop_paper.graph.path("l")
    gens = ([loop_paper.creation(l ** 2)], [loop_paper.creation(l ** 3)])
    # the l^6 collision needs word length 3 on the first family
    short = check_free(loop_paper, *gens, n_max=2, max_word_len=2)
    assert short.passed
    fast = check_free(loop_paper, *gens, n_max=2, max_word_len=3)
    slow = check_free(loop_paper, *gens, n_max=2, max_word_len=3, force_general=True)
    assert fast.verdict == slow.verdict == "fail"
    assert fast.witness["order"] == slow.witness["order"] == 2


def test_free_general_budget_and_sampling():
    from pathprob import ResourceLimitError

    g = flower(2)
    ctx = AlgebraContext(g, Mode.PAPER)
    # multi-term generators force the general fallback
    a = ctx.creation(g.path("a")) + ctx.annihilation(g.path("a"))
    b = ctx.creation(g.path("b")) + ctx.annihilation(g.path("b"))
    with pytest.raises(ResourceLimitError):
        check_free(ctx, [a], [b], n_max=6, max_word_len=2, tuple_budget=10)
    rep = check_free(ctx, [a], [b], n_max=3, max_word_len=1, tuple_budget=10,
                     sample=40, seed=7)
    assert rep.verdict in ("pass", "fail")
    assert any("sampled" in note for note in rep.notes) or rep.verdict == "fail"
    # small enough to enumerate exhaustively: self against self must fail
    rep2 = check_free(ctx, [a], [a], n_max=2, max_word_len=1, tuple_budget=1000)
    assert rep2.verdict == "fail"


def test_predicted_free():
    g = two_cycle()
    e1, e2 = g.path("e1"), g.path("e2")
    assert predicted_free(e1, e2)
    l = g.path("e1", "e2")
    assert predicted_free(l, e1)
    gl = one_loop()
    lp = gl.path("l")
    assert not predicted_free(lp ** 2, lp ** 3)
    ctx = AlgebraContext(g, Mode.PAPER)
    assert predicted_free_supports(ctx.creation(e1) + ctx.annihilation(e1),
                                   ctx.creation(e2))
    cl = AlgebraContext(gl, Mode.PAPER)
    assert not predicted_free_supports(cl.creation(lp ** 2), cl.creation(lp ** 3))


def test_generating_operator():
    g = flower(2)
    ctx = AlgebraContext(g, Mode.PAPER)
    t = generating_operator(ctx)
    pa, pb = g.path("a"), g.path("b")
    assert t == (ctx.creation(pa) + ctx.annihilation(pa)
                 + ctx.creation(pb) + ctx.annihilation(pb))
    assert t.is_selfadjoint
    c3 = AlgebraContext(circulant(3), Mode.PAPER)
    assert len(generating_operator(c3).terms) == 6
    with pytest.raises(UsageError):
        generating_operator(AlgebraContext(one_loop().__class__(["v"], []), Mode.PAPER))


def test_report_json_schema(loop_vacuum):
    l = loop_vacuum.graph.path("l")
    a = loop_vacuum.creation(l) + loop_vacuum.annihilation(l)
    rep = check_semicircular(loop_vacuum, a, n_max=4)
    data = rep.to_json()
    json.dumps(data)  # must be serializable
    assert set(data) >= {"subject", "mode", "n_max", "cumulants", "verdict"}
    assert data["mode"] == "vacuum"
    assert data["n_max"] == 4
    assert all(set(row) == {"n", "pattern", "value"} for row in data["cumulants"])
    bad = check_semicircular(loop_vacuum, loop_vacuum.creation(l), 2)
    assert "witness" in bad.to_json()
