import random
from fractions import Fraction

import pytest

from pathprob import (
    AlgebraContext,
    Letter,
    Mode,
    MomentFunctional,
    Partition,
    ResourceLimitError,
    UsageError,
)

from conftest import all_paths, circulant, flower, one_loop, single_edge


def rand_element(ctx, rng, paths, max_terms=3):
    coeffs = [1, -1, Fraction(1, 2), Fraction(-1, 2)]
    a = ctx.zero()
    for _ in range(rng.randint(1, max_terms)):
        p = rng.choice(paths)
        if p.is_trivial:
            t = ctx.projection(p.base)
        elif rng.random() < 0.5:
            t = ctx.creation(p)
        else:
            t = ctx.annihilation(p)
        a = a + t.scaled(rng.choice(coeffs))
    return a


def test_moment_examples():
    g = single_edge()
    ctx = AlgebraContext(g, Mode.PAPER)
    f = MomentFunctional(ctx)
    e = g.path("e")
    assert f.moment([ctx.annihilation(e), ctx.creation(e)]) == ctx.projection("v2")
    a = ctx.projection("v1").scaled(2) + ctx.creation(e)
    assert f.moment([a]) == a.expectation()
    # odd-length single-path words have vanishing expectation
    assert f.moment([ctx.creation(e)] * 3).is_zero
    with pytest.raises(UsageError):
        f.moment([])


def test_partitioned_moment_nesting():
    g = single_edge()
    ctx = AlgebraContext(g, Mode.PAPER)
    f = MomentFunctional(ctx)
    e = g.path("e")
    ce, ae = ctx.creation(e), ctx.annihilation(e)
    # interval blocks multiply as orthogonal projections
    pi = Partition.from_blocks([[1, 2], [3, 4]])
    val = f.partitioned_moment(pi, [ce, ae, ae, ce])
    assert val.is_zero  # P(v1) * P(v2) = 0
    # nested block feeds its value into the preceding factor
    gl = one_loop()
    cl = AlgebraContext(gl, Mode.PAPER)
    fl = MomentFunctional(cl)
    l = gl.path("l")
    pi = Partition.from_blocks([[1, 4], [2, 3]])
    val = fl.partitioned_moment(pi, [cl.creation(l), cl.creation(l),
                                     cl.annihilation(l), cl.annihilation(l)])
    assert val == cl.projection("v")
    # the bottom partition is the product of single expectations
    bottom = Partition.bottom(3)
    assert fl.partitioned_moment(bottom, [cl.creation(l)] * 3).is_zero
    one = cl.one()
    assert fl.partitioned_moment(bottom, [one] * 3) == one
    # the top partition is the plain moment
    top = Partition.top(4)
    facs = [cl.creation(l), cl.annihilation(l)] * 2
    assert fl.partitioned_moment(top, facs) == fl.moment(facs)


def test_cumulant_first_order_and_scaling(loop_paper):
    f = MomentFunctional(loop_paper)
    l = loop_paper.graph.path("l")
    a = loop_paper.projection("v").scaled(Fraction(2, 3)) + loop_paper.creation(l)
    assert f.cumulant([a]) == a.expectation()
    # multilinearity in each slot
    b = loop_paper.creation(l) + loop_paper.annihilation(l)
    k2 = f.cumulant([b, b])
    assert f.cumulant([b.scaled(2), b]) == k2.scaled(2)
    assert f.cumulant([b, b.scaled(Fraction(-1, 2))]) == k2.scaled(Fraction(-1, 2))
    c = loop_paper.creation(l ** 2)
    assert f.cumulant([b + c, b]) == f.cumulant([b, b]) + f.cumulant([c, b])


def test_loop_second_cumulant_paper(loop_paper):
    f = MomentFunctional(loop_paper)
    l = loop_paper.graph.path("l")
    a = loop_paper.creation(l) + loop_paper.annihilation(l)
    assert f.cumulant([a, a]) == loop_paper.projection("v").scaled(2)


def test_power_collision_second_cumulant(loop_paper):
    # P(z1,z2) = z1^3 + z2^3 at l^2 and Q = z1^2 + z2^2 at l^3 collide at l^6
    f = MomentFunctional(loop_paper)
    l = loop_paper.graph.path("l")
    p = loop_paper.creation(l ** 2) ** 3 + loop_paper.annihilation(l ** 2) ** 3
    q = loop_paper.creation(l ** 3) ** 2 + loop_paper.annihilation(l ** 3) ** 2
    assert p == q  # both reduce to L(l^6) + L*(l^6)
    assert f.cumulant([p, q]) == loop_paper.projection("v").scaled(2)


def test_moment_cumulant_inversion_randomized():
    rng = random.Random(2024)
    for graph in (one_loop(), single_edge(), flower(2)):
        paths = [graph.vertex_path(v) for v in graph.vertices] + all_paths(graph, 2)
        for mode in (Mode.PAPER, Mode.VACUUM):
            ctx = AlgebraContext(graph, mode)
            f = MomentFunctional(ctx)
            for _ in range(3):
                a = rand_element(ctx, rng, paths)
                for n in range(1, 6):
                    assert f.moment_from_cumulants([a] * n) == f.moment([a] * n)


def test_moment_cumulant_inversion_mixed_factors():
    # distinct factors per slot pin the nesting convention much harder than
    # equal-factor tuples: any misplaced insertion breaks this identity
    rng = random.Random(4077)
    for graph in (single_edge(), flower(2), circulant(3)):
        paths = [graph.vertex_path(v) for v in graph.vertices] + all_paths(graph, 2)
        for mode in (Mode.PAPER, Mode.VACUUM):
            ctx = AlgebraContext(graph, mode)
            f = MomentFunctional(ctx)
            for _ in range(4):
                for n in range(2, 6):
                    facs = [rand_element(ctx, rng, paths, 2) for _ in range(n)]
                    assert f.moment_from_cumulants(facs) == f.moment(facs), (
                        mode,
                        [x.render() for x in facs],
                    )


def test_partitioned_cumulant_shapes(loop_vacuum):
    f = MomentFunctional(loop_vacuum)
    l = loop_vacuum.graph.path("l")
    a = loop_vacuum.creation(l) + loop_vacuum.annihilation(l)
    # single block is the plain cumulant
    assert f.partitioned_cumulant(Partition.top(4), [a] * 4) == f.cumulant([a] * 4)
    # singleton blocks multiply first-order cumulants
    d = loop_vacuum.projection("v").scaled(Fraction(1, 2))
    assert f.partitioned_cumulant(Partition.bottom(3), [d] * 3) == d * d * d


def test_cumulant_vanishes_on_diagonal_entries():
    # k_n(..., d, ...) = 0 for diagonal d and n >= 2
    rng = random.Random(5)
    graph = circulant(3)
    paths = all_paths(graph, 2)
    for mode in (Mode.PAPER, Mode.VACUUM):
        ctx = AlgebraContext(graph, mode)
        f = MomentFunctional(ctx)
        for _ in range(10):
            d = ctx.projection(rng.choice(graph.vertices)).scaled(
                rng.choice([1, 2, Fraction(1, 2)])
            )
            n = rng.randint(2, 4)
            slot = rng.randrange(n)
            facs = [rand_element(ctx, rng, paths, 2) for _ in range(n)]
            facs[slot] = d
            assert f.cumulant(facs).is_zero


def test_bimodule_boundary():
    graph = circulant(3)
    ctx = AlgebraContext(graph, Mode.PAPER)
    f = MomentFunctional(ctx)
    rng = random.Random(17)
    paths = all_paths(graph, 2)
    for _ in range(10):
        n = rng.randint(2, 4)
        facs = [rand_element(ctx, rng, paths, 2) for _ in range(n)]
        d, dp = ctx.projection("v1"), ctx.projection("v2")
        left = list(facs)
        left[0] = d * left[0]
        left[-1] = left[-1] * dp
        assert f.cumulant(left) == d * f.cumulant(facs) * dp


def test_parity_of_single_path_cumulants():
    for graph in (one_loop(), single_edge()):
        w = all_paths(graph, 1)[0]
        for mode in (Mode.PAPER, Mode.VACUUM):
            ctx = AlgebraContext(graph, mode)
            f = MomentFunctional(ctx)
            a = ctx.creation(w) + ctx.annihilation(w)
            for n in (1, 3, 5):
                assert f.cumulant([a] * n).is_zero


def test_connected_set_and_mu():
    g = single_edge()
    ctx = AlgebraContext(g, Mode.PAPER)
    f = MomentFunctional(ctx)
    e = g.path("e")
    word = [Letter(e), Letter(e, True)]
    cs = f.connected_set(word)
    assert cs.partitions == (Partition.top(2),)
    assert f.mu_coefficient(word) == 1
    # a word that reduces to zero is connected to nothing
    dead = [Letter(e), Letter(e)]
    assert f.connected_set(dead).partitions == ()
    assert f.mu_coefficient(dead) == 0
    assert f.cumulant_via_mu(dead).is_zero
    # loop word: the top partition participates
    gl = one_loop()
    cl = AlgebraContext(gl, Mode.PAPER)
    fl = MomentFunctional(cl)
    l = gl.path("l")
    w4 = [Letter(l), Letter(l, True), Letter(l), Letter(l, True)]
    assert Partition.top(4) in fl.connected_set(w4).partitions


def test_cumulant_via_mu_agrees_with_engine():
    # both routes agree on pure generator words over the test graphs
    import itertools

    for graph, n_max in ((one_loop(), 4), (single_edge(), 4), (flower(2), 3)):
        for mode in (Mode.PAPER, Mode.VACUUM):
            ctx = AlgebraContext(graph, mode)
            f = MomentFunctional(ctx)
            letters = []
            for e in graph.edge_ids:
                letters.append(Letter(graph.path(e), False))
                letters.append(Letter(graph.path(e), True))
            for n in range(2, n_max + 1):
                for word in itertools.product(letters, repeat=n):
                    via_mu = f.cumulant_via_mu(list(word))
                    direct = f.cumulant([ctx.from_word([l]) for l in word])
                    assert via_mu == direct, (mode, word)


def test_circulant_alternating_pattern_vertices():
    # on the directed cycle, the alternating cumulants of one edge land on
    # its endpoints: starting unstarred lands at the source, starred at the
    # target, with the same integer in front as in the single-edge case
    g = circulant(3)
    ctx = AlgebraContext(g, Mode.PAPER)
    f = MomentFunctional(ctx)
    e1 = g.path("e1")
    ce, ae = ctx.creation(e1), ctx.annihilation(e1)
    mu = {2: 1, 4: -1, 6: 2}
    for n in (2, 4, 6):
        plain_first = [ce, ae] * (n // 2)
        star_first = [ae, ce] * (n // 2)
        assert f.cumulant(plain_first) == ctx.projection("v1").scaled(mu[n])
        assert f.cumulant(star_first) == ctx.projection("v2").scaled(mu[n])


def test_enumeration_cap_propagates(loop_paper):
    f = MomentFunctional(loop_paper)
    a = loop_paper.projection("v")
    with pytest.raises(ResourceLimitError):
        f.cumulant([a] * 15)
