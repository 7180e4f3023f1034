"""Pure-Python kernel for the hot monomial loops.

Same contract as the compiled twin (``pathprob._kernel``). Everything works
on an integer encoding: vertices are indices, a graph is the pair of arrays
``esrc``/``edst``, and a monomial is a triple ``(word, src, dst)`` where
``word`` holds signed edge indices shifted by one (``+(e+1)`` creation,
``-(e+1)`` annihilation) and src/dst are the walk endpoints.

The heavy entry points are ``cumulant_of_tuple`` (Moebius-weighted
partitioned expectations of a tuple of monomials) and ``sweep_mixed`` (the
freeness sweep over all degree-balanced mixed tuples). A "program" encodes
one noncrossing partition as ``(mu, blocks, gates, outer)``: per-block
position lists, the (anchor position, inner block) gate pairs induced by the
nesting rule, and the outermost blocks whose values must agree.
"""

from __future__ import annotations


def mono_mul(m1, m2, esrc, edst, paper):
    """Product of two encoded monomials; None is the zero operator."""
    w1, s1, d1 = m1
    w2, s2, d2 = m2
    if d1 != s2:
        return None
    i = len(w1)
    j = 0
    n2 = len(w2)
    if paper:
        while i and j < n2 and w1[i - 1] == -w2[j]:
            i -= 1
            j += 1
    else:
        while i and j < n2 and w1[i - 1] < 0 and w2[j] > 0:
            if w1[i - 1] != -w2[j]:
                return None
            i -= 1
            j += 1
    return (w1[:i] + w2[j:], s1, d2)


def _state_of(ids, monos, esrc, edst, paper, memo):
    """Running normal form of a product, memoized per id-prefix (None = zero)."""
    try:
        return memo[ids]
    except KeyError:
        pass
    if len(ids) == 1:
        state = monos[ids[0]]
    else:
        prev = _state_of(ids[:-1], monos, esrc, edst, paper, memo)
        state = (
            None if prev is None else mono_mul(prev, monos[ids[-1]], esrc, edst, paper)
        )
    memo[ids] = state
    return state


def expect_of_ids(ids, monos, esrc, edst, paper, memo):
    """Vertex index of E(product of monomials), or -1 when it vanishes."""
    state = _state_of(ids, monos, esrc, edst, paper, memo)
    if state is None:
        return -1
    word, src, dst = state
    if word:
        return -1
    return src


def cumulant_of_tuple(ids, programs, monos, degrees, rsrcs, esrc, edst, paper, memo):
    """Moebius sum over all program partitions; returns {vertex: int} pruned.

    A partition contributes only when every block is degree-balanced, every
    block expectation is a vertex projection, every gate matches the source
    of its anchor's right side, and all outermost blocks agree.
    """
    n = len(ids)
    degs = [degrees[i] for i in ids]
    out: dict[int, int] = {}
    for mu, blocks, gates, outer in programs:
        ok = True
        for blk in blocks:
            s = 0
            for pos in blk:
                s += degs[pos]
            if s:
                ok = False
                break
        if not ok:
            continue
        vals = []
        for blk in blocks:
            v = expect_of_ids(
                tuple(ids[pos] for pos in blk), monos, esrc, edst, paper, memo
            )
            if v < 0:
                ok = False
                break
            vals.append(v)
        if not ok:
            continue
        for anchor, child in gates:
            if vals[child] != rsrcs[ids[anchor]]:
                ok = False
                break
        if not ok:
            continue
        v0 = vals[outer[0]]
        for o in outer[1:]:
            if vals[o] != v0:
                ok = False
                break
        if not ok:
            continue
        out[v0] = out.get(v0, 0) + mu
    return {v: c for v, c in out.items() if c}


def sweep_mixed(
    n,
    programs,
    monos,
    degrees,
    rsrcs,
    families,
    esrc,
    edst,
    paper,
    memo,
):
    """First mixed tuple of length n with a nonzero cumulant, or None.

    Enumerates tuples over the monomial table in index order (DFS with
    degree-balance pruning), requiring at least one member of each family.
    Returns ``(witness_ids, {vertex: int}, checked)`` or ``(None, None,
    checked)`` where ``checked`` counts fully evaluated tuples.
    """
    m = len(degrees)
    if m == 0:
        return None, None, 0
    maxdeg = 0
    for d in degrees:
        if abs(d) > maxdeg:
            maxdeg = abs(d)
    ids = [0] * n
    checked = 0
    stack_i = [0] * n
    stack_d = [0] * n
    stack_f = [0] * n
    depth = 0
    cur_i = 0
    cur_d = 0
    cur_f = 0
    while True:
        if cur_i >= m:
            if depth == 0:
                return None, None, checked
            depth -= 1
            cur_i = stack_i[depth] + 1
            cur_d = stack_d[depth]
            cur_f = stack_f[depth]
            continue
        nd = cur_d + degrees[cur_i]
        rem = n - depth - 1
        if abs(nd) > maxdeg * rem:
            cur_i += 1
            continue
        nf = cur_f | families[cur_i]
        if rem == 0 and nf != 3:
            cur_i += 1
            continue
        ids[depth] = cur_i
        if rem == 0:
            checked += 1
            out = cumulant_of_tuple(
                tuple(ids), programs, monos, degrees, rsrcs, esrc, edst, paper, memo
            )
            if out:
                return tuple(ids), out, checked
            cur_i += 1
            continue
        stack_i[depth] = cur_i
        stack_d[depth] = cur_d
        stack_f[depth] = cur_f
        depth += 1
        cur_d = nd
        cur_f = nf
        cur_i = 0
