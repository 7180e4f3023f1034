# cython: language_level=3
# cython: boundscheck=False, wraparound=False, cdivision=True
"""Compiled kernel for the hot monomial loops.

Same contract as ``pathprob._kernel_py``; see that module for the encoding.
Monomial words, partition programs and the tuple sweep all run on flat C
integer arrays; the ``memo`` argument of the sweep entry points is accepted
for interface parity but unused (the walk folds are cheaper than hashing).
"""

import array as _array

from cpython cimport array

DEF MAXN = 32
DEF MAXBUF = 512
DEF MAXVERT = 256


def mono_mul(m1, m2, esrc, edst, paper):
    """Product of two encoded monomials; None is the zero operator."""
    return _mono_mul(m1, m2, 1 if paper else 0)


cdef object _mono_mul(object m1, object m2, bint paper):
    cdef tuple w1 = <tuple> m1[0]
    cdef tuple w2 = <tuple> m2[0]
    cdef int s1 = m1[1]
    cdef int d1 = m1[2]
    cdef int s2 = m2[1]
    cdef int d2 = m2[2]
    cdef Py_ssize_t i, j, n2
    cdef int a, b
    if d1 != s2:
        return None
    i = len(w1)
    j = 0
    n2 = len(w2)
    if paper:
        while i and j < n2:
            a = w1[i - 1]
            b = w2[j]
            if a != -b:
                break
            i -= 1
            j += 1
    else:
        while i and j < n2:
            a = w1[i - 1]
            b = w2[j]
            if a >= 0 or b <= 0:
                break
            if a != -b:
                return None
            i -= 1
            j += 1
    return (w1[:i] + w2[j:], s1, d2)


def expect_of_ids(ids, monos, esrc, edst, paper, memo):
    """Vertex index of E(product of monomials), or -1 when it vanishes."""
    cdef object state = None
    cdef Py_ssize_t k
    cdef Py_ssize_t idx
    cdef bint pap = 1 if paper else 0
    cdef tuple tids = tuple(ids)
    cdef list ml = list(monos)
    for k in range(len(tids)):
        idx = tids[k]
        if k == 0:
            state = ml[idx]
        else:
            state = _mono_mul(state, ml[idx], pap)
            if state is None:
                return -1
    if len(<tuple> state[0]):
        return -1
    return state[1]


cdef class _Programs:
    """Flattened partition programs: C arrays for the integer-only loops."""

    cdef array.array mu_a, nb_a, bofs_a, bdat_a, ng_a, gofs_a, gdat_a, no_a, oofs_a, odat_a
    cdef int[:] mu, nb, bofs, bdat, ng, gofs, gdat, no, oofs, odat
    cdef readonly int count

    def __init__(self, programs):
        mus = []
        nb = []
        bofs = []
        bdat = []
        ng = []
        gofs = []
        gdat = []
        no = []
        oofs = []
        odat = []
        for mu, blocks, gates, outer in programs:
            mus.append(mu)
            nb.append(len(blocks))
            bofs.append(len(bdat))
            for blk in blocks:
                bdat.append(len(blk))
                bdat.extend(blk)
            ng.append(len(gates))
            gofs.append(len(gdat))
            for anchor, child in gates:
                gdat.append(anchor)
                gdat.append(child)
            no.append(len(outer))
            oofs.append(len(odat))
            odat.extend(outer)
        self.count = len(mus)
        self.mu_a = _array.array("i", mus)
        self.nb_a = _array.array("i", nb)
        self.bofs_a = _array.array("i", bofs)
        self.bdat_a = _array.array("i", bdat or [0])
        self.ng_a = _array.array("i", ng)
        self.gofs_a = _array.array("i", gofs)
        self.gdat_a = _array.array("i", gdat or [0])
        self.no_a = _array.array("i", no)
        self.oofs_a = _array.array("i", oofs)
        self.odat_a = _array.array("i", odat or [0])
        self.mu = self.mu_a
        self.nb = self.nb_a
        self.bofs = self.bofs_a
        self.bdat = self.bdat_a
        self.ng = self.ng_a
        self.gofs = self.gofs_a
        self.gdat = self.gdat_a
        self.no = self.no_a
        self.oofs = self.oofs_a
        self.odat = self.odat_a


_program_views: dict = {}


cdef _Programs _get_programs(object programs):
    key = id(programs)
    view = _program_views.get(key)
    if view is None:
        view = _Programs(programs)
        # keep the source alive so id() stays unambiguous
        _program_views[key] = view
        _program_views[(key, "src")] = programs
    return <_Programs> view


cdef class _Table:
    """Flat integer view of a monomial table."""

    cdef array.array wdat_a, wofs_a, wlen_a, src_a, dst_a, deg_a, rsrc_a, fam_a
    cdef int[:] wdat, wofs, wlen, src, dst, deg, rsrc, fam
    cdef readonly int size
    cdef readonly int maxword
    cdef readonly int nvert

    def __init__(self, monos, degrees, rsrcs, families):
        wdat = []
        wofs = []
        wlen = []
        src = []
        dst = []
        nvert = 1
        maxword = 0
        for word, s, d in monos:
            wofs.append(len(wdat))
            wlen.append(len(word))
            wdat.extend(word)
            src.append(s)
            dst.append(d)
            if s + 1 > nvert:
                nvert = s + 1
            if d + 1 > nvert:
                nvert = d + 1
            if len(word) > maxword:
                maxword = len(word)
        self.size = len(wofs)
        self.maxword = maxword
        self.nvert = nvert
        self.wdat_a = _array.array("i", wdat or [0])
        self.wofs_a = _array.array("i", wofs or [0])
        self.wlen_a = _array.array("i", wlen or [0])
        self.src_a = _array.array("i", src or [0])
        self.dst_a = _array.array("i", dst or [0])
        self.deg_a = _array.array("i", list(degrees) or [0])
        self.rsrc_a = _array.array("i", list(rsrcs) or [0])
        self.fam_a = _array.array("i", list(families) or [0])
        self.wdat = self.wdat_a
        self.wofs = self.wofs_a
        self.wlen = self.wlen_a
        self.src = self.src_a
        self.dst = self.dst_a
        self.deg = self.deg_a
        self.rsrc = self.rsrc_a
        self.fam = self.fam_a


cdef int _fold_expect(_Table T, int* bids, int count, bint paper, int* buf) nogil:
    """E of the product of the monomials bids[0..count): vertex or -1."""
    cdef int sp = 0
    cdef int cur_dst, first, mid, o, L, j, a, b, t
    first = bids[0]
    cur_dst = T.dst[first]
    o = T.wofs[first]
    L = T.wlen[first]
    for t in range(L):
        buf[sp] = T.wdat[o + t]
        sp += 1
    for t in range(1, count):
        mid = bids[t]
        if cur_dst != T.src[mid]:
            return -1
        o = T.wofs[mid]
        L = T.wlen[mid]
        j = 0
        if paper:
            while sp and j < L:
                a = buf[sp - 1]
                b = T.wdat[o + j]
                if a != -b:
                    break
                sp -= 1
                j += 1
        else:
            while sp and j < L:
                a = buf[sp - 1]
                b = T.wdat[o + j]
                if a >= 0 or b <= 0:
                    break
                if a != -b:
                    return -1
                sp -= 1
                j += 1
        while j < L:
            buf[sp] = T.wdat[o + j]
            sp += 1
            j += 1
        cur_dst = T.dst[mid]
    if sp:
        return -1
    return T.src[first]


cdef bint _cumulant_core(
    _Programs P, _Table T, int* tids, int n, bint paper, long* counts
) nogil:
    cdef int tdeg[MAXN]
    cdef int vals[MAXN]
    cdef int bids[MAXN]
    cdef int buf[MAXBUF]
    cdef int p, k, b, bo, blen, s, v, v0, anchor, child, nblocks, ok, t
    cdef bint nonzero = 0
    for k in range(T.nvert):
        counts[k] = 0
    for k in range(n):
        tdeg[k] = T.deg[tids[k]]
    for p in range(P.count):
        nblocks = P.nb[p]
        bo = P.bofs[p]
        ok = 1
        for b in range(nblocks):
            blen = P.bdat[bo]
            bo += 1
            s = 0
            for k in range(blen):
                s += tdeg[P.bdat[bo + k]]
            bo += blen
            if s != 0:
                ok = 0
                break
        if not ok:
            continue
        bo = P.bofs[p]
        for b in range(nblocks):
            blen = P.bdat[bo]
            bo += 1
            for k in range(blen):
                bids[k] = tids[P.bdat[bo + k]]
            bo += blen
            v = _fold_expect(T, bids, blen, paper, buf)
            if v < 0:
                ok = 0
                break
            vals[b] = v
        if not ok:
            continue
        bo = P.gofs[p]
        for k in range(P.ng[p]):
            anchor = P.gdat[bo]
            child = P.gdat[bo + 1]
            bo += 2
            if vals[child] != T.rsrc[tids[anchor]]:
                ok = 0
                break
        if not ok:
            continue
        bo = P.oofs[p]
        v0 = vals[P.odat[bo]]
        for k in range(1, P.no[p]):
            if vals[P.odat[bo + k]] != v0:
                ok = 0
                break
        if not ok:
            continue
        counts[v0] += P.mu[p]
    for k in range(T.nvert):
        if counts[k]:
            nonzero = 1
            break
    return nonzero


def cumulant_of_tuple(ids, programs, monos, degrees, rsrcs, esrc, edst, paper, memo):
    """Moebius sum over all program partitions; returns {vertex: int} pruned."""
    cdef _Programs P = _get_programs(programs)
    cdef _Table T = _Table(monos, degrees, rsrcs, [0] * len(degrees))
    cdef int n = len(ids)
    cdef int tids[MAXN]
    cdef long counts[MAXVERT]
    cdef int k
    if n > MAXN or T.nvert > MAXVERT or n * T.maxword > MAXBUF:
        raise ValueError("tuple too large for the compiled kernel")
    for k in range(n):
        tids[k] = ids[k]
    _cumulant_core(P, T, tids, n, 1 if paper else 0, counts)
    out = {}
    for k in range(T.nvert):
        if counts[k]:
            out[k] = counts[k]
    return out


def sweep_mixed(n, programs, monos, degrees, rsrcs, families, esrc, edst, paper, memo):
    """First mixed tuple of length n with a nonzero cumulant, or None.

    Returns ``(witness_ids, {vertex: int}, checked)`` with ``checked`` the
    number of fully evaluated tuples.
    """
    cdef int N = n
    cdef int M = len(degrees)
    if M == 0:
        return None, None, 0
    cdef _Programs P = _get_programs(programs)
    cdef _Table T = _Table(monos, degrees, rsrcs, families)
    if N > MAXN or T.nvert > MAXVERT or N * T.maxword > MAXBUF:
        raise ValueError("sweep too large for the compiled kernel")
    cdef bint pap = 1 if paper else 0
    cdef int maxdeg = 0
    cdef int i
    for i in range(M):
        if T.deg[i] > maxdeg:
            maxdeg = T.deg[i]
        elif -T.deg[i] > maxdeg:
            maxdeg = -T.deg[i]
    cdef int ids_c[MAXN]
    cdef int stack_i[MAXN]
    cdef int stack_d[MAXN]
    cdef int stack_f[MAXN]
    cdef long counts[MAXVERT]
    cdef long checked = 0
    cdef int depth = 0
    cdef int cur_i = 0
    cdef int cur_d = 0
    cdef int cur_f = 0
    cdef int nd, nf, rem
    while True:
        if cur_i >= M:
            if depth == 0:
                return None, None, checked
            depth -= 1
            cur_i = stack_i[depth] + 1
            cur_d = stack_d[depth]
            cur_f = stack_f[depth]
            continue
        nd = cur_d + T.deg[cur_i]
        rem = N - depth - 1
        if nd > maxdeg * rem or -nd > maxdeg * rem:
            cur_i += 1
            continue
        nf = cur_f | T.fam[cur_i]
        if rem == 0 and nf != 3:
            cur_i += 1
            continue
        ids_c[depth] = cur_i
        if rem == 0:
            checked += 1
            if _cumulant_core(P, T, ids_c, N, pap, counts):
                out = {}
                for i in range(T.nvert):
                    if counts[i]:
                        out[i] = counts[i]
                return tuple([ids_c[i] for i in range(N)]), out, checked
            cur_i += 1
            continue
        stack_i[depth] = cur_i
        stack_d[depth] = cur_d
        stack_f[depth] = cur_f
        depth += 1
        cur_d = nd
        cur_f = nf
        cur_i = 0
