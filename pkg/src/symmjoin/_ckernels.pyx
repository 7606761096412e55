# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled versions of the hot loops; same contracts as ``_pykernels``."""

import numpy as np
cimport numpy as cnp

cnp.import_array()

ctypedef cnp.int64_t i64

cdef enum:
    MAXM = 62
cdef i64 INF = 1 << 30


cdef inline Py_ssize_t _bsearch(const i64[:] codes, i64 key) noexcept nogil:
    cdef Py_ssize_t lo = 0, hi = codes.shape[0] - 1, mid
    while lo <= hi:
        mid = (lo + hi) >> 1
        if codes[mid] < key:
            lo = mid + 1
        elif codes[mid] > key:
            hi = mid - 1
        else:
            return mid
    return -1


cdef inline void _decode(i64 code, int m, int base, int* lab) noexcept nogil:
    cdef int v
    for v in range(m):
        lab[v] = <int>(code % base)
        code //= base


cdef inline i64 _prefix_pivot(int* lab, int m, int k) noexcept nogil:
    cdef int a = 0, i, v
    cdef i64 nxt
    for i in range(1, k + 1):
        nxt = INF
        for v in range(a, m):
            if lab[v] == 0 or lab[v] == i:
                nxt = v + 1
                break
        if nxt == INF:
            return INF
        a = <int>nxt
    return a


cdef struct EnumState:
    int m
    int r
    int nperm
    int symmetric
    const unsigned char* tab        # r rows of 2**m
    const unsigned char* prune      # r rows of 2**m
    const i64* perms          # nperm rows of r
    i64* pw
    i64* blocks
    i64 size                  # 2**m


cdef int _admitted(EnumState* st) noexcept nogil:
    cdef int p, i, ok
    if not st.symmetric:
        return 1
    for p in range(st.nperm):
        ok = 1
        for i in range(st.r):
            if not st.tab[st.perms[p * st.r + i] * st.size + st.blocks[i]]:
                ok = 0
                break
        if ok:
            return 1
    return 0


cdef void _enum(EnumState* st, int v, i64 code, int nonempty, list out):
    cdef int i
    cdef i64 bit, grown
    if v == st.m:
        if nonempty and _admitted(st):
            out.append(code)
        return
    _enum(st, v + 1, code, nonempty, out)
    bit = (<i64>1) << v
    for i in range(st.r):
        grown = st.blocks[i] | bit
        if st.prune[i * st.size + grown]:
            st.blocks[i] = grown
            _enum(st, v + 1, code + (i + 1) * st.pw[v], 1, out)
            st.blocks[i] = grown ^ bit


def enumerate_cells(int m, int r, table, bint symmetric, perms):
    cdef cnp.ndarray[cnp.uint8_t, ndim=2] tab = np.ascontiguousarray(table, dtype=np.uint8)
    cdef cnp.ndarray[cnp.uint8_t, ndim=2] prune
    if symmetric:
        prune = np.ascontiguousarray(np.repeat(tab.max(axis=0, keepdims=True), r, axis=0))
    else:
        prune = tab
    cdef cnp.ndarray[cnp.int64_t, ndim=2] prm = np.ascontiguousarray(perms, dtype=np.int64)
    cdef cnp.ndarray[cnp.int64_t, ndim=1] pw = np.array([(r + 1) ** v for v in range(m)], dtype=np.int64)
    cdef cnp.ndarray[cnp.int64_t, ndim=1] blocks = np.zeros(r, dtype=np.int64)
    cdef EnumState st
    st.m = m
    st.r = r
    st.nperm = prm.shape[0]
    st.symmetric = symmetric
    st.tab = &tab[0, 0]
    st.prune = &prune[0, 0]
    st.perms = &prm[0, 0]
    st.pw = &pw[0] if m > 0 else NULL
    st.blocks = &blocks[0]
    st.size = (<i64>1) << m
    out = []
    _enum(&st, 0, 0, 0, out)
    res = np.array(out, dtype=np.int64)
    res.sort()
    return res


def build_matching(codes_in, int m, int r):
    cdef const i64[:] codes = np.ascontiguousarray(codes_in, dtype=np.int64)
    cdef Py_ssize_t n = codes.shape[0], idx, j
    cdef cnp.ndarray[cnp.int64_t, ndim=1] partner_a = np.full(n, -1, dtype=np.int64)
    cdef cnp.ndarray[cnp.int8_t, ndim=1] step_a = np.zeros(n, dtype=np.int8)
    cdef cnp.ndarray[cnp.int8_t, ndim=1] pivot_a = np.zeros(n, dtype=np.int8)
    cdef cnp.ndarray[cnp.uint8_t, ndim=1] lower_a = np.zeros(n, dtype=np.uint8)
    cdef i64[:] partner = partner_a
    cdef signed char[:] step = step_a
    cdef signed char[:] pivot = pivot_a
    cdef unsigned char[:] is_lower = lower_a
    cdef int base = r + 1, k, v
    cdef i64 a, up, bad_lo = -1, bad_up = -1
    cdef int bad_k = 0
    cdef i64 pw[MAXM]
    cdef int lab[MAXM]
    if m > MAXM:
        raise ValueError("ground set too large for the compiled kernel")
    pw[0] = 1
    for v in range(1, m):
        pw[v] = pw[v - 1] * base
    with nogil:
        for k in range(1, r + 1):
            for idx in range(n):
                if partner[idx] != -1:
                    continue
                _decode(codes[idx], m, base, lab)
                a = _prefix_pivot(lab, m, k)
                if a == INF or lab[a - 1] != 0:
                    continue
                up = codes[idx] + k * pw[a - 1]
                j = _bsearch(codes, up)
                if j < 0 or partner[j] != -1:
                    continue
                _decode(up, m, base, lab)
                if _prefix_pivot(lab, m, k) != a:
                    bad_lo = codes[idx]
                    bad_up = up
                    bad_k = k
                    break
                partner[idx] = j
                partner[j] = idx
                step[idx] = k
                step[j] = k
                pivot[idx] = <signed char>a
                pivot[j] = <signed char>a
                is_lower[idx] = 1
            if bad_k:
                break
    if bad_k:
        raise RuntimeError(f"step-{bad_k} pivot mismatch between cells {bad_lo} and {bad_up}")
    return partner_a, step_a, pivot_a, lower_a


def find_cycle(codes_in, partner_in, lower_in, int m, int r):
    cdef const i64[:] codes = np.ascontiguousarray(codes_in, dtype=np.int64)
    cdef const i64[:] partner = np.ascontiguousarray(partner_in, dtype=np.int64)
    cdef const unsigned char[:] is_lower = np.ascontiguousarray(lower_in, dtype=np.uint8)
    cdef Py_ssize_t n = codes.shape[0], root, node, j, depth, hit = -1, i
    cdef cnp.ndarray[cnp.uint8_t, ndim=1] color_a = np.zeros(n, dtype=np.uint8)
    cdef unsigned char[:] color = color_a
    cdef cnp.ndarray[cnp.int64_t, ndim=1] st_node_a = np.zeros(n + 1, dtype=np.int64)
    cdef cnp.ndarray[cnp.int64_t, ndim=1] st_pos_a = np.zeros(n + 1, dtype=np.int64)
    cdef i64[:] st_node = st_node_a
    cdef i64[:] st_pos = st_pos_a
    cdef int base = r + 1, v
    cdef i64 beta
    cdef i64 pw[MAXM]
    cdef int lab[MAXM]
    if m > MAXM:
        raise ValueError("ground set too large for the compiled kernel")
    pw[0] = 1
    for v in range(1, m):
        pw[v] = pw[v - 1] * base
    with nogil:
        for root in range(n):
            if not is_lower[root] or color[root]:
                continue
            color[root] = 1
            depth = 0
            st_node[0] = root
            st_pos[0] = 0
            while depth >= 0:
                node = st_node[depth]
                beta = codes[partner[node]]
                _decode(beta, m, base, lab)
                j = -1
                v = <int>st_pos[depth]
                while v < m:
                    if lab[v]:
                        j = _bsearch(codes, beta - lab[v] * pw[v])
                        if j >= 0 and j != node and is_lower[j] and color[j] != 2:
                            v += 1
                            break
                    j = -1
                    v += 1
                st_pos[depth] = v
                if j < 0:
                    color[node] = 2
                    depth -= 1
                elif color[j] == 1:
                    hit = j
                    break
                else:
                    color[j] = 1
                    depth += 1
                    st_node[depth] = j
                    st_pos[depth] = 0
            if hit >= 0:
                break
    if hit < 0:
        return []
    path = [int(st_node_a[i]) for i in range(depth + 1)]
    return path[path.index(hit):]


cdef int _bf(const unsigned char* t, i64 size, int m, int r, int v,
             i64* blocks, i64* labels) noexcept nogil:
    cdef int i, inside = 0
    cdef i64 bit
    for i in range(r):
        if t[i * size + blocks[i]]:
            inside += 1
    if inside > m - v:
        return 0
    if v == m:
        return inside == 0
    bit = (<i64>1) << v
    for i in range(r):
        blocks[i] |= bit
        labels[v] = i
        if _bf(t, size, m, r, v + 1, blocks, labels):
            return 1
        blocks[i] ^= bit
    return 0


def bruteforce_witness(int m, int r, table):
    cdef cnp.ndarray[cnp.uint8_t, ndim=2] tab = np.ascontiguousarray(table, dtype=np.uint8)
    cdef i64 size = (<i64>1) << m
    cdef cnp.ndarray[cnp.int64_t, ndim=1] labels_a = np.zeros(max(m, 1), dtype=np.int64)
    cdef i64 blocks[MAXM]
    cdef int i, found
    if m > MAXM or r > MAXM:
        raise ValueError("instance too large for the compiled kernel")
    for i in range(r):
        blocks[i] = 0
    with nogil:
        found = _bf(&tab[0, 0], size, m, r, 0, blocks, &labels_a[0])
    return labels_a[:m] if found else None
