# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled versions of the hot loops; see ``_pykernels`` for the reference twins."""

import numpy as np
cimport numpy as cnp

cnp.import_array()

ctypedef cnp.int32_t i32
ctypedef cnp.int64_t i64


cdef inline cnp.ndarray _arr(obj):
    return np.ascontiguousarray(np.asarray(obj, dtype=np.int32))


def first_assoc_violation(op):
    cdef i32[:, ::1] t = _arr(op)
    cdef Py_ssize_t n = t.shape[0], x, y, z
    for x in range(n):
        for y in range(n):
            for z in range(n):
                if t[t[x, y], z] != t[x, t[y, z]]:
                    return (int(x), int(y), int(z))
    return None


def first_adjunction_violation(tensor, residuum, le):
    cdef i32[:, ::1] t = _arr(tensor)
    cdef i32[:, ::1] r = _arr(residuum)
    cdef i32[:, ::1] o = _arr(le)
    cdef Py_ssize_t n = t.shape[0], x, y, z
    for x in range(n):
        for y in range(n):
            for z in range(n):
                if o[t[x, y], z] != o[x, r[y, z]]:
                    return (int(x), int(y), int(z))
    return None


def derive_residuum(tensor, join, le, int bottom):
    cdef i32[:, ::1] t = _arr(tensor)
    cdef i32[:, ::1] j = _arr(join)
    cdef i32[:, ::1] o = _arr(le)
    cdef Py_ssize_t n = t.shape[0], y, z, w
    out = np.full((n, n), bottom, dtype=np.int32)
    cdef i32[:, ::1] res = out
    cdef int acc
    for y in range(n):
        for z in range(n):
            acc = bottom
            for w in range(n):
                if o[t[w, y], z]:
                    acc = j[acc, w]
            res[y, z] = acc
    return out.tolist()


cdef bint _consistent(i32[:, ::1] T, i32[:, ::1] o, i32[:, ::1] j, Py_ssize_t n) noexcept:
    cdef Py_ssize_t x, y, y2, z
    cdef int a, b, c, left, yz, right
    for x in range(n):
        for y in range(n):
            a = T[x, y]
            if a < 0:
                continue
            for y2 in range(n):
                b = T[x, y2]
                if b >= 0 and o[y, y2] and not o[a, b]:
                    return False
            for z in range(n):
                b = T[x, z]
                c = T[x, j[y, z]]
                if b >= 0 and c >= 0 and c != j[a, b]:
                    return False
            for z in range(n):
                left = T[a, z]
                yz = T[y, z]
                if left >= 0 and yz >= 0:
                    right = T[x, yz]
                    if right >= 0 and right != left:
                        return False
    return True


def search_tensors(le, meet, join, int bottom, int top):
    cdef i32[:, ::1] o = _arr(le)
    cdef i32[:, ::1] m = _arr(meet)
    cdef i32[:, ::1] jn = _arr(join)
    cdef Py_ssize_t n = o.shape[0], x, i, j, v
    table = np.full((n, n), -1, dtype=np.int32)
    cdef i32[:, ::1] T = table
    for x in range(n):
        T[bottom, x] = bottom
        T[x, bottom] = bottom
    for x in range(n):
        if x != bottom:
            T[top, x] = x
            T[x, top] = x
    T[top, bottom] = bottom
    T[bottom, top] = bottom

    free_list = [(i, j) for i in range(n) for j in range(i, n)
                 if i != bottom and i != top and j != bottom and j != top]
    cdef Py_ssize_t nf = len(free_list)
    fi_arr = np.array([p[0] for p in free_list] or [0], dtype=np.int32)
    fj_arr = np.array([p[1] for p in free_list] or [0], dtype=np.int32)
    cdef i32[::1] fi = fi_arr
    cdef i32[::1] fj = fj_arr
    # next candidate value per depth; -1 means the cell is not yet tried
    nxt_arr = np.zeros(nf + 1, dtype=np.int32)
    cdef i32[::1] nxt = nxt_arr

    results = []
    if not _consistent(T, o, jn, n):
        return results
    if nf == 0:
        results.append(table.tolist())
        return results

    cdef Py_ssize_t k = 0
    cdef int cand
    nxt[0] = 0
    while k >= 0:
        i = fi[k]
        j = fj[k]
        cand = nxt[k]
        while cand < n:
            if o[cand, m[i, j]]:
                T[i, j] = cand
                T[j, i] = cand
                if _consistent(T, o, jn, n):
                    break
            cand += 1
        if cand >= n:
            T[i, j] = -1
            T[j, i] = -1
            k -= 1
            continue
        nxt[k] = cand + 1
        if k + 1 == nf:
            results.append(table.tolist())
            # stay at this depth and try the next value
            continue
        k += 1
        nxt[k] = 0
    return results


def enumerate_sections(sizes, allow):
    cdef Py_ssize_t k = len(sizes), p, q, d, c
    if k == 0:
        return [()]
    cdef Py_ssize_t width = max(sizes)
    sz_arr = np.asarray(sizes, dtype=np.int64)
    al_arr = np.zeros((k, width, k), dtype=np.int64)
    for p in range(k):
        for c in range(sizes[p]):
            for q in range(k):
                al_arr[p, c, q] = allow[p][c][q]
    cdef i64[::1] sz = sz_arr
    cdef i64[:, :, ::1] al = al_arr
    cur_arr = np.zeros(k, dtype=np.int64)
    cdef i64[::1] cur = cur_arr
    # cur[q] holds the next class to try at depth q
    out = []
    q = 0
    cur[0] = 0
    cdef bint good
    while q >= 0:
        d = cur[q]
        while d < sz[q]:
            good = True
            for p in range(q):
                c = cur[p] - 1
                if not ((al[p, c, q] >> d) & 1) or not ((al[q, d, p] >> c) & 1):
                    good = False
                    break
            if good:
                break
            d += 1
        if d >= sz[q]:
            q -= 1
            continue
        cur[q] = d + 1
        if q + 1 == k:
            out.append(tuple([int(cur[p] - 1) for p in range(k)]))
            continue
        q += 1
        cur[q] = 0
    return out
