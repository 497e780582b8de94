# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled twins of the functions in ``_kernels_py``; same signatures and
results.  Coordinates must fit in int64."""

from libc.stdint cimport int64_t, uint64_t
from libc.stdlib cimport malloc, free, realloc
from libc.string cimport memset, memcpy


cdef object _to_int(uint64_t* m, int nw):
    cdef int w
    out = 0
    for w in range(nw - 1, -1, -1):
        out = (out << 64) | m[w]
    return out


cdef void _from_int(object value, uint64_t* m, int nw):
    cdef int w
    for w in range(nw):
        m[w] = <uint64_t>(value & 0xFFFFFFFFFFFFFFFF)
        value >>= 64


def slab_runs(bx, by, rx, ry):
    cdef int nb = len(bx), nr = len(rx)
    cdef int n = nb + nr
    cdef int nw = max(1, (nb + 63) // 64)
    if nb == 0:
        return []
    events = sorted(
        [(by[i], 0, bx[i], i) for i in range(nb)]
        + [(ry[i], 1, rx[i], -1) for i in range(nr)]
    )
    xs_list = sorted(set(bx))
    cdef int nx = len(xs_list)
    cdef int64_t* ey = <int64_t*>malloc(n * sizeof(int64_t))
    cdef int64_t* ex = <int64_t*>malloc(n * sizeof(int64_t))
    cdef int* ered = <int*>malloc(n * sizeof(int))
    cdef int* eidx = <int*>malloc(n * sizeof(int))
    cdef int64_t* xs = <int64_t*>malloc(nx * sizeof(int64_t))
    cdef uint64_t* run = <uint64_t*>malloc(nw * sizeof(uint64_t))
    cdef uint64_t* level = <uint64_t*>malloc(nw * sizeof(uint64_t))
    cdef int cap = 256, count = 0
    cdef uint64_t* store = <uint64_t*>malloc(cap * nw * sizeof(uint64_t))
    cdef int k, a, b, w, i, red, nonempty
    cdef int64_t y, xlo, xhi
    try:
        for k in range(n):
            ey[k] = events[k][0]
            ered[k] = events[k][1]
            ex[k] = events[k][2]
            eidx[k] = events[k][3]
        for k in range(nx):
            xs[k] = xs_list[k]
        for a in range(nx):
            xlo = xs[a]
            for b in range(a, nx):
                xhi = xs[b]
                memset(run, 0, nw * sizeof(uint64_t))
                k = 0
                while k <= n:
                    if k == n:
                        red = 1
                    else:
                        y = ey[k]
                        red = 0
                        memset(level, 0, nw * sizeof(uint64_t))
                        while k < n and ey[k] == y:
                            if xlo <= ex[k] <= xhi:
                                if ered[k]:
                                    red = 1
                                else:
                                    i = eidx[k]
                                    level[i >> 6] |= (<uint64_t>1) << (i & 63)
                            k += 1
                    if red:
                        nonempty = 0
                        for w in range(nw):
                            if run[w]:
                                nonempty = 1
                        if nonempty:
                            if count == cap:
                                cap *= 2
                                store = <uint64_t*>realloc(store, cap * nw * sizeof(uint64_t))
                            memcpy(store + count * nw, run, nw * sizeof(uint64_t))
                            count += 1
                        memset(run, 0, nw * sizeof(uint64_t))
                        if k == n:
                            break
                    else:
                        for w in range(nw):
                            run[w] |= level[w]
        found = set()
        for k in range(count):
            found.add(_to_int(store + k * nw, nw))
        return list(found)
    finally:
        free(ey); free(ex); free(ered); free(eidx); free(xs)
        free(run); free(level); free(store)


def maximal_masks(masks):
    uniq = list(set(masks))
    if not uniq:
        return []
    cdef int n = len(uniq)
    top = max(uniq)
    cdef int nw = max(1, (top.bit_length() + 63) // 64)
    cdef uint64_t* m = <uint64_t*>malloc(n * nw * sizeof(uint64_t))
    cdef char* keep = <char*>malloc(n)
    cdef int i, j, w, sub
    try:
        uniq.sort(key=lambda v: (-bin(v).count("1"), _members(v)))
        for i in range(n):
            _from_int(uniq[i], m + i * nw, nw)
            keep[i] = 1
        for i in range(n):
            for j in range(i):
                if not keep[j]:
                    continue
                sub = 1
                for w in range(nw):
                    if m[i * nw + w] & ~m[j * nw + w]:
                        sub = 0
                        break
                if sub:
                    keep[i] = 0
                    break
        return [uniq[i] for i in range(n) if keep[i]]
    finally:
        free(m)
        free(keep)


def _members(v):
    out = []
    i = 0
    while v:
        if v & 1:
            out.append(i)
        v >>= 1
        i += 1
    return out
