# cython: language_level=3, boundscheck=False, wraparound=False
"""Compiled versions of the kernels in ``_purekernels``; same signatures and results."""

from cpython.mem cimport PyMem_Malloc, PyMem_Free


cdef long *_as_array(seq, Py_ssize_t n) except NULL:
    cdef long *buf = <long *>PyMem_Malloc((n if n > 0 else 1) * sizeof(long))
    if buf == NULL:
        raise MemoryError()
    cdef Py_ssize_t i
    for i in range(n):
        buf[i] = seq[i]
    return buf


def classify(succ):
    """Depth per state, component index per state, and each cycle in arrow order."""
    cdef Py_ssize_t n = len(succ)
    cdef long *nxt = _as_array(succ, n)
    cdef long *depth = <long *>PyMem_Malloc((n + 1) * sizeof(long))
    cdef long *comp = <long *>PyMem_Malloc((n + 1) * sizeof(long))
    cdef long *pos = <long *>PyMem_Malloc((n + 1) * sizeof(long))
    cdef long *path = <long *>PyMem_Malloc((n + 1) * sizeof(long))
    cdef Py_ssize_t s, i, plen, start
    cdef long x, d, c, cid
    cycles = []
    try:
        if depth == NULL or comp == NULL or pos == NULL or path == NULL:
            raise MemoryError()
        for i in range(n):
            depth[i] = -1
            comp[i] = -1
            pos[i] = -1
        for s in range(n):
            if depth[s] >= 0:
                continue
            plen = 0
            x = s
            while depth[x] < 0 and pos[x] < 0:
                pos[x] = plen
                path[plen] = x
                plen += 1
                x = nxt[x]
            start = pos[x] if depth[x] < 0 else plen
            for i in range(plen):
                pos[path[i]] = -1
            if start < plen:
                cid = len(cycles)
                cyc = [path[i] for i in range(start, plen)]
                cycles.append(cyc)
                for i in range(start, plen):
                    depth[path[i]] = 0
                    comp[path[i]] = cid
                plen = start
            d = depth[x]
            c = comp[x]
            for i in range(plen - 1, -1, -1):
                d += 1
                depth[path[i]] = d
                comp[path[i]] = c
        return [depth[i] for i in range(n)], [comp[i] for i in range(n)], cycles
    finally:
        PyMem_Free(nxt)
        PyMem_Free(depth)
        PyMem_Free(comp)
        PyMem_Free(pos)
        PyMem_Free(path)


def product_succ(a, b):
    """Successor table of the pair map, state (x, y) at index x * len(b) + y."""
    cdef Py_ssize_t na = len(a), m = len(b), x, y
    cdef long *bb = _as_array(b, m)
    cdef long base
    out = [0] * (na * m)
    try:
        for x in range(na):
            base = a[x] * m
            for y in range(m):
                out[x * m + y] = base + bb[y]
        return out
    finally:
        PyMem_Free(bb)


def height_and_preds(succ, depth):
    """Height of the tree-state in-tree above every state, and tree predecessors."""
    cdef Py_ssize_t n = len(succ), s, i
    cdef long *nxt = _as_array(succ, n)
    cdef long *dep = _as_array(depth, n)
    cdef long *hgt = <long *>PyMem_Malloc((n + 1) * sizeof(long))
    cdef long *cnt
    cdef long *order = <long *>PyMem_Malloc((n + 1) * sizeof(long))
    cdef long maxd = 0, h, t
    preds = [[] for _ in range(n)]
    try:
        if hgt == NULL or order == NULL:
            raise MemoryError()
        for s in range(n):
            hgt[s] = 0
            if dep[s] > maxd:
                maxd = dep[s]
            if dep[s] > 0:
                preds[nxt[s]].append(s)
        # counting sort by decreasing depth
        cnt = <long *>PyMem_Malloc((maxd + 2) * sizeof(long))
        if cnt == NULL:
            raise MemoryError()
        try:
            for i in range(maxd + 2):
                cnt[i] = 0
            for s in range(n):
                cnt[maxd - dep[s] + 1] += 1
            for i in range(1, maxd + 2):
                cnt[i] += cnt[i - 1]
            for s in range(n):
                order[cnt[maxd - dep[s]]] = s
                cnt[maxd - dep[s]] += 1
        finally:
            PyMem_Free(cnt)
        for i in range(n):
            s = order[i]
            if dep[s] > 0:
                h = hgt[s] + 1
                t = nxt[s]
                if h > hgt[t]:
                    hgt[t] = h
        return [hgt[i] for i in range(n)], preds
    finally:
        PyMem_Free(nxt)
        PyMem_Free(dep)
        PyMem_Free(hgt)
        PyMem_Free(order)
