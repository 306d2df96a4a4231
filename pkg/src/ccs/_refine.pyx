# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled coarsest stable partition; same algorithm as ``_refine_py``."""

from cpython.array cimport array, clone

cdef array _INT = array("i")


cdef array _zeros(Py_ssize_t n):
    cdef array a = clone(_INT, n, True)
    return a


def refine(num_states, edges, initial=None):
    cdef Py_ssize_t n = num_states
    if n == 0:
        return []
    cdef Py_ssize_t m = len(edges)
    cdef Py_ssize_t i, j, e, k

    # sort edges by action, keep (src, dst) columns
    ordered = sorted(edges, key=lambda x: x[1])
    cdef array src_a = _zeros(m)
    cdef array dst_a = _zeros(m)
    cdef int[:] src = src_a
    cdef int[:] dst = dst_a
    starts = [0]
    last = None
    for e in range(m):
        s_, a_, t_ = ordered[e]
        if last is not None and a_ != last:
            starts.append(e)
        last = a_
        src[e] = s_
        dst[e] = t_
    starts.append(m)
    cdef Py_ssize_t nact = len(starts) - 1 if m > 0 else 0
    cdef array starts_a = array("i", starts)
    cdef int[:] st = starts_a

    cdef array block_a = _zeros(n)
    cdef int[:] block = block_a
    if initial is not None:
        remap = {}
        for i in range(n):
            b = initial[i]
            if b not in remap:
                remap[b] = len(remap)
            block[i] = remap[b]
    cdef int nblocks = 0
    for i in range(n):
        if block[i] + 1 > nblocks:
            nblocks = block[i] + 1

    cdef array size_a = _zeros(n + 1)
    cdef array cnt_a = _zeros(n + 1)
    cdef array newid_a = _zeros(n + 1)
    cdef array mark_a = _zeros(n)
    cdef array marked_a = _zeros(n)
    cdef array touched_a = _zeros(n + 1)
    cdef int[:] size = size_a
    cdef int[:] cnt = cnt_a
    cdef int[:] newid = newid_a
    cdef int[:] mark = mark_a
    cdef int[:] marked = marked_a
    cdef int[:] touched = touched_a
    for i in range(n + 1):
        newid[i] = -1
    for i in range(n):
        size[block[i]] += 1

    cdef int stamp = 0
    cdef int splitter, s, c, nmarked, ntouched
    cdef bint changed = True, split
    with nogil:
        while changed:
            changed = False
            for k in range(nact):
                splitter = 0
                while splitter < nblocks:
                    stamp += 1
                    nmarked = 0
                    for e in range(st[k], st[k + 1]):
                        s = src[e]
                        if block[dst[e]] == splitter and mark[s] != stamp:
                            mark[s] = stamp
                            marked[nmarked] = s
                            nmarked += 1
                    if nmarked > 0:
                        ntouched = 0
                        for j in range(nmarked):
                            c = block[marked[j]]
                            if cnt[c] == 0:
                                touched[ntouched] = c
                                ntouched += 1
                            cnt[c] += 1
                        split = False
                        for j in range(ntouched):
                            c = touched[j]
                            if cnt[c] < size[c]:
                                newid[c] = nblocks
                                size[nblocks] = cnt[c]
                                size[c] -= cnt[c]
                                nblocks += 1
                                split = True
                        if split:
                            changed = True
                            for j in range(nmarked):
                                s = marked[j]
                                c = block[s]
                                if newid[c] >= 0:
                                    block[s] = newid[c]
                        for j in range(ntouched):
                            c = touched[j]
                            cnt[c] = 0
                            newid[c] = -1
                    splitter += 1

    out = []
    remap = {}
    for i in range(n):
        b = block[i]
        if b not in remap:
            remap[b] = len(remap)
        out.append(remap[b])
    return out
