# cython: boundscheck=False, wraparound=False, initializedcheck=False, cdivision=True
"""Compiled counting kernel; mirrors _kernel_py.count_profile exactly."""

from itertools import combinations

from libc.stdlib cimport free, malloc

KERNEL_NAME = "cython"


def count_profile(n, sizes):
    """Return (total, connected, hypertree) counts over all assignments."""
    cdef int cn = n
    if cn < 1:
        raise ValueError("need n >= 1")
    if cn > 32:
        raise ValueError("compiled kernel supports n <= 32")
    py_sizes = tuple(int(s) for s in sizes)
    if any(s < 2 for s in py_sizes):
        raise ValueError("edges need at least 2 vertices")
    cdef int L = len(py_sizes)
    subsets = {s: tuple(combinations(range(cn), s)) for s in set(py_sizes)}

    cdef long long total = 1
    for s in py_sizes:
        total *= len(subsets[s])
    if total == 0:
        return (0, 0, 0)
    if L == 0:
        flag = 1 if cn == 1 else 0
        return (1, flag, flag)

    # Flatten candidate subsets: position p choice c occupies
    # verts[base[p] + c * size[p] : ... + size[p]].
    cdef int total_ints = 0
    for s in py_sizes:
        total_ints += len(subsets[s]) * s
    cdef int *verts = <int *> malloc(total_ints * sizeof(int))
    cdef int *pos_size = <int *> malloc(L * sizeof(int))
    cdef long long *pos_count = <long long *> malloc(L * sizeof(long long))
    cdef long long *pos_base = <long long *> malloc(L * sizeof(long long))
    cdef long long *idx = <long long *> malloc(L * sizeof(long long))
    cdef int *parent = <int *> malloc(cn * sizeof(int))
    if (verts == NULL or pos_size == NULL or pos_count == NULL
            or pos_base == NULL or idx == NULL or parent == NULL):
        free(<void *> verts)
        free(<void *> pos_size)
        free(<void *> pos_count)
        free(<void *> pos_base)
        free(<void *> idx)
        free(<void *> parent)
        raise MemoryError()

    cdef long long offset = 0
    cdef int p, j, v
    for p in range(L):
        s = py_sizes[p]
        pos_size[p] = s
        pos_count[p] = len(subsets[s])
        pos_base[p] = offset
        for subset in subsets[s]:
            for v in subset:
                verts[offset] = v
                offset += 1
        idx[p] = 0

    cdef long long connected = 0
    cdef long long hypertree = 0
    cdef int target = cn - 1
    cdef int merges, r, r0, size
    cdef long long base
    cdef bint cycle
    try:
        while True:
            for v in range(cn):
                parent[v] = v
            cycle = False
            merges = 0
            for p in range(L):
                size = pos_size[p]
                base = pos_base[p] + idx[p] * size
                r0 = verts[base]
                while parent[r0] != r0:
                    parent[r0] = parent[parent[r0]]
                    r0 = parent[r0]
                for j in range(1, size):
                    r = verts[base + j]
                    while parent[r] != r:
                        parent[r] = parent[parent[r]]
                        r = parent[r]
                    if r == r0:
                        cycle = True
                    else:
                        parent[r] = r0
                        merges += 1
            if merges == target:
                connected += 1
                if not cycle:
                    hypertree += 1
            p = L - 1
            while p >= 0:
                idx[p] += 1
                if idx[p] < pos_count[p]:
                    break
                idx[p] = 0
                p -= 1
            if p < 0:
                break
    finally:
        free(<void *> verts)
        free(<void *> pos_size)
        free(<void *> pos_count)
        free(<void *> pos_base)
        free(<void *> idx)
        free(<void *> parent)
    return (total, connected, hypertree)
