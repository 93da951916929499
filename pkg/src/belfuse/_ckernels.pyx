# cython: boundscheck=False, wraparound=False, cdivision=True
"""Compiled kernels. Same signatures and semantics as ``_pykernels``."""

from libc.stdlib cimport malloc, free
from libcpp.unordered_map cimport unordered_map
from cython.operator cimport dereference as deref, preincrement as inc

import numpy as np
cimport numpy as cnp

cnp.import_array()

cdef enum:
    CONJ = 0
    DISJ = 1
    DUBOIS_PRADE = 2
    PCR6 = 3
    DELTA_CONST = 0
    DELTA_MINCARD = 1
    DELTA_JACCARD = 2

ctypedef unordered_map[long long, double] accmap


cdef extern from *:
    int __builtin_popcountll(unsigned long long) nogil


cdef inline int _pc(long long x) noexcept nogil:
    return __builtin_popcountll(<unsigned long long> x)


cdef int _load(dict m, long long** masks, double** vals) except -1:
    cdef Py_ssize_t k = len(m), i = 0
    masks[0] = <long long*> malloc(max(k, 1) * sizeof(long long))
    vals[0] = <double*> malloc(max(k, 1) * sizeof(double))
    if masks[0] == NULL or vals[0] == NULL:
        free(masks[0])
        free(vals[0])
        raise MemoryError()
    for key, v in m.items():
        masks[0][i] = key
        vals[0][i] = v
        i += 1
    return k


cdef dict _dump(accmap& acc):
    cdef dict out = {}
    cdef accmap.iterator it = acc.begin()
    while it != acc.end():
        out[deref(it).first] = deref(it).second
        inc(it)
    return out


def combine_pair(dict m1, dict m2, int op):
    cdef long long *a = NULL
    cdef long long *b = NULL
    cdef double *va = NULL
    cdef double *vb = NULL
    cdef int na = _load(m1, &a, &va)
    cdef int nb
    try:
        nb = _load(m2, &b, &vb)
    except MemoryError:
        free(a)
        free(va)
        raise
    cdef accmap acc
    cdef int i, j
    cdef long long x
    with nogil:
        for i in range(na):
            for j in range(nb):
                x = (a[i] & b[j]) if op == CONJ else (a[i] | b[j])
                acc[x] += va[i] * vb[j]
    free(a); free(b); free(va); free(vb)
    return _dump(acc)


def combine_tuples(list ms, int mode):
    cdef int S = len(ms)
    cdef long long **masks = <long long**> malloc(S * sizeof(long long*))
    cdef double **vals = <double**> malloc(S * sizeof(double*))
    cdef int *sizes = <int*> malloc(S * sizeof(int))
    cdef int *idx = <int*> malloc(S * sizeof(int))
    cdef int j, loaded = 0
    cdef accmap acc
    cdef long long inter, union_, mk
    cdef double p, s, v
    cdef bint done
    if masks == NULL or vals == NULL or sizes == NULL or idx == NULL:
        free(masks); free(vals); free(sizes); free(idx)
        raise MemoryError()
    try:
        for j in range(S):
            sizes[j] = _load(ms[j], &masks[j], &vals[j])
            loaded += 1
            idx[j] = 0
        done = False
        for j in range(S):
            if sizes[j] == 0:
                done = True
        with nogil:
            while not done:
                inter = -1
                union_ = 0
                p = 1.0
                s = 0.0
                for j in range(S):
                    mk = masks[j][idx[j]]
                    v = vals[j][idx[j]]
                    inter &= mk
                    union_ |= mk
                    p *= v
                    s += v
                if mode == DISJ:
                    acc[union_] += p
                elif inter != 0 or mode == CONJ:
                    acc[inter] += p
                elif mode == DUBOIS_PRADE:
                    acc[union_] += p
                elif s > 0.0:
                    for j in range(S):
                        acc[masks[j][idx[j]]] += vals[j][idx[j]] * p / s
                # odometer step
                j = S - 1
                while j >= 0:
                    idx[j] += 1
                    if idx[j] < sizes[j]:
                        break
                    idx[j] = 0
                    j -= 1
                if j < 0:
                    done = True
    finally:
        for j in range(loaded):
            free(masks[j])
            free(vals[j])
        free(masks); free(vals); free(sizes); free(idx)
    return _dump(acc)


def mixed_pair(dict m1, dict m2, int policy, double delta2):
    cdef long long *a = NULL
    cdef long long *b = NULL
    cdef double *va = NULL
    cdef double *vb = NULL
    cdef int na = _load(m1, &a, &va)
    cdef int nb
    try:
        nb = _load(m2, &b, &vb)
    except MemoryError:
        free(a)
        free(va)
        raise
    cdef accmap acc
    cdef int i, j, ca, cb
    cdef long long inter, union_
    cdef double d2, p
    with nogil:
        for i in range(na):
            ca = _pc(a[i])
            for j in range(nb):
                inter = a[i] & b[j]
                union_ = a[i] | b[j]
                if policy == DELTA_CONST:
                    d2 = delta2
                elif a[i] == 0 or b[j] == 0:
                    d2 = 0.0
                elif policy == DELTA_MINCARD:
                    cb = _pc(b[j])
                    d2 = (<double> _pc(inter)) / (ca if ca < cb else cb)
                else:
                    d2 = (<double> _pc(inter)) / _pc(union_)
                p = va[i] * vb[j]
                if d2 != 1.0:
                    acc[union_] += (1.0 - d2) * p
                if d2 != 0.0:
                    acc[inter] += d2 * p
    free(a); free(b); free(va); free(vb)
    return _dump(acc)


def jousselme_sq(dict m1, dict m2):
    keys = sorted(set(m1) | set(m2))
    cdef int k = len(keys), i, j
    cdef long long *ks = <long long*> malloc(max(k, 1) * sizeof(long long))
    cdef double *d = <double*> malloc(max(k, 1) * sizeof(double))
    cdef double total = 0.0, di
    cdef long long inter
    if ks == NULL or d == NULL:
        free(ks); free(d)
        raise MemoryError()
    for i in range(k):
        ks[i] = keys[i]
        d[i] = m1.get(keys[i], 0.0) - m2.get(keys[i], 0.0)
    with nogil:
        for i in range(k):
            di = d[i]
            if di == 0.0:
                continue
            total += di * di
            for j in range(i + 1, k):
                inter = ks[i] & ks[j]
                if inter:
                    total += 2.0 * di * d[j] * _pc(inter) / _pc(ks[i] | ks[j])
    free(ks); free(d)
    total *= 0.5
    return total if total > 0.0 else 0.0


def zeta(values, bint superset=False, bint inverse=False):
    cdef cnp.ndarray[cnp.float64_t, ndim=1] arr = np.array(values, dtype=np.float64).ravel()
    cdef Py_ssize_t size = arr.shape[0]
    cdef int n = int(size).bit_length() - 1
    if size != (<Py_ssize_t> 1) << n:
        raise ValueError("length must be a power of two")
    cdef double *a = &arr[0]
    cdef Py_ssize_t x, bit
    cdef int i
    with nogil:
        for i in range(n):
            bit = (<Py_ssize_t> 1) << i
            for x in range(size):
                if x & bit:
                    if superset:
                        if inverse:
                            a[x ^ bit] -= a[x]
                        else:
                            a[x ^ bit] += a[x]
                    else:
                        if inverse:
                            a[x] -= a[x ^ bit]
                        else:
                            a[x] += a[x ^ bit]
    return arr
