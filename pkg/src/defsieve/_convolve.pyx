# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled residue convolution: the inner loop of multimodular multiplication."""
from libc.stdint cimport uint64_t
from libc.stdlib cimport free, malloc

cdef extern from *:
    ctypedef unsigned long long u128 "unsigned __int128"


def conv_mod(a, b, Py_ssize_t n, uint64_t p):
    """First ``n`` terms of the convolution of residue lists ``a`` and ``b`` mod ``p``.

    Entries must already lie in ``[0, p)`` and ``p < 2**31``; products are
    summed in 128 bits and reduced once per output coefficient.
    """
    cdef Py_ssize_t la = min(len(a), n), lb = min(len(b), n)
    cdef Py_ssize_t i, j, lo, hi
    cdef uint64_t *ca
    cdef uint64_t *cb
    cdef u128 acc
    out = [0] * n
    if la == 0 or lb == 0:
        return out
    ca = <uint64_t *> malloc(la * sizeof(uint64_t))
    cb = <uint64_t *> malloc(lb * sizeof(uint64_t))
    if ca == NULL or cb == NULL:
        free(ca)
        free(cb)
        raise MemoryError()
    try:
        for i in range(la):
            ca[i] = a[i]
        for i in range(lb):
            cb[i] = b[i]
        for i in range(n):
            lo = i - lb + 1
            if lo < 0:
                lo = 0
            hi = i
            if hi > la - 1:
                hi = la - 1
            acc = 0
            for j in range(lo, hi + 1):
                acc += <u128> (ca[j] * cb[i - j])
            out[i] = <uint64_t> (acc % p)
    finally:
        free(ca)
        free(cb)
    return out
