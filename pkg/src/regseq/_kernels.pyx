# cython: language_level=3, boundscheck=False, wraparound=False
# distutils: language = c++
"""Compiled window scanning kernels.

Same contract as ``_kernels_py``; windows are hashed with a 64-bit
polynomial rolling hash and every hash hit is confirmed with memcmp.
"""

from libc.stdint cimport uint64_t
from libc.stdlib cimport malloc, free
from libc.string cimport memcmp
from libcpp.unordered_map cimport unordered_map
from libcpp.vector cimport vector

IMPLEMENTATION = "cython"

cdef uint64_t _BASE = 1099511628211ULL


def first_occurrences(const unsigned char[::1] buf, Py_ssize_t n):
    cdef Py_ssize_t size = buf.shape[0]
    cdef Py_ssize_t i, j, last = size - n
    cdef uint64_t h = 0, top = 1
    cdef unordered_map[uint64_t, vector[Py_ssize_t]] table
    cdef vector[Py_ssize_t]* bucket
    cdef bint found
    cdef list out = []
    if n <= 0 or last < 0:
        return out
    for j in range(n - 1):
        top *= _BASE
    for j in range(n):
        h = h * _BASE + buf[j] + 1
    i = 0
    while True:
        bucket = &table[h]
        found = False
        for j in range(<Py_ssize_t>bucket.size()):
            if memcmp(&buf[bucket[0][j]], &buf[i], n) == 0:
                found = True
                break
        if not found:
            bucket.push_back(i)
            out.append(i)
        if i == last:
            break
        h = (h - (buf[i] + 1) * top) * _BASE + buf[i + n] + 1
        i += 1
    return out


cdef bint _unbordered(const unsigned char* w, Py_ssize_t n, int* fail) noexcept nogil:
    cdef Py_ssize_t i, j = 0
    if n > 1 and w[0] == w[n - 1]:
        return False
    fail[0] = 0
    for i in range(1, n):
        while j and w[i] != w[j]:
            j = fail[j - 1]
        if w[i] == w[j]:
            j += 1
        fail[i] = j
    return fail[n - 1] == 0


def unbordered_positions(const unsigned char[::1] buf, positions, Py_ssize_t n):
    cdef list out = []
    cdef Py_ssize_t p
    cdef int* fail
    if n <= 0:
        return out
    fail = <int*>malloc(n * sizeof(int))
    if fail == NULL:
        raise MemoryError()
    try:
        for p in positions:
            if _unbordered(&buf[p], n, fail):
                out.append(p)
    finally:
        free(fail)
    return out
