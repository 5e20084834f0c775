# cython: boundscheck=False, wraparound=False
"""Compiled chord kernels; see _kernels_py for the reference implementation."""

IMPLEMENTATION = "cython"


def has_interleaving(starts, ends):
    cdef long[:] s
    cdef long[:] e
    import array
    sa = array.array("l", starts)
    ea = array.array("l", ends)
    s = sa
    e = ea
    cdef Py_ssize_t n = len(sa)
    cdef Py_ssize_t i, j
    cdef long a1, b1, t
    for i in range(n):
        a1 = s[i]
        b1 = e[i]
        if a1 > b1:
            t = a1
            a1 = b1
            b1 = t
        for j in range(i + 1, n):
            if (a1 < s[j] < b1) != (a1 < e[j] < b1):
                return True
    return False


def count_interleavings(starts1, ends1, starts2, ends2):
    import array
    s1 = array.array("l", starts1)
    e1 = array.array("l", ends1)
    s2 = array.array("l", starts2)
    e2 = array.array("l", ends2)
    cdef long[:] sv1 = s1
    cdef long[:] ev1 = e1
    cdef long[:] sv2 = s2
    cdef long[:] ev2 = e2
    cdef Py_ssize_t n1 = len(s1)
    cdef Py_ssize_t n2 = len(s2)
    cdef Py_ssize_t i, j
    cdef long a, b, t
    cdef long total = 0
    for i in range(n1):
        a = sv1[i]
        b = ev1[i]
        if a > b:
            t = a
            a = b
            b = t
        for j in range(n2):
            if (a < sv2[j] < b) != (a < ev2[j] < b):
                total += 1
    return total
