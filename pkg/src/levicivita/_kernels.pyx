# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled sparse series kernels; mirrors ``_kernels_py`` exactly."""

from libc.math cimport fabs
from libc.stdlib cimport calloc, free, malloc


def add_float(tuple ea, tuple ca, tuple eb, tuple cb, int sign, double zeta):
    cdef Py_ssize_t na = len(ea), nb = len(eb), i = 0, j = 0
    cdef long long x, y, e
    cdef double c
    cdef list out_e = [], out_c = []
    while i < na and j < nb:
        x = ea[i]
        y = eb[j]
        if x < y:
            e = x
            c = ca[i]
            i += 1
        elif y < x:
            e = y
            c = <double>cb[j] * sign
            j += 1
        else:
            e = x
            c = <double>ca[i] + sign * <double>cb[j]
            i += 1
            j += 1
        if fabs(c) > zeta:
            out_e.append(e)
            out_c.append(c)
    while i < na:
        c = ca[i]
        if fabs(c) > zeta:
            out_e.append(ea[i])
            out_c.append(c)
        i += 1
    while j < nb:
        c = <double>cb[j] * sign
        if fabs(c) > zeta:
            out_e.append(eb[j])
            out_c.append(c)
        j += 1
    return tuple(out_e), tuple(out_c)


def add_exact(tuple ea, tuple ca, tuple eb, tuple cb, int sign, zeta):
    cdef Py_ssize_t na = len(ea), nb = len(eb), i = 0, j = 0
    cdef long long x, y
    cdef list out_e = [], out_c = []
    while i < na and j < nb:
        x = ea[i]
        y = eb[j]
        if x < y:
            c = ca[i]
            i += 1
        elif y < x:
            x = y
            c = cb[j] if sign > 0 else -cb[j]
            j += 1
        else:
            c = ca[i] + cb[j] if sign > 0 else ca[i] - cb[j]
            i += 1
            j += 1
        if c != 0:
            out_e.append(x)
            out_c.append(c)
    while i < na:
        if ca[i] != 0:
            out_e.append(ea[i])
            out_c.append(ca[i])
        i += 1
    while j < nb:
        if cb[j] != 0:
            out_e.append(eb[j])
            out_c.append(cb[j] if sign > 0 else -cb[j])
        j += 1
    return tuple(out_e), tuple(out_c)


def mul_float(tuple ea, tuple ca, tuple eb, tuple cb, long long limit, double zeta):
    cdef Py_ssize_t na = len(ea), nb = len(eb), i, j
    cdef long long lo, size, x, k, b0
    cdef double cx, c
    cdef bint truncated = False
    cdef long long *ebc
    cdef double *cbc
    cdef double *acc
    cdef list out_e = [], out_c = []
    if na == 0 or nb == 0:
        return (), (), False
    lo = <long long>ea[0] + <long long>eb[0]
    size = limit - lo + 1
    if size <= 0:
        return (), (), True
    ebc = <long long *>malloc(nb * sizeof(long long))
    cbc = <double *>malloc(nb * sizeof(double))
    acc = <double *>calloc(size, sizeof(double))
    if ebc == NULL or cbc == NULL or acc == NULL:
        free(ebc)
        free(cbc)
        free(acc)
        raise MemoryError()
    try:
        for j in range(nb):
            ebc[j] = eb[j]
            cbc[j] = cb[j]
        b0 = ebc[0]
        for i in range(na):
            x = ea[i]
            if x + b0 > limit:
                truncated = True
                break
            cx = ca[i]
            for j in range(nb):
                k = x + ebc[j] - lo
                if k >= size:
                    truncated = True
                    break
                acc[k] += cx * cbc[j]
        for k in range(size):
            c = acc[k]
            if fabs(c) > zeta:
                out_e.append(lo + k)
                out_c.append(c)
    finally:
        free(ebc)
        free(cbc)
        free(acc)
    return tuple(out_e), tuple(out_c), truncated


def mul_exact(tuple ea, tuple ca, tuple eb, tuple cb, long long limit, zeta):
    cdef Py_ssize_t na = len(ea), nb = len(eb), i, j
    cdef long long lo, size, x, k, b0
    cdef bint truncated = False
    cdef list acc, out_e = [], out_c = []
    cdef long long *ebc
    if na == 0 or nb == 0:
        return (), (), False
    lo = <long long>ea[0] + <long long>eb[0]
    size = limit - lo + 1
    if size <= 0:
        return (), (), True
    acc = [0] * size
    ebc = <long long *>malloc(nb * sizeof(long long))
    if ebc == NULL:
        raise MemoryError()
    try:
        for j in range(nb):
            ebc[j] = eb[j]
        b0 = ebc[0]
        for i in range(na):
            x = ea[i]
            if x + b0 > limit:
                truncated = True
                break
            cx = ca[i]
            for j in range(nb):
                k = x + ebc[j] - lo
                if k >= size:
                    truncated = True
                    break
                acc[k] = acc[k] + cx * cb[j]
    finally:
        free(ebc)
    for k in range(size):
        c = acc[k]
        if c != 0:
            out_e.append(lo + k)
            out_c.append(c)
    return tuple(out_e), tuple(out_c), truncated
