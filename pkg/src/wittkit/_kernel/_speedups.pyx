# cython: boundscheck=False, wraparound=False, cdivision=True
"""Compiled kernel: schoolbook multiply + reduction-row folding over Z/m.

Mirrors _fallback exactly.  make_ctx rejects shapes whose worst-case
accumulation would overflow int64; the selector in __init__ never sees that
case in practice (desk-scale rings are tiny), but the guard keeps the
extension honest."""

from libc.stdlib cimport malloc, free


cdef class _Ctx:
    cdef long long m
    cdef int d
    cdef long long* red   # (d-1) x d, row-major
    cdef public object red_tuple

    def __cinit__(self, red_rows, m, d_in):
        cdef int d = d_in
        cdef int j, k
        self.m = m
        self.d = d
        if int(d) * (int(m) - 1) ** 2 + int(m) >= 2**62:
            raise OverflowError("ring too large for the compiled kernel")
        self.red = <long long*>malloc(sizeof(long long) * (d - 1) * d) if d > 1 else NULL
        self.red_tuple = tuple(tuple(int(c) % m for c in row) for row in red_rows)
        for j in range(d - 1):
            for k in range(d):
                self.red[j * d + k] = self.red_tuple[j][k]

    def __dealloc__(self):
        if self.red != NULL:
            free(self.red)


def make_ctx(red_rows, m, d):
    return _Ctx(red_rows, m, d)


def poly_mulmod(a, b, _Ctx ctx):
    cdef int d = ctx.d
    cdef long long m = ctx.m
    cdef int i, j, k
    cdef long long ai, c
    cdef long long* conv = <long long*>malloc(sizeof(long long) * (2 * d))
    cdef long long* out = <long long*>malloc(sizeof(long long) * d)
    try:
        for i in range(2 * d):
            conv[i] = 0
        for i in range(d):
            ai = a[i]
            if ai:
                for j in range(d):
                    conv[i + j] += ai * <long long>b[j]
        for i in range(2 * d - 1):
            conv[i] = conv[i] % m
        for k in range(d):
            out[k] = conv[k]
        for j in range(d - 1):
            c = conv[d + j]
            if c:
                for k in range(d):
                    out[k] += c * ctx.red[j * d + k]
        return tuple([out[k] % m for k in range(d)])
    finally:
        free(conv)
        free(out)


def poly_powmod(a, e, _Ctx ctx):
    cdef int d = ctx.d
    result = tuple([1] + [0] * (d - 1))
    base = a
    e = int(e)
    while e:
        if e & 1:
            result = poly_mulmod(result, base, ctx)
        e >>= 1
        if e:
            base = poly_mulmod(base, base, ctx)
    return result


def vec_addmod(a, b, long long m):
    cdef int n = len(a)
    cdef int i
    return tuple([(<long long>a[i] + <long long>b[i]) % m for i in range(n)])


def vec_submod(a, b, long long m):
    cdef int n = len(a)
    cdef int i
    cdef long long v
    out = []
    for i in range(n):
        v = (<long long>a[i] - <long long>b[i]) % m
        if v < 0:
            v += m
        out.append(v)
    return tuple(out)


def vec_negmod(a, long long m):
    cdef int n = len(a)
    cdef int i
    cdef long long v
    out = []
    for i in range(n):
        v = (-<long long>a[i]) % m
        if v < 0:
            v += m
        out.append(v)
    return tuple(out)


def vec_scalemod(a, c, long long m):
    cdef int n = len(a)
    cdef int i
    cdef long long cc = c % m
    if cc < 0:
        cc += m
    return tuple([(cc * <long long>a[i]) % m for i in range(n)])
