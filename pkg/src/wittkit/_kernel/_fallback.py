"""Pure-Python kernel.  Exact by construction: Python ints never overflow.

For degrees past _NUMPY_CUTOFF the schoolbook convolution is done with numpy
int64 (still exact: make_ctx verifies the worst-case accumulation bound before
allowing that path)."""

import numpy as np

_NUMPY_CUTOFF = 24


class _Ctx:
    __slots__ = ("red", "m", "d", "use_numpy", "red_np")

    def __init__(self, red_rows, m, d):
        self.red = tuple(tuple(int(c) % m for c in row) for row in red_rows)
        self.m = int(m)
        self.d = int(d)
        # int64 safety: conv entries are reduced mod m before folding, each
        # fold accumulation is bounded by d * (m-1)^2 + (m-1)
        bound = self.d * (self.m - 1) ** 2 + self.m
        self.use_numpy = self.d >= _NUMPY_CUTOFF and bound < 2**62
        self.red_np = (
            np.array(self.red, dtype=np.int64) if self.use_numpy and self.red else None
        )


def make_ctx(red_rows, m, d):
    return _Ctx(red_rows, m, d)


def poly_mulmod(a, b, ctx):
    d, m = ctx.d, ctx.m
    if ctx.use_numpy:
        conv = np.convolve(np.array(a, dtype=np.int64), np.array(b, dtype=np.int64))
        conv %= m
        out = conv[:d].copy()
        if len(conv) > d:
            out += conv[d:] @ ctx.red_np[: len(conv) - d]
        return tuple(int(c) for c in out % m)
    conv = [0] * (2 * d - 1)
    for i, ai in enumerate(a):
        if ai:
            for j, bj in enumerate(b):
                conv[i + j] += ai * bj
    out = [c % m for c in conv[:d]]
    for j in range(d - 1):
        c = conv[d + j] % m
        if c:
            row = ctx.red[j]
            for k in range(d):
                out[k] += c * row[k]
    return tuple(c % m for c in out)


def poly_powmod(a, e, ctx):
    d = ctx.d
    result = (1,) + (0,) * (d - 1)
    base = a
    while e:
        if e & 1:
            result = poly_mulmod(result, base, ctx)
        e >>= 1
        if e:
            base = poly_mulmod(base, base, ctx)
    return result


def vec_addmod(a, b, m):
    return tuple((x + y) % m for x, y in zip(a, b))


def vec_submod(a, b, m):
    return tuple((x - y) % m for x, y in zip(a, b))


def vec_negmod(a, m):
    return tuple(-x % m for x in a)


def vec_scalemod(a, c, m):
    c %= m
    return tuple(c * x % m for x in a)
