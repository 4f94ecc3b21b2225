"""The compiled kernel and the pure-Python fallback must agree exactly."""

import random

import pytest

from wittkit import _kernel
from wittkit._kernel import _fallback


def _reduction_rows(base, m, d):
    rows = [tuple(base)]
    for _ in range(d - 2):
        prev = rows[-1]
        shifted = [0] + list(prev[: d - 1])
        top = prev[d - 1]
        rows.append(tuple((shifted[i] + top * base[i]) % m for i in range(d)))
    return rows if d > 1 else []


SHAPES = [(2, 9), (6, 3), (6, 27), (100, 5), (1, 3), (27, 3), (20, 25)]


@pytest.mark.skipif(not _kernel.HAVE_SPEEDUPS, reason="extension not built")
@pytest.mark.parametrize("d,m", SHAPES)
def test_speedups_match_fallback(d, m):
    from wittkit._kernel import _speedups

    rng = random.Random(d * 1000 + m)
    base = [rng.randrange(m) for _ in range(d)]
    red = _reduction_rows(base, m, d)
    cf = _fallback.make_ctx(red, m, d)
    cs = _speedups.make_ctx(red, m, d)
    for _ in range(50):
        a = tuple(rng.randrange(m) for _ in range(d))
        b = tuple(rng.randrange(m) for _ in range(d))
        assert _fallback.poly_mulmod(a, b, cf) == _speedups.poly_mulmod(a, b, cs)
        assert _fallback.poly_powmod(a, 11, cf) == _speedups.poly_powmod(a, 11, cs)
        assert _fallback.vec_addmod(a, b, m) == _speedups.vec_addmod(a, b, m)
        assert _fallback.vec_submod(a, b, m) == _speedups.vec_submod(a, b, m)
        assert _fallback.vec_negmod(a, m) == _speedups.vec_negmod(a, m)
        assert _fallback.vec_scalemod(a, -7, m) == _speedups.vec_scalemod(a, -7, m)


def test_fallback_numpy_path_matches_loops():
    # degree above the numpy cutoff runs the vectorized path; force both
    rng = random.Random(1)
    d, m = 40, 9
    base = [rng.randrange(m) for _ in range(d)]
    red = _reduction_rows(base, m, d)
    ctx_np = _fallback.make_ctx(red, m, d)
    assert ctx_np.use_numpy
    ctx_slow = _fallback.make_ctx(red, m, d)
    ctx_slow.use_numpy = False
    for _ in range(25):
        a = tuple(rng.randrange(m) for _ in range(d))
        b = tuple(rng.randrange(m) for _ in range(d))
        assert _fallback.poly_mulmod(a, b, ctx_np) == _fallback.poly_mulmod(a, b, ctx_slow)


def test_mulmod_against_naive_modular_arithmetic():
    # oracle: multiply in Z[x], long-divide by the minimal polynomial, reduce
    rng = random.Random(5)
    d, m = 6, 27
    minpoly = [1, 0, 0, 1, 0, 0, 1]  # x^6 + x^3 + 1
    base = [(-c) % m for c in minpoly[:d]]
    red = _reduction_rows(base, m, d)
    ctx = _fallback.make_ctx(red, m, d)
    for _ in range(40):
        a = [rng.randrange(m) for _ in range(d)]
        b = [rng.randrange(m) for _ in range(d)]
        prod = [0] * (2 * d - 1)
        for i, ai in enumerate(a):
            for j, bj in enumerate(b):
                prod[i + j] += ai * bj
        for k in range(len(prod) - 1, d - 1, -1):
            c = prod[k]
            prod[k] = 0
            for j in range(d + 1):
                prod[k - d + j] -= c * minpoly[j]
        want = tuple(c % m for c in prod[:d])
        assert _fallback.poly_mulmod(tuple(a), tuple(b), ctx) == want
