"""Smith normal form: transform identities, divisibility chain, unimodularity,
and agreement with an independent implementation (sympy)."""

import random

from sympy import Matrix
from sympy.matrices.normalforms import smith_normal_form as sympy_snf

from wittkit.snf import det, matmul, smith_normal_form, smith_with_inverse


def _check_snf(mat):
    u, d, v = smith_normal_form(mat)
    assert matmul(matmul(u, mat), v) == d
    nr, nc = len(mat), len(mat[0])
    assert abs(det(u)) == 1 and abs(det(v)) == 1
    diag = [d[i][i] for i in range(min(nr, nc))]
    for i in range(nr):
        for j in range(nc):
            if i != j:
                assert d[i][j] == 0
    for a, b in zip(diag, diag[1:]):
        if a:
            assert b % a == 0
        else:
            assert b == 0
    assert all(x >= 0 for x in diag)
    return diag


def test_identity():
    diag = _check_snf([[1, 0], [0, 1]])
    assert diag == [1, 1]


def test_two_by_two_gcd_example():
    # diag(2,3) ~ diag(1,6): by-hand gcd steps
    diag = _check_snf([[2, 0], [0, 3]])
    assert diag == [1, 6]


def test_zero_matrix():
    diag = _check_snf([[0, 0], [0, 0]])
    assert diag == [0, 0]


def test_random_matrices_vs_sympy():
    rng = random.Random(9)
    for _ in range(40):
        nr, nc = rng.randint(1, 4), rng.randint(1, 4)
        mat = [[rng.randint(-9, 9) for _ in range(nc)] for _ in range(nr)]
        diag = _check_snf(mat)
        want = sympy_snf(Matrix(mat))
        want_diag = [abs(int(want[i, i])) for i in range(min(nr, nc))]
        assert diag == want_diag, (mat, diag, want_diag)


def test_vinv_tracks_inverse():
    rng = random.Random(10)
    for _ in range(20):
        n = rng.randint(1, 4)
        mat = [[rng.randint(-6, 6) for _ in range(n)] for _ in range(n)]
        u, d, v, vinv = smith_with_inverse(mat)
        ident = [[1 if i == j else 0 for j in range(n)] for i in range(n)]
        assert matmul(v, vinv) == ident
        assert matmul(vinv, v) == ident
