"""Prime-power linear solving, cross-checked by brute force on tiny systems."""

import itertools
import random

from wittkit.modlin import nullspace_mod_p, pval, solve_mod_pp


def test_pval():
    assert pval(0, 3, 3) == 3
    assert pval(9, 3, 3) == 2
    assert pval(5, 3, 3) == 0
    assert pval(27, 3, 3) == 3  # 27 = 0 mod 27


def _brute_solutions(rows, rhs, mod, nc):
    sols = []
    for x in itertools.product(range(mod), repeat=nc):
        if all(
            sum(r * xi for r, xi in zip(row, x)) % mod == b % mod
            for row, b in zip(rows, rhs)
        ):
            sols.append(x)
    return sols


def test_solve_mod_pp_against_brute_force():
    rng = random.Random(2)
    p, M = 3, 2
    mod = p**M
    for trial in range(120):
        nr = rng.randint(1, 3)
        nc = rng.randint(1, 3)
        rows = [[rng.randrange(mod) for _ in range(nc)] for _ in range(nr)]
        rhs = [rng.randrange(mod) for _ in range(nr)]
        got = solve_mod_pp(rows, rhs, p, M)
        brute = _brute_solutions(rows, rhs, mod, nc)
        if brute:
            assert got is not None, (rows, rhs)
            assert tuple(x % mod for x in got) in brute
        else:
            assert got is None, (rows, rhs, got)


def test_nullspace_mod_p():
    rng = random.Random(4)
    p = 3
    for _ in range(60):
        nr, nc = rng.randint(1, 3), rng.randint(1, 4)
        rows = [[rng.randrange(p) for _ in range(nc)] for _ in range(nr)]
        basis = nullspace_mod_p(rows, p)
        # every basis vector is in the kernel
        for vec in basis:
            assert all(
                sum(r * v for r, v in zip(row, vec)) % p == 0 for row in rows
            )
        # the kernel size matches the brute-force count
        brute = _brute_solutions(rows, [0] * nr, p, nc)
        assert p ** len(basis) == len(brute)
