"""Universal Witt polynomials: ghost identities and frozen forms.

The independent oracle is the ghost map itself: sum/product polynomials must
satisfy their defining polynomial identities over Z (verified symbolically
with exact dict arithmetic), and numeric evaluations over Z must commute with
the ghost map.
"""

import random

import pytest

from wittkit.rings import IntegerRing
from wittkit.witt import (
    WittTableError,
    WittUniversalTable,
    WittVector,
    _pdiv_exact,
    get_table,
    ghost,
    multi_sum_polys,
    verify_ghost_symbolic,
    witt_add,
    witt_mul,
    witt_neg,
)


def test_frozen_forms_p3():
    t1 = get_table(3, 1)
    assert t1.sum_polys[0] == {(1, 0): 1, (0, 1): 1}  # S_0 = x_0 + y_0
    assert t1.prod_polys[0] == {(1, 1): 1}  # P_0 = x_0 y_0
    t2 = get_table(3, 2)
    assert t2.sum_polys[1] == {
        (0, 1, 0, 0): 1,
        (0, 0, 0, 1): 1,
        (2, 0, 1, 0): -1,
        (1, 0, 2, 0): -1,
    }  # S_1 = x_1 + y_1 - x_0^2 y_0 - x_0 y_0^2
    assert t2.prod_polys[1] == {
        (3, 0, 0, 1): 1,
        (0, 1, 3, 0): 1,
        (0, 1, 0, 1): 3,
    }  # P_1 = x_0^p y_1 + x_1 y_0^p + p x_1 y_1


def test_frozen_p1_general_p():
    for p in (3, 5, 7):
        t = get_table(p, 2)
        assert t.prod_polys[1] == {
            (p, 0, 0, 1): 1,
            (0, 1, p, 0): 1,
            (0, 1, 0, 1): p,
        }


@pytest.mark.parametrize("p,n", [(3, 1), (3, 2), (3, 3), (3, 4), (5, 1), (5, 2), (5, 3)])
def test_ghost_identities_symbolic(p, n):
    assert verify_ghost_symbolic(get_table(p, n)) is None


def test_ghost_oracle_sum_over_integers():
    # derived value: (1,0) + (1,0) = (2,-2) at p=3, because ghosts add to (2,2)
    Z = IntegerRing()
    u = WittVector(Z, 3, (Z.from_int(1), Z.from_int(0)))
    s = witt_add(u, u)
    assert [c.data for c in s.coords] == [2, -2]
    assert [c.data for c in ghost(s)] == [2, 2]


def test_ghost_homomorphism_numeric():
    Z = IntegerRing()
    rng = random.Random(0)
    for p, n in [(3, 3), (5, 2)]:
        for _ in range(50):
            u = WittVector(Z, p, tuple(Z.from_int(rng.randint(-5, 5)) for _ in range(n)))
            v = WittVector(Z, p, tuple(Z.from_int(rng.randint(-5, 5)) for _ in range(n)))
            gu, gv = ghost(u), ghost(v)
            assert [c.data for c in ghost(witt_add(u, v))] == [
                a.data + b.data for a, b in zip(gu, gv)
            ]
            assert [c.data for c in ghost(witt_mul(u, v))] == [
                a.data * b.data for a, b in zip(gu, gv)
            ]
            # negation is coordinatewise for odd p: ghost flips sign
            assert [c.data for c in ghost(witt_neg(u))] == [-a.data for a in gu]


def test_multi_sum_polys_match_iterated_addition():
    Z = IntegerRing()
    rng = random.Random(8)
    from wittkit.witt import eval_poly_ops

    class IntOps:
        def zero(self):
            return 0

        def one(self):
            return 1

        def mul(self, a, b):
            return a * b

        def scale_int(self, a, c):
            return a * c

        def sum(self, items):
            return sum(items)

    polys = multi_sum_polys(3, 2, 3)
    for _ in range(25):
        vecs = [
            WittVector(Z, 3, (Z.from_int(rng.randint(-4, 4)), Z.from_int(rng.randint(-4, 4))))
            for _ in range(3)
        ]
        want = witt_add(witt_add(vecs[0], vecs[1]), vecs[2])
        values = [c.data for v in vecs for c in v.coords]
        got = [eval_poly_ops(poly, values, IntOps()) for poly in polys]
        assert got == [c.data for c in want.coords]


def test_exact_division_fails_loudly():
    with pytest.raises(WittTableError):
        _pdiv_exact({(1, 0): 1}, 3)


def test_practical_length_cap():
    with pytest.raises(ValueError):
        get_table(3, 6)


def test_corrupted_table_detected():
    table = WittUniversalTable(3, 2)
    table.sum_polys[1][(0, 1, 0, 0)] += 1
    assert verify_ghost_symbolic(table) is not None
