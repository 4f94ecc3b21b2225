"""Tilt elements, theta maps, kernel generators, the q-logarithm, and the
Frobenius fixed-point solver."""

import math
import random

import pytest

from wittkit.rings import CharPQuotient, CyclotomicTruncation
from wittkit.tilt import (
    QLogDivisionError,
    TiltElement,
    TiltPrecisionError,
    check_ker_F_generators,
    eps_charp,
    epsilon,
    frobenius_equation_solve,
    project_charp,
    q_log,
    theta,
    theta_r,
    tilt_add,
    tilt_const,
    tilt_one,
    tilt_sum,
    tilt_teichmuller,
    tilt_witt_add,
    tilt_witt_frobenius,
    tilt_witt_mul,
    tilt_witt_phi_inv,
    tilt_witt_sum_many,
    tilt_zero,
    witt_phi,
    xi_element,
)
from wittkit.witt import (
    frobenius,
    restriction,
    teichmuller,
    witt_add,
    witt_mul,
    witt_neg,
    witt_one,
)


def test_epsilon_lifts():
    r = CyclotomicTruncation(3, 2, 2)
    eps = epsilon(r, 2)
    assert eps.lifts == (r.one(), r.zeta(1), r.zeta(2))
    assert epsilon(r, 0).lifts == (r.one(),)
    with pytest.raises(ValueError):
        epsilon(r, 3)
    # coordinatewise p-th power shifts the tower pattern
    cubes = eps.frobenius()
    assert cubes.lifts == (r.one(), r.one(), r.zeta(1))


def test_compatibility_enforced():
    r = CyclotomicTruncation(3, 2, 1)
    with pytest.raises(ValueError):
        TiltElement(r, (r.zeta(1), r.zeta(1)))  # zeta^3 != zeta mod 3
    TiltElement(r, (r.one(), r.one()))  # fine


def test_mul_and_roots():
    r = CyclotomicTruncation(3, 2, 2)
    eps = epsilon(r, 2)
    assert (eps * eps**2) == eps**3
    root = eps.root(1)
    assert root.lifts == (r.zeta(1), r.zeta(2))
    assert (root**3).lifts == (r.one(), r.zeta(1))


def test_add_zero_full_depth_and_stabilized_value():
    r = CyclotomicTruncation(3, 2, 1)
    eps = epsilon(r, 2)
    assert tilt_add(eps, tilt_zero(r, 2)) == eps
    s = tilt_sum([eps, -tilt_one(r, 2)], delta=2)
    assert s.lift(0) == (r.zeta(2) - r.one()) ** 9
    with pytest.raises(TiltPrecisionError):
        tilt_sum([eps, -tilt_one(r, 2)], delta=3)


def test_const_tilts_are_exactly_compatible():
    r = CyclotomicTruncation(3, 2, 2)
    for c in range(5):
        t = tilt_const(r, c, 2)
        for i in range(2):
            assert t.lifts[i + 1] ** 3 == t.lifts[i]


def test_theta_teichmuller_and_ring_map():
    r = CyclotomicTruncation(3, 3, 1)
    eps = epsilon(r, 3)
    for n in (1, 2, 3):
        assert theta_r(tilt_teichmuller(eps, 3), n) == teichmuller(r.zeta(n), 3, n)
    one = tilt_one(r, 3)
    assert theta_r(tilt_teichmuller(one, 2), 2) == witt_one(r, 3, 2)
    samples = [tilt_teichmuller(eps**i, 2) for i in (1, 2, 4)]
    samples.append(tilt_teichmuller(tilt_const(r, 2, 3), 2))
    for u in samples:
        for v in samples:
            for rr in (1, 2):
                assert theta_r(tilt_witt_add(u, v), rr) == witt_add(
                    theta_r(u, rr), theta_r(v, rr)
                )
                assert theta_r(tilt_witt_mul(u, v), rr) == witt_mul(
                    theta_r(u, rr), theta_r(v, rr)
                )


def test_theta_transition_compatibilities():
    r = CyclotomicTruncation(3, 3, 1)
    eps = epsilon(r, 3)
    samples = [tilt_teichmuller(eps**i, 2) for i in (1, 2, 4)]
    samples += [tilt_witt_add(samples[0], samples[1])]
    for w in samples:
        assert frobenius(theta_r(w, 2)) == theta_r(w, 1)
        assert restriction(theta_r(w, 2)) == theta_r(tilt_witt_phi_inv(w), 1)
    with pytest.raises(TiltPrecisionError):
        theta_r(tilt_teichmuller(epsilon(r, 1), 2), 2)


def test_ker_theta_generators():
    r = CyclotomicTruncation(3, 2, 1)
    xi = xi_element(r, 2, 1)
    assert theta(xi).is_zero()
    eps = epsilon(r, 2)
    terms = [tilt_teichmuller(tilt_one(r, 2), 1)] + [
        tilt_teichmuller(eps**i, 1) for i in (1, 2)
    ]
    gen1 = tilt_witt_sum_many(terms)
    assert theta_r(gen1, 1).is_zero()
    # F of xi is the theta_1 kernel generator (connects the two)
    r3 = CyclotomicTruncation(3, 3, 1)
    xi3 = xi_element(r3, 3, 2)
    fxi = tilt_witt_frobenius(xi3)
    eps3 = epsilon(r3, 3)
    terms3 = [tilt_teichmuller(tilt_const(r3, 1, 3), 2)] + [
        tilt_teichmuller(eps3**i, 2) for i in (1, 2)
    ]
    gen = tilt_witt_sum_many(terms3)
    assert theta_r(fxi, 1) == theta_r(gen, 1)


def test_ker_f_generator_report():
    rng = random.Random(0)
    rep = check_ker_F_generators(CyclotomicTruncation(3, 2, 1), 1, rng=rng)
    assert rep["membership_z"] and rep["membership_big_sum"]
    assert rep["constructed_members_divide"]
    assert rep["verdict"] in ("pass", "truncation-limited")
    rep = check_ker_F_generators(CyclotomicTruncation(3, 3, 1), 2, rng=rng)
    assert rep["membership_z"] and rep["membership_big_sum"]
    with pytest.raises(ValueError):
        check_ker_F_generators(CyclotomicTruncation(3, 1, 1), 1)


def test_qlog_identities():
    ring = CharPQuotient(3, 1, 3)
    eps = eps_charp(ring)
    q = teichmuller(eps, 3, 2)
    val, per = q_log(q, q, 4)
    assert val == witt_add(q, witt_neg(witt_one(ring, 3, 2)))
    assert per[2]["vanished"] and per[3]["vanished"] and per[4]["vanished"]
    val1, _ = q_log(witt_one(ring, 3, 2), q, 3)
    assert val1.is_zero()
    xsq = teichmuller(eps**2, 3, 2)
    v3, _ = q_log(xsq, q, 3)
    v4, _ = q_log(xsq, q, 4)
    v5, per5 = q_log(xsq, q, 5)
    assert v3 == v4 == v5
    assert len(per5) == 5


def test_qlog_division_error_names_term():
    ring = CharPQuotient(3, 0, 9)
    q = teichmuller(eps_charp(ring), 3, 1)
    x = teichmuller(ring.t_element(), 3, 1)  # [t] is not a 1-unit: must fail
    with pytest.raises(QLogDivisionError) as exc:
        q_log(x, q, 3)
    assert exc.value.term == 3
    assert "charp(3,0,9)" in str(exc.value)


def test_fixed_points_k9_oracle():
    ring = CharPQuotient(3, 0, 9)
    rep = frobenius_equation_solve(ring, 1)
    assert rep["inclusion_exact"]
    # brute-force oracle over all 3^9 elements
    t = ring.t_element()
    c0 = t * t
    brute = {y.data for y in ring.enumerate_elements() if y**3 == c0 * y}
    got = {y.coords[0].data for y in rep["solutions"]}
    assert got == brute
    claimed = {y.coords[0].data for y in rep["claimed"]} | {ring.zero().data}
    assert claimed == {(ring.from_int(c) * t).data for c in range(3)}
    assert all(
        s["junk_s_valuation"] >= math.ceil(9 / 2) for s in rep["spurious"]
    )


def test_fixed_points_shrink():
    small = CharPQuotient(3, 0, 9)
    big = CharPQuotient(3, 0, 27)
    r1 = frobenius_equation_solve(small, 1)
    r2 = frobenius_equation_solve(big, 1)
    v1 = min(s["junk_s_valuation"] for s in r1["spurious"])
    v2 = min(s["junk_s_valuation"] for s in r2["spurious"])
    assert v2 > v1
    # projected to the common range, the junk vanishes entirely
    for s in r2["spurious"]:
        junk_proj = [project_charp(big, small, c) for c in s["junk"].coords]
        assert all(c.is_zero() for c in junk_proj)


def test_fixed_points_n2_inclusion():
    ring = CharPQuotient(3, 0, 9)
    rep = frobenius_equation_solve(ring, 2)
    assert rep["inclusion_exact"]
    assert len(rep["claimed"]) == 9  # all of W_2(F_3) ([eps]-1)
    # phi is coordinatewise p-th power over char-p rings
    y = rep["claimed"][0]
    assert witt_phi(y).coords == tuple(c**3 for c in y.coords)


def test_solution_count_bounds():
    ring = CharPQuotient(3, 0, 9)
    rep = frobenius_equation_solve(ring, 1)
    assert len(rep["solutions"]) >= len(rep["claimed"])
