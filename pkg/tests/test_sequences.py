"""Complex exactness machinery and its registered instances."""

import random

import pytest

from wittkit.rings import CharPQuotient, CyclotomicTruncation
from wittkit.sequences import (
    TwistedModule,
    broken_complex,
    check_fnd_leibniz,
    check_module_axioms,
    check_vn_module_hom,
    check_witt_intersection,
    check_xv_identity,
    exact_rz_complex,
    exactness_report,
    ring_carrier,
    witt_carrier,
    witt_restriction_complex,
)
from wittkit.witt import verschiebung, witt_one


@pytest.mark.parametrize(
    "ring,n",
    [
        (CyclotomicTruncation(3, 1, 1), 1),
        (CyclotomicTruncation(3, 1, 1), 2),
        (CharPQuotient(3, 0, 2), 1),
        (CharPQuotient(5, 0, 1), 1),
    ],
)
def test_witt_restriction_sequence_exact(ring, n):
    cx = witt_restriction_complex(ring, ring.p, n)
    verdicts = exactness_report(cx, budget=10**6)
    assert all(v.verdict == "pass" for v in verdicts), [v.as_dict() for v in verdicts]


def test_exact_rz_small_instance():
    ring = CyclotomicTruncation(3, 2, 1)
    cx, classifiers = exact_rz_complex(ring, 1)
    verdicts = exactness_report(cx, budget=10**6, classifiers=classifiers)
    by_slot = {v.slot: v for v in verdicts}
    assert by_slot["composite 0->2"].verdict == "pass"
    assert by_slot["composite 1->3"].verdict == "pass"
    assert by_slot["exact at cyc(3,2,1) (injectivity)"].verdict == "pass"
    assert by_slot["exact at W_2(cyc(3,2,1))"].verdict in ("pass", "truncation-limited")
    assert by_slot["exact at W_1(cyc(3,2,1))"].verdict == "pass"
    surj = by_slot["exact at cyc(3,2,1)/p^1 (surjectivity)"]
    assert surj.verdict in ("pass", "truncation-limited")
    if surj.verdict == "truncation-limited":
        assert "defect" in surj.note


def test_broken_complex_fails_with_witness():
    bad = broken_complex(CyclotomicTruncation(3, 2, 1), 3, 1)
    verdicts = exactness_report(bad, budget=10**4)
    fails = [v for v in verdicts if v.verdict == "fail"]
    assert fails and fails[0].witness is not None


def test_sampled_mode_flags_verdict():
    ring = CyclotomicTruncation(3, 2, 1)
    cx = witt_restriction_complex(ring, 3, 1)
    verdicts = exactness_report(cx, budget=10)  # force sampling
    assert any(v.mode == "sampled" for v in verdicts)


def test_twisted_module_axioms():
    ring = CyclotomicTruncation(3, 2, 1)
    rng = random.Random(7)
    for n in (1, 2):
        tm = TwistedModule(ring, n)
        assert check_module_axioms(tm, rng, triples=60) == []
        y = verschiebung(witt_one(ring, 3, n))
        m = tm.random_element(rng)
        got = tm.action(y, m)
        want = (tuple(3 * c % ring.m for c in m[0]), 3 * m[1])
        assert tm.eq(got, want)
    with pytest.raises(ValueError):
        TwistedModule(ring, 1).action(witt_one(ring, 3, 3), tm.random_element(rng))


def test_supporting_identities():
    ring = CyclotomicTruncation(3, 2, 1)
    rng = random.Random(8)
    assert check_fnd_leibniz(ring, 1, rng, samples=25) == []
    assert check_xv_identity(ring, 3, 1, rng, samples=50) == []
    assert check_vn_module_hom(ring, 3, 1, rng, samples=50) == []
    assert check_vn_module_hom(ring, 3, 2, rng, samples=50) == []


def test_witt_intersection_chain():
    ring = CyclotomicTruncation(3, 4, 1)
    rng = random.Random(9)
    res = check_witt_intersection(ring, 1, 3, rng, samples=3)
    assert res["chain_identity"]
    assert res["members_divide"]
    assert res["nonmember_rejected"]
    with pytest.raises(ValueError):
        check_witt_intersection(CyclotomicTruncation(3, 2, 1), 1, 3, rng)


def test_carrier_sizes():
    ring = CyclotomicTruncation(3, 1, 1)
    assert ring_carrier(ring).size == 9
    assert witt_carrier(ring, 3, 2).size == 81
    assert len(list(witt_carrier(ring, 3, 2).elements())) == 81
