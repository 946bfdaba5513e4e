"""Coefficient conventions, symmetric-function transforms, root extraction."""

from __future__ import annotations

from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, strategies as st

from conftest import random_composition, separated_roots
from starvedpoly.compositions import Composition
from starvedpoly.errors import (
    IllConditioned,
    InvalidRange,
    InvalidS,
    LengthMismatch,
    MismatchedDegree,
    NotHyperbolic,
)
from starvedpoly.polynomials import (
    MonicPoly,
    RootMultiset,
    SymFuncVector,
    SymKind,
    composition_of,
    elem_to_power,
    from_roots,
    pi_u,
    power_sums_from_coeffs,
    power_to_elem,
    repeat_by,
    roots_of,
    truncate_coeffs,
)


def test_monic_poly_validation():
    with pytest.raises(InvalidRange):
        MonicPoly(())
    with pytest.raises(InvalidRange):
        MonicPoly((float("nan"), 1.0))
    p = MonicPoly((0, -3, 2))
    assert p.degree == 3
    assert list(p.full_coeffs()) == [1.0, 0.0, -3.0, 2.0]
    assert p.evaluate(1.0) == 0.0
    assert p.evaluate(2.0) == 4.0


def test_monic_poly_json_round_trip():
    p = MonicPoly((0.5, -1.25))
    assert MonicPoly.from_json(p.to_json()) == p
    with pytest.raises(MismatchedDegree):
        MonicPoly.from_json({"degree": 3, "coeffs": [1.0, 2.0]})


def test_root_multiset_validation():
    with pytest.raises(InvalidRange):
        RootMultiset((1.0, 1.0), (1, 1))
    with pytest.raises(InvalidRange):
        RootMultiset((2.0, 1.0), (1, 1))
    with pytest.raises(LengthMismatch):
        RootMultiset((0.0, 1.0), (1, 1, 1))
    r = RootMultiset((-2.0, 1.0), (1, 2))
    assert r.d == 3


def test_from_roots_worked_example():
    # (t+2)(t-1)^2 = t^3 - 3t + 2
    p = from_roots(RootMultiset((-2.0, 1.0), (1, 2)))
    assert p.coeffs == (0.0, -3.0, 2.0)


def test_pi_u_accepts_any_order():
    u = Composition((1, 2))
    assert pi_u((-2.0, 1.0), u) == pi_u((-2.0, 1.0), u)
    assert pi_u((1.0, -2.0), Composition((2, 1))).coeffs == (0.0, -3.0, 2.0)
    with pytest.raises(LengthMismatch):
        pi_u((1.0,), u)


def test_repeat_by():
    assert repeat_by((4.0, 7.0), Composition((2, 3))) == (4.0, 4.0, 7.0, 7.0, 7.0)
    with pytest.raises(LengthMismatch):
        repeat_by((4.0,), Composition((1, 1)))


def test_newton_identities_worked_example():
    # roots {-2, 1, 1}: e = (0, -3, -2), p = (0, 6, -6)
    e = SymFuncVector(SymKind.ELEMENTARY, (0, -3, -2))
    p = elem_to_power(e)
    assert p.kind is SymKind.POWERSUM
    assert p.values == (0, 6, -6)
    back = power_to_elem(p)
    assert back.values == (0, -3, -2)


def test_newton_identities_reject_wrong_kind():
    with pytest.raises(InvalidRange):
        elem_to_power(SymFuncVector(SymKind.POWERSUM, (1,)))
    with pytest.raises(InvalidRange):
        power_to_elem(SymFuncVector(SymKind.ELEMENTARY, (1,)))


def test_newton_identities_exact_round_trip():
    rng = np.random.default_rng(7)
    for _ in range(50):
        d = int(rng.integers(1, 11))
        e = tuple(int(v) for v in rng.integers(-9, 10, size=d))
        back = power_to_elem(elem_to_power(SymFuncVector(SymKind.ELEMENTARY, e)))
        assert all(Fraction(a) == Fraction(b) for a, b in zip(back.values, e))


@given(st.lists(st.floats(min_value=-2, max_value=2), min_size=1, max_size=10))
def test_newton_identities_float_round_trip(e):
    back = power_to_elem(elem_to_power(SymFuncVector(SymKind.ELEMENTARY, tuple(e))))
    for a, b in zip(back.values, e):
        assert abs(a - b) <= 1e-12 * (1 + abs(b))


def test_power_sums_from_coeffs():
    p = MonicPoly((0, -3, 2))  # roots -2, 1, 1
    assert power_sums_from_coeffs(p, 0) == ()
    assert power_sums_from_coeffs(p, 2) == (0, 6)
    assert power_sums_from_coeffs(p, 3) == (0, 6, -6)
    with pytest.raises(InvalidS):
        power_sums_from_coeffs(p, 4)


def test_truncate_coeffs():
    p = MonicPoly((0, -3, 2))
    assert truncate_coeffs(p, 2) == (0.0, -3.0)
    with pytest.raises(InvalidS):
        truncate_coeffs(p, -1)


def test_roots_of_simple_roots():
    r = roots_of(from_roots(RootMultiset((-1.5, 0.25, 2.0), (1, 1, 1))))
    assert r.mults.parts == (1, 1, 1)
    assert np.allclose(r.roots, (-1.5, 0.25, 2.0), atol=1e-10)


def test_roots_of_quintuple_root():
    p = from_roots(RootMultiset((1.0,), (5,)))
    r = roots_of(p)
    assert r.mults.parts == (5,)
    assert abs(r.roots[0] - 1.0) <= 1e-8


def test_roots_of_mixed_multiplicities():
    p = from_roots(RootMultiset((-1.0, 0.0, 2.0), (2, 1, 2)))
    r = roots_of(p)
    assert r.mults.parts == (2, 1, 2)
    assert np.allclose(r.roots, (-1.0, 0.0, 2.0), atol=1e-8)


def test_roots_of_rejects_complex_pair():
    with pytest.raises(NotHyperbolic):
        roots_of(MonicPoly((0.0, 1.0)))  # t^2 + 1
    with pytest.raises(NotHyperbolic):
        roots_of(MonicPoly((0.0, 0.0, 1.0)))  # t^3 + 1 has a conjugate pair


def test_roots_of_resolves_separated_near_pair():
    p = from_roots(RootMultiset((0.0, 1e-4), (1, 1)))
    r = roots_of(p)
    assert r.mults.parts == (1, 1)
    assert abs(r.roots[0]) <= 1e-10 and abs(r.roots[1] - 1e-4) <= 1e-10


def test_roots_of_merges_unresolvable_pair():
    # gap far below the cluster tolerance: the double root is the only
    # structure that verifies at working precision
    p = from_roots(RootMultiset((0.0, 1e-7), (1, 1)))
    r = roots_of(p)
    assert r.mults.parts == (2,)


def test_roots_of_flags_ambiguity_band():
    p = from_roots(RootMultiset((0.0, 5e-6), (1, 1)))
    with pytest.raises(IllConditioned):
        roots_of(p)


def test_roots_of_rejects_bad_tolerances():
    p = MonicPoly((0.0, -1.0))
    with pytest.raises(InvalidRange):
        roots_of(p, cluster_tol=-1.0)
    with pytest.raises(InvalidRange):
        roots_of(p, hyper_tol=0.0)


def test_composition_of_random_multiplicity_patterns():
    rng = np.random.default_rng(11)
    for _ in range(40):
        d = int(rng.integers(2, 9))
        u = random_composition(rng, d)
        roots = separated_roots(rng, u.length, min_gap=0.3)
        p = from_roots(RootMultiset(roots, u))
        assert composition_of(p) == u


def test_pi_round_trip_recovers_roots():
    rng = np.random.default_rng(13)
    for _ in range(40):
        d = int(rng.integers(2, 9))
        u = random_composition(rng, d)
        x = separated_roots(rng, u.length, min_gap=0.3)
        r = roots_of(pi_u(x, u))
        assert r.mults == u
        assert np.allclose(r.roots, x, atol=1e-9)
