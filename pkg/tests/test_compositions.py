"""Refinement-order tests against definition-level oracles."""

from __future__ import annotations

import itertools
import math

import numpy as np
import pytest
from hypothesis import given, strategies as st

from starvedpoly.compositions import (
    Composition,
    covers_of,
    enumerate_compositions,
    iter_coarsenings,
    iter_refinements,
    join,
    leq,
    meet,
    upward_closure,
)
from starvedpoly.errors import InvalidRange, LengthMismatch


def merges_down_to(v: Composition, u: Composition) -> bool:
    """Oracle for u <= v: u's parts are consecutive block sums of v's parts."""
    it = iter(v.parts)
    for target in u.parts:
        acc = 0
        while acc < target:
            try:
                acc += next(it)
            except StopIteration:
                return False
        if acc != target:
            return False
    return next(it, None) is None


@st.composite
def composition_pairs(draw, max_d=9, count=2):
    d = draw(st.integers(min_value=2, max_value=max_d))
    out = []
    for _ in range(count):
        cuts = draw(st.sets(st.integers(min_value=1, max_value=d - 1)))
        out.append(Composition.from_proper_sums(cuts, d))
    return tuple(out)


def test_constructor_rejects_bad_parts():
    with pytest.raises(InvalidRange):
        Composition(())
    with pytest.raises(InvalidRange):
        Composition((2, 0, 1))
    with pytest.raises(InvalidRange):
        Composition((-1, 4))


def test_partial_sums_and_proper_sums():
    u = Composition((2, 1, 3))
    assert u.d == 6
    assert u.length == 3
    assert u.partial_sums() == (2, 3, 6)
    assert u.proper_sums() == frozenset({2, 3})
    assert Composition.from_proper_sums({2, 3}, 6) == u


def test_from_proper_sums_rejects_out_of_range():
    with pytest.raises(InvalidRange):
        Composition.from_proper_sums({0}, 4)
    with pytest.raises(InvalidRange):
        Composition.from_proper_sums({4}, 4)


def test_leq_matches_merge_oracle_exhaustive():
    for d in range(2, 8):
        comps = enumerate_compositions(d)
        for u, v in itertools.product(comps, repeat=2):
            assert leq(u, v) == merges_down_to(v, u), (u, v)


def test_leq_rejects_mismatched_totals():
    with pytest.raises(LengthMismatch):
        leq(Composition((3,)), Composition((4,)))


def test_join_and_meet_are_lub_and_glb_exhaustive():
    for d in range(2, 8):
        comps = enumerate_compositions(d)
        for u, v in itertools.combinations(comps, 2):
            w = join(u, v)
            assert leq(u, w) and leq(v, w)
            for z in comps:
                if leq(u, z) and leq(v, z):
                    assert leq(w, z)
            m = meet(u, v)
            assert leq(m, u) and leq(m, v)
            for z in comps:
                if leq(z, u) and leq(z, v):
                    assert leq(z, m)


def test_enumerate_golden_order_d3():
    got = [u.parts for u in enumerate_compositions(3)]
    assert got == [(3,), (1, 2), (1, 1, 1), (2, 1)]


def test_enumerate_golden_order_d4():
    got = [u.parts for u in enumerate_compositions(4)]
    assert got == [
        (4,),
        (1, 3),
        (1, 1, 2),
        (1, 1, 1, 1),
        (1, 2, 1),
        (2, 2),
        (2, 1, 1),
        (3, 1),
    ]


def test_enumeration_counts():
    for d in range(1, 11):
        assert len(enumerate_compositions(d)) == 2 ** (d - 1)
        for l in range(1, d + 1):
            assert len(enumerate_compositions(d, l, l)) == math.comb(d - 1, l - 1)


def test_enumerate_rejects_bad_ranges():
    with pytest.raises(InvalidRange):
        enumerate_compositions(0)
    with pytest.raises(InvalidRange):
        enumerate_compositions(4, 3, 2)
    with pytest.raises(InvalidRange):
        enumerate_compositions(4, 0, 4)


def test_covers_add_exactly_one_cut():
    for d in range(2, 7):
        for u in enumerate_compositions(d):
            brute = [
                v
                for v in enumerate_compositions(d)
                if leq(u, v)
                and u != v
                and not any(
                    leq(u, w) and leq(w, v) and w not in (u, v)
                    for w in enumerate_compositions(d)
                )
            ]
            assert sorted(covers_of(u), key=lambda w: w.parts) == sorted(
                brute, key=lambda w: w.parts
            )
            assert len(covers_of(u)) == d - u.length


def test_upward_closure_matches_filter():
    comps = enumerate_compositions(6)
    seeds = [Composition((2, 4)), Composition((3, 2, 1))]
    got = upward_closure(seeds)
    want = {v for v in comps if any(leq(s, v) for s in seeds)}
    assert got == want


def test_iter_refinements_and_coarsenings():
    u = Composition((2, 2))
    ups = list(iter_refinements(u))
    downs = list(iter_coarsenings(u))
    assert set(ups) == {v for v in enumerate_compositions(4) if leq(u, v)}
    assert set(downs) == {v for v in enumerate_compositions(4) if leq(v, u)}
    # canonical order within each listing
    keys = [tuple(sorted(v.proper_sums())) for v in ups]
    assert keys == sorted(keys)


@given(composition_pairs(count=2))
def test_join_meet_commute(pair):
    u, v = pair
    assert join(u, v) == join(v, u)
    assert meet(u, v) == meet(v, u)


@given(composition_pairs(count=3))
def test_join_meet_associate(triple):
    u, v, w = triple
    assert join(join(u, v), w) == join(u, join(v, w))
    assert meet(meet(u, v), w) == meet(u, meet(v, w))


@given(composition_pairs(count=2))
def test_absorption_and_idempotence(pair):
    u, v = pair
    assert join(u, meet(u, v)) == u
    assert meet(u, join(u, v)) == u
    assert join(u, u) == u and meet(u, u) == u


@given(composition_pairs(count=2))
def test_join_meet_consistent_with_order(pair):
    u, v = pair
    assert leq(u, v) == (join(u, v) == v)
    assert leq(u, v) == (meet(u, v) == u)


def test_randomized_lattice_axioms_up_to_d10():
    rng = np.random.default_rng(20260817)
    for _ in range(300):
        d = int(rng.integers(8, 11))
        cuts = [set(int(c) for c in rng.choice(np.arange(1, d), size=rng.integers(0, d), replace=False)) for _ in range(3)]
        u, v, w = (Composition.from_proper_sums(c, d) for c in cuts)
        assert join(join(u, v), w) == join(u, join(v, w))
        assert meet(meet(u, v), w) == meet(u, meet(v, w))
        assert join(u, meet(u, v)) == u
        assert meet(u, join(u, v)) == u


def test_json_round_trip():
    u = Composition((1, 4, 2))
    assert Composition.from_json(u.to_json()) == u
    assert str(u) == "(1,4,2)"
