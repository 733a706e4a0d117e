"""Interleaving, the explicit back-and-forth map, and its verification."""

import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from roeclass import (
    MalformedInput,
    NotEquivalent,
    PreconditionViolation,
    Tower,
    TowerBijection,
    bijectively_coarsely_equivalent,
    build_back_and_forth,
    interleave_towers,
    verify_bijective_coarse_equivalence,
)
from roeclass.serialize import bijection_to_obj, canonical_json


@st.composite
def equivalent_pairs(draw):
    """Two distinct-looking towers sharing a supernatural number."""
    primes = draw(st.sets(st.sampled_from([2, 3, 5]), min_size=1, max_size=2))
    primes = sorted(primes)

    def random_tail():
        # every chosen prime must divide the tail product
        tail = [draw(st.sampled_from(primes)) for _ in range(draw(st.integers(0, 2)))]
        tail += primes
        random.Random(draw(st.integers(0, 10 ** 6))).shuffle(tail)
        return tuple(tail)

    def random_prefix():
        out = []
        for _ in range(draw(st.integers(0, 2))):
            r = draw(st.sampled_from(primes))
            out.append(r * draw(st.sampled_from([1] + primes)))
        return tuple(out)

    t1 = Tower(random_prefix(), random_tail())
    t2 = Tower(random_prefix(), random_tail())
    return t1, t2


def small_build(t1, t2, depth, cap=4096):
    """Build only when the truncation stays small; None otherwise."""
    pairs = interleave_towers(t1, t2, depth)
    if pairs and (t1.order(pairs[-1][0]) > cap or t2.order(pairs[-1][1]) > cap):
        return None
    return build_back_and_forth(t1, t2, depth)


def brute_modulus(b):
    """Least containing target level per source level, by direct block scan.

    Independent oracle: enumerates every component instead of using spans.
    """
    src_orders = [b.source.order(n) for n in range(b.final_levels[0] + 1)]
    tgt = b.target
    out = []
    for k in src_orders:
        need = 0
        for j in range(len(b.mapping) // k):
            images = [b.mapping[x] for x in range(j * k, (j + 1) * k)]
            while len({y // tgt.order(need) for y in images}) > 1:
                need += 1
        out.append(need)
    return tuple(out)


class TestInterleave:
    def test_identical_towers(self):
        t = Tower((), (2,))
        pairs = interleave_towers(t, t, 2)
        assert pairs == ((1, 1), (2, 2))
        # chain of orders 2 | 2 | 4 | 4
        assert [t.order(n) for n, _ in pairs] == [2, 4]

    def test_two_versus_four(self):
        t1, t2 = Tower((), (2,)), Tower((), (4,))
        pairs = interleave_towers(t1, t2, 2)
        assert pairs == ((1, 1), (3, 2))
        assert [t1.order(n) for n, _ in pairs] == [2, 8]
        assert [t2.order(m) for _, m in pairs] == [4, 16]

    def test_not_equivalent(self):
        with pytest.raises(NotEquivalent):
            interleave_towers(Tower((), (2,)), Tower((), (3,)), 1)

    def test_finite_tower_rejected(self):
        with pytest.raises(PreconditionViolation):
            interleave_towers(Tower((6,), ()), Tower((6,), ()), 1)

    def test_depth_zero(self):
        assert interleave_towers(Tower((), (2,)), Tower((), (4,)), 0) == ()

    @given(equivalent_pairs(), st.integers(min_value=1, max_value=3))
    def test_divisibility_chain(self, pair, depth):
        t1, t2 = pair
        pairs = interleave_towers(t1, t2, depth)
        assert len(pairs) == depth
        chain = []
        for n, m in pairs:
            chain.append(t1.order(n))
            chain.append(t2.order(m))
        for a, b in zip(chain, chain[1:]):
            assert b % a == 0
        ns = [n for n, _ in pairs]
        ms = [m for _, m in pairs]
        assert ns == sorted(set(ns)) and ms == sorted(set(ms))


class TestBuild:
    def test_identity_on_equal_towers(self):
        t = Tower((), (2,))
        b = build_back_and_forth(t, t, 2)
        assert b.mapping == (0, 1, 2, 3)

    def test_inclusion_two_into_four(self):
        b = build_back_and_forth(Tower((), (2,)), Tower((), (4,)), 1)
        assert b.mapping == (0, 1)
        assert b.final_levels == (1, 1)

    def test_depth_zero_fixes_origin(self):
        b = build_back_and_forth(Tower((), (2,)), Tower((), (4,)), 0)
        assert b.mapping == (0,)

    @given(equivalent_pairs(), st.integers(min_value=1, max_value=3))
    def test_extension_consistency(self, pair, depth):
        t1, t2 = pair
        big = small_build(t1, t2, depth)
        if big is None:
            return
        small = build_back_and_forth(t1, t2, depth - 1)
        assert big.mapping[: small.domain_size] == small.mapping

    @given(equivalent_pairs(), st.integers(min_value=1, max_value=3))
    def test_round_trip(self, pair, depth):
        t1, t2 = pair
        b = small_build(t1, t2, depth)
        if b is None:
            return
        inverse = {y: x for x, y in enumerate(b.mapping)}
        assert all(inverse[b.mapping[x]] == x for x in range(b.domain_size))

    @given(equivalent_pairs(), st.integers(min_value=1, max_value=2))
    def test_deterministic_serialization(self, pair, depth):
        t1, t2 = pair
        one = small_build(t1, t2, depth)
        if one is None:
            return
        two = build_back_and_forth(t1, t2, depth)
        assert canonical_json(bijection_to_obj(one)) == canonical_json(bijection_to_obj(two))


class TestVerify:
    def test_identity_modulus(self):
        t = Tower((), (2,))
        b = build_back_and_forth(t, t, 3)
        assert b.modulus == (0, 1, 2, 3)
        report = verify_bijective_coarse_equivalence(b)
        assert report.passed

    def test_built_map_passes(self):
        b = build_back_and_forth(Tower((), (2,)), Tower((), (4,)), 2)
        report = verify_bijective_coarse_equivalence(b)
        assert report.passed
        for check, rho in zip(report.levels, b.modulus):
            assert check.modulus == rho
            assert rho <= check.bound

    def test_block_swap_fails_at_level_one(self):
        t = Tower((), (2,))
        b = TowerBijection(t, t, 2, ((1, 1), (2, 2)), (0, 2, 1, 3))
        report = verify_bijective_coarse_equivalence(b)
        assert not report.passed
        failing = [c.level for c in report.levels if not c.passed]
        assert 1 in failing
        assert report.levels[1].modulus > report.levels[1].bound

    def test_non_injective_reported(self):
        t = Tower((), (2,))
        b = TowerBijection(t, t, 1, ((1, 1),), (0, 0))
        report = verify_bijective_coarse_equivalence(b)
        assert not report.injective
        assert not report.passed

    def test_malformed_levels_rejected(self):
        t = Tower((), (2,))
        with pytest.raises(MalformedInput):
            TowerBijection(t, t, 2, ((2, 2), (1, 1)), (0, 1, 2, 3))

    def test_wrong_domain_rejected(self):
        t = Tower((), (2,))
        with pytest.raises(MalformedInput):
            TowerBijection(t, t, 1, ((1, 1),), (0, 1, 2))

    def test_image_out_of_range_rejected(self):
        t = Tower((), (2,))
        with pytest.raises(MalformedInput):
            TowerBijection(t, t, 1, ((1, 1),), (0, 9))

    @given(equivalent_pairs(), st.integers(min_value=1, max_value=3))
    def test_built_maps_always_verify(self, pair, depth):
        t1, t2 = pair
        b = small_build(t1, t2, depth)
        if b is None:
            return
        report = verify_bijective_coarse_equivalence(b)
        assert report.passed

    @given(equivalent_pairs(), st.integers(min_value=1, max_value=2))
    def test_modulus_matches_brute_force(self, pair, depth):
        t1, t2 = pair
        b = small_build(t1, t2, depth, cap=1024)
        if b is None:
            return
        assert b.modulus == brute_modulus(b)

    @given(equivalent_pairs(), st.integers(min_value=1, max_value=2))
    def test_transport_coherence(self, pair, depth):
        # source component orders divide the promised target component orders
        t1, t2 = pair
        b = small_build(t1, t2, depth)
        if b is None:
            return
        report = verify_bijective_coarse_equivalence(b)
        for check in report.levels:
            assert t2.order(check.bound) % t1.order(check.level) == 0
