"""Towers, supernatural numbers, and the equivalence predicates."""

import math

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from sympy import factorint

from roeclass import (
    INFINITE,
    PreconditionViolation,
    SupernaturalNumber,
    Tower,
    bijectively_coarsely_equivalent,
    coarsely_equivalent,
    obstruction_witness,
    sn_divides,
    sn_equal,
    supernatural_of_tower,
    tower_order,
)

from conftest import ratios, towers


def exponent_oracle(t, p, depth=12):
    """Largest v_p(k_n) over n <= depth, or INFINITE if still growing at the end.

    Independent of supernatural_of_tower: works from raw orders only.
    """
    vals = []
    for n in range(depth + 1):
        k = tower_order(t, n)
        v = 0
        while k % p == 0:
            k //= p
            v += 1
        vals.append(v)
    if t.tail and vals[-1] > vals[-(len(t.tail) + 1)]:
        return INFINITE
    return vals[-1]


class TestTowerOrder:
    def test_powers_of_two(self):
        t = Tower((), (2,))
        assert [tower_order(t, n) for n in range(4)] == [1, 2, 4, 8]

    def test_empty_product(self):
        assert tower_order(Tower((2, 3), (5,)), 0) == 1
        assert tower_order(Tower((), ()), 0) == 1

    def test_prefix_then_tail(self):
        assert tower_order(Tower((2, 3), (5,)), 4) == 150

    def test_finite_tower_saturates(self):
        t = Tower((6,), ())
        assert tower_order(t, 1) == 6
        assert tower_order(t, 5) == 6

    @given(towers(), st.integers(min_value=0, max_value=8))
    def test_monotone_and_divisible(self, t, n):
        a, b = tower_order(t, n), tower_order(t, n + 1)
        assert b % a == 0
        assert b >= a


class TestNormalization:
    def test_ones_dropped(self):
        assert Tower((1, 2, 1), (3, 1)) == Tower((2,), (3,))

    def test_all_ones_tail_becomes_empty(self):
        assert Tower((2,), (1, 1)) == Tower((2,), ())

    def test_primitive_tail_period(self):
        assert Tower((), (2, 3, 2, 3)) == Tower((), (2, 3))

    def test_prefix_rotation_absorbed(self):
        # prefix ending in the tail's last ratio is one rotation of the tail
        assert Tower((2,), (3, 2)) == Tower((), (2, 3))

    def test_rejects_zero_ratio(self):
        with pytest.raises(ValueError):
            Tower((0,), ())

    def test_rejects_bool(self):
        with pytest.raises(ValueError):
            Tower((True,), ())

    @given(towers(), st.integers(min_value=0, max_value=3))
    def test_one_insertion_invisible(self, t, pos):
        prefix = list(t.prefix)
        prefix.insert(min(pos, len(prefix)), 1)
        assert Tower(tuple(prefix), t.tail) == t

    @given(towers(max_tail=2), st.integers(min_value=2, max_value=3))
    def test_tail_concatenation_invisible(self, t, k):
        assert Tower(t.prefix, t.tail * k) == t


class TestSupernaturalOfTower:
    def test_p_infinity(self):
        s = supernatural_of_tower(Tower((), (2,)))
        assert s.exponents == {2: INFINITE}
        assert s.default_exponent == 0

    def test_finite_factorization(self):
        s = supernatural_of_tower(Tower((6,), ()))
        assert s.exponents == {2: 1, 3: 1}

    def test_prefix_prime_swallowed_by_tail(self):
        expected = {p: exponent_oracle(Tower((2,), (6,)), p) for p in (2, 3)}
        assert expected == {2: INFINITE, 3: INFINITE}
        s = supernatural_of_tower(Tower((2,), (6,)))
        assert s.exponents == expected

    def test_mixed_finite_and_infinite_exponents(self):
        # 150 = 2 * 3 * 5^2, tail contributes 2^inf 5^inf, the 3 stays put
        s = supernatural_of_tower(Tower((2, 3), (5,)))
        assert s.exponents[5] == INFINITE
        assert s.exponents[3] == 1
        assert s.exponents[2] == 1

    @given(towers(), st.sampled_from([2, 3, 5, 7, 11, 13, 47]))
    def test_matches_valuation_oracle(self, t, p):
        assert supernatural_of_tower(t).exponent_of(p) == exponent_oracle(t, p)

    @given(towers(), st.sampled_from([2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47]),
           st.integers(min_value=0, max_value=12))
    def test_exponent_dominates_every_order(self, t, p, n):
        k = tower_order(t, n)
        v = 0
        while k % p == 0:
            k //= p
            v += 1
        if v >= 1:
            assert sn_divides(p, v, supernatural_of_tower(t))

    @given(towers())
    def test_tail_permutation_invariant(self, t):
        rotated = Tower(t.prefix, t.tail[1:] + t.tail[:1])
        assert sn_equal(supernatural_of_tower(t), supernatural_of_tower(rotated))


class TestSnDivides:
    def test_infinity_dominates(self):
        assert sn_divides(2, 3, SupernaturalNumber({2: INFINITE}))

    def test_absent_prime(self):
        assert not sn_divides(3, 1, SupernaturalNumber({2: INFINITE}))

    def test_finite_exponent_bound(self):
        assert not sn_divides(2, 2, SupernaturalNumber({2: 1, 3: 1}))

    def test_rejects_composite(self):
        with pytest.raises(PreconditionViolation):
            sn_divides(4, 1, SupernaturalNumber({2: INFINITE}))

    def test_rejects_zero_exponent(self):
        with pytest.raises(PreconditionViolation):
            sn_divides(2, 0, SupernaturalNumber({2: INFINITE}))


class TestSnEqual:
    def test_identical(self):
        assert sn_equal(SupernaturalNumber({2: INFINITE}), SupernaturalNumber({2: INFINITE}))

    def test_different_primes(self):
        assert not sn_equal(SupernaturalNumber({2: INFINITE}), SupernaturalNumber({3: INFINITE}))

    def test_default_disagreement(self):
        # all primes infinite on the left, only 2 infinite on the right
        left = SupernaturalNumber({}, INFINITE)
        right = SupernaturalNumber({2: INFINITE}, 0)
        assert not sn_equal(left, right)

    def test_default_absorbs_explicit_entries(self):
        assert sn_equal(SupernaturalNumber({}, INFINITE),
                        SupernaturalNumber({2: INFINITE}, INFINITE))

    @given(towers(), towers(), towers())
    def test_equivalence_relation(self, a, b, c):
        sa, sb, sc = map(supernatural_of_tower, (a, b, c))
        assert sn_equal(sa, sa)
        assert sn_equal(sa, sb) == sn_equal(sb, sa)
        if sn_equal(sa, sb) and sn_equal(sb, sc):
            assert sn_equal(sa, sc)


class TestEquivalencePredicates:
    def test_two_vs_four(self):
        assert bijectively_coarsely_equivalent(Tower((), (2,)), Tower((4,), (2,)))

    def test_two_vs_three(self):
        assert not bijectively_coarsely_equivalent(Tower((), (2,)), Tower((), (3,)))

    @given(towers())
    def test_reflexive(self, t):
        assert bijectively_coarsely_equivalent(t, t)

    def test_coarse_ignores_primes(self):
        assert coarsely_equivalent(Tower((), (2,)), Tower((), (3,)))

    def test_coarse_finite_pair(self):
        assert coarsely_equivalent(Tower((6,), ()), Tower((8,), ()))

    def test_coarse_mixed_finiteness(self):
        assert not coarsely_equivalent(Tower((6,), ()), Tower((), (2,)))

    @given(towers(), towers())
    def test_bijective_implies_coarse(self, t1, t2):
        if bijectively_coarsely_equivalent(t1, t2):
            assert coarsely_equivalent(t1, t2)

    @given(towers(max_prefix=2, max_tail=2), st.integers(min_value=0, max_value=1))
    def test_prefix_factor_split_invisible(self, t, idx):
        # replacing a prefix ratio by two factors with the same product
        if not t.prefix:
            return
        i = min(idx, len(t.prefix) - 1)
        r = t.prefix[i]
        split = t.prefix[:i] + (r, r) + t.prefix[i + 1:]
        merged = t.prefix[:i] + (r * r,) + t.prefix[i + 1:]
        assert bijectively_coarsely_equivalent(Tower(split, t.tail), Tower(merged, t.tail))


class TestObstructionWitness:
    def test_two_vs_three(self):
        assert obstruction_witness(Tower((), (2,)), Tower((), (3,))) == (2, 1)

    def test_equal_towers(self):
        t = Tower((), (2,))
        assert obstruction_witness(t, t) is None

    def test_four_vs_two(self):
        assert obstruction_witness(Tower((), (4,)), Tower((), (2,))) is None

    @given(towers(), towers())
    def test_absent_iff_equivalent(self, t1, t2):
        witness = obstruction_witness(t1, t2)
        assert (witness is None) == bijectively_coarsely_equivalent(t1, t2)

    @given(towers(), towers())
    def test_witness_separates(self, t1, t2):
        witness = obstruction_witness(t1, t2)
        if witness is None:
            return
        p, r = witness
        s1 = supernatural_of_tower(t1)
        s2 = supernatural_of_tower(t2)
        assert sn_divides(p, r, s1) != sn_divides(p, r, s2)


class TestSupernaturalNumberValidation:
    def test_rejects_composite_key(self):
        with pytest.raises(ValueError):
            SupernaturalNumber({4: 1})

    def test_zero_entry_collapses_to_default(self):
        assert SupernaturalNumber({2: 0}).exponents == {}

    def test_rejects_zero_entry_under_infinite_default(self):
        with pytest.raises(ValueError):
            SupernaturalNumber({2: 0}, INFINITE)

    def test_normal_form_drops_default_entries(self):
        assert SupernaturalNumber({2: INFINITE, 3: INFINITE}, INFINITE).exponents == {}

    def test_factorint_agreement(self):
        # finite towers carry plain factorizations
        s = supernatural_of_tower(Tower((12, 10), ()))
        assert s.exponents == dict(factorint(120))

    def test_exponent_is_math_inf(self):
        assert supernatural_of_tower(Tower((), (2,))).exponent_of(2) == math.inf
