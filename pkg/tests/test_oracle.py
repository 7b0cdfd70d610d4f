import random
from fractions import Fraction as F

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from valdiff.extensions import ARTIN_SCHREIER, KUMMER, derivative_value
from valdiff.hahn_oracle import (
    STANDARD_GROUPS,
    BaseField,
    OracleScopeError,
    PrimeField,
    Relation,
    chain_check,
    compare,
    describe_relation,
    oracle_classify,
    random_instance,
    sample_unibranched,
    series_derivative_value,
)
from valdiff.ordered_groups import LevelDescriptor, OrderedGroup

Z = STANDARD_GROUPS["Z"]
seeds = st.integers(0, 2**32 - 1)


def laurent(p, G=Z):
    return BaseField(p, G, PrimeField(p))


def as_rel(p, b_dict, G=Z):
    K = laurent(p, G)
    return Relation(ARTIN_SCHREIER, p, K.series(b_dict), K)


class TestExamples:
    def test_f2_artin_schreier(self):
        rel = as_rel(2, {(-1,): 1})
        o = oracle_classify(rel)
        assert (o.e, o.f, o.d) == (2, 1, 1)
        assert o.delta == (F(-1, 2),) and not o.omega_zero
        assert compare(rel).agree

    def test_f3_kummer_square_root(self):
        K = laurent(3)
        rel = Relation(KUMMER, 2, K.monomial((1,)), K)
        o = oracle_classify(rel)
        assert (o.e, o.f, o.d) == (2, 1, 1) and o.delta == (F(1, 2),)
        assert not o.omega_zero
        assert compare(rel).agree

    def test_p_divisible_exponent_is_immediate(self):
        G = OrderedGroup.of(LevelDescriptor.localized(1, [3]))
        with pytest.raises(OracleScopeError):
            describe_relation(as_rel(3, {(-1,): 1}, G))

    def test_reduction_to_normal_form(self):
        # subtracting c^3 - c for c = t^-1 leaves t^-2, so θ - t^-1 has value -2/3
        rel = as_rel(3, {(-3,): 1, (-1,): 2, (-2,): 1})
        ext = describe_relation(rel)
        assert ext.is_ramified and ext.delta.coords == (F(-2, 3),)
        assert compare(rel).agree

    def test_dense_group(self):
        rel = as_rel(5, {(F(-1, 3),): 1}, STANDARD_GROUPS["Z[1/3]"])
        c = compare(rel)
        assert c.agree and c.oracle.valid_js == (1, 2, 3, 4)


class TestScope:
    def test_kummer_needs_q_dividing(self):
        K = laurent(3)
        with pytest.raises(OracleScopeError):
            Relation(KUMMER, 5, K.monomial((1,)), K)

    def test_wrong_degree(self):
        K = laurent(3)
        with pytest.raises(OracleScopeError):
            Relation(ARTIN_SCHREIER, 2, K.monomial((-1,)), K)

    def test_zero_rhs(self):
        K = laurent(3)
        with pytest.raises(OracleScopeError):
            Relation(ARTIN_SCHREIER, 3, K.zero(), K)


class TestAgreement:
    @settings(max_examples=40)
    @given(seeds)
    def test_random(self, seed):
        c = compare(random_instance(random.Random(seed)))
        assert c.agree, c.mismatches

    @settings(max_examples=30)
    @given(seeds, st.sampled_from(sorted(STANDARD_GROUPS)))
    def test_ramified_artin_schreier(self, seed, group):
        c = compare(random_instance(random.Random(seed), group, shape="as-ramified"))
        assert c.agree and c.oracle.e == c.relation.degree and not c.oracle.omega_zero


class TestDerivative:
    @settings(max_examples=30)
    @given(seeds)
    def test_unscaled(self, seed):
        rel = random_instance(random.Random(seed))
        ext = describe_relation(rel)
        # the defining polynomial's derivative is that of the unscaled generator
        j = 1 if ext.is_ramified else None
        assert series_derivative_value(rel) == derivative_value(ext, (0,), j).coords

    @settings(max_examples=30)
    @given(seeds, st.integers(-2, 2))
    def test_scaled_ramified(self, seed, vc):
        rng = random.Random(seed)
        rel = random_instance(rng, "Z", shape=rng.choice(["as-ramified", "kummer-ramified"]))
        ext = describe_relation(rel)
        for j in (1, rel.degree - 1):
            assert series_derivative_value(rel, (vc,), j) == derivative_value(ext, (vc,), j).coords


class TestChain:
    @pytest.mark.parametrize("vc1,vc2", [(1, 1), (2, 1), (1, 2), (3, 1)])
    def test_containment_matches_order(self, vc1, vc2):
        rel = as_rel(3, {(-1,): 1})
        assert chain_check(rel, (vc1,), (vc2,)) == (vc2 <= vc1)

    def test_kummer(self):
        K = laurent(5)
        rel = Relation(KUMMER, 2, K.monomial((1,)), K)
        assert chain_check(rel, (2,), (0,))
        assert not chain_check(rel, (0,), (1,))

    def test_not_integral(self):
        with pytest.raises(OracleScopeError):
            chain_check(as_rel(3, {(-1,): 1}), (0,), (0,))


class TestUnibranched:
    @settings(max_examples=20)
    @given(seeds)
    def test_bound_never_violated(self, seed):
        rng = random.Random(seed)
        rel = random_instance(rng, shape=rng.choice(["kummer-ramified", "kummer-inert"]), p=5)
        ext = describe_relation(rel)
        assert all(ok for _, ok in sample_unibranched(rel, ext, rng))

    def test_artin_schreier_rejected(self):
        rel = as_rel(3, {(-1,): 1})
        with pytest.raises(OracleScopeError):
            sample_unibranched(rel, describe_relation(rel), random.Random(0))
