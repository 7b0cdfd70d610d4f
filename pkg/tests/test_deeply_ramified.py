import random
from fractions import Fraction as F

import pytest
from hypothesis import given
from hypothesis import strategies as st

from valdiff.deeply_ramified import (
    DEPENDENT_DEFECT,
    DISCRETE_COMPONENT,
    IMPERFECT_RESIDUE,
    NOT_P_DIVISIBLE,
    UNDECIDED,
    FieldDescriptor,
    Violation,
    check_DRvr,
    grthm_plus_report,
    is_deeply_ramified,
    witness_extension,
)
from valdiff.generate import deeply_ramified_family, random_field
from valdiff.kahler import kahler_of
from valdiff.ordered_groups import LevelDescriptor, OrderedGroup
from valdiff.worked import composite_field, laurent_field, perfectoid_field

Z = OrderedGroup.of(LevelDescriptor.cyclic(1))
seeds = st.integers(0, 2**32 - 1)


class TestDRvr:
    def test_criterion(self):
        assert check_DRvr(perfectoid_field(3)) is True

    def test_discrete_undecided(self):
        assert check_DRvr(laurent_field(3)) == UNDECIDED

    def test_flag_passthrough(self):
        assert check_DRvr(FieldDescriptor(3, 3, Z, drvr_flag=False)) is False
        assert check_DRvr(FieldDescriptor(3, 3, Z, drvr_flag=True)) is True

    def test_flag_contradicting_criterion(self):
        G = perfectoid_field(3).value_group
        with pytest.raises(ValueError):
            check_DRvr(FieldDescriptor(3, 3, G, drvr_flag=False))

    @given(seeds)
    def test_monotone(self, seed):
        f = random_field(random.Random(seed))
        stronger = FieldDescriptor(f.char_K, f.residue_char, f.value_group, f.vp,
                                   residue_perfect=True, contains_zeta_p=f.contains_zeta_p,
                                   independent_defect_field=True)
        if check_DRvr(f) is True:
            assert check_DRvr(stronger) is True


class TestVerdict:
    @pytest.mark.parametrize("p", [2, 3, 5])
    def test_perfectoid(self, p):
        v = is_deeply_ramified(perfectoid_field(p))
        assert v.value is True and not v.violations

    def test_laurent(self):
        v = is_deeply_ramified(laurent_field(3))
        assert v.value is False
        assert Violation(DISCRETE_COMPONENT, 0) in v.violations

    @pytest.mark.parametrize("p", [3, 5])
    def test_composite(self, p):
        v = is_deeply_ramified(composite_field(p))
        assert v.value is False and not v.drvg
        assert [x.level for x in v.violations if x.tag == DISCRETE_COMPONENT] == [1]

    def test_undecided(self):
        G = OrderedGroup.of(LevelDescriptor.rationals())
        f = FieldDescriptor(0, 3, G, G.element((1,)), independent_defect_field=True)
        assert is_deeply_ramified(f).value is True
        # ℚ with an imperfect residue field: a real violation
        f2 = FieldDescriptor(0, 3, G, G.element((1,)), residue_perfect=False)
        assert is_deeply_ramified(f2).value is False


class TestWitness:
    def test_laurent_not_divisible(self):
        f = laurent_field(3)
        v = next(x for x in is_deeply_ramified(f).violations if x.tag == NOT_P_DIVISIBLE)
        ext = witness_extension(f, v)
        assert ext.kind == "artin-schreier" and ext.is_ramified
        assert ext.delta.coords == (F(-1, 3),)
        assert not kahler_of(ext).is_zero

    def test_imperfect_residue(self):
        f = FieldDescriptor(3, 3, perfectoid_field(3).value_group, residue_perfect=False)
        ext = witness_extension(f, Violation(IMPERFECT_RESIDUE))
        assert ext.is_inert and not ext.residue.separable
        assert kahler_of(ext).case == "b" and not kahler_of(ext).is_zero

    def test_mixed_discrete_top(self):
        G = OrderedGroup.of(LevelDescriptor.cyclic(1), LevelDescriptor.rationals())
        f = FieldDescriptor(0, 3, G, G.element((0, 1)))
        ext = witness_extension(f, Violation(DISCRETE_COMPONENT, 0))
        desc = kahler_of(ext)
        assert desc.case == "e" and not desc.is_zero

    def test_dependent_defect(self):
        f = FieldDescriptor(3, 3, perfectoid_field(3).value_group, independent_defect_field=False)
        assert not kahler_of(witness_extension(f, Violation(DEPENDENT_DEFECT))).is_zero

    def test_violation_must_hold(self):
        with pytest.raises(ValueError):
            witness_extension(perfectoid_field(3), Violation(DISCRETE_COMPONENT, 0))

    @given(seeds)
    def test_every_violation_has_a_witness(self, seed):
        f = random_field(random.Random(seed))
        for v in is_deeply_ramified(f).violations:
            assert not kahler_of(witness_extension(f, v)).is_zero


class TestReport:
    @pytest.mark.parametrize("p", [2, 3, 5])
    def test_family_all_zero(self, p):
        # ℤ[1/p(p-1)] holds vp/(p-1), so ζ_p may lie in K
        G = OrderedGroup.of(LevelDescriptor.localized(1, [p, 2]))
        f = FieldDescriptor(0, p, G, G.element((1,)))
        family = deeply_ramified_family(random.Random(p), f, 100)
        r = grthm_plus_report(f, family)
        assert r.status == "consistent" and r.family_checked == 100

    def test_family_needs_roots_of_unity(self):
        with pytest.raises(ValueError):
            deeply_ramified_family(random.Random(0), perfectoid_field(3), 5)

    def test_laurent_witness(self):
        r = grthm_plus_report(laurent_field(2))
        assert r.status == "consistent" and r.witnesses
        assert all(not d.is_zero for _, _, d in r.witnesses)

    def test_partial(self):
        G = OrderedGroup.of(LevelDescriptor.rationals())
        f = FieldDescriptor(3, 3, G, independent_defect_field=True, residue_perfect=True)
        assert grthm_plus_report(f).status == "consistent"
        undecided = FieldDescriptor(3, 3, OrderedGroup.of(LevelDescriptor.localized(1, [2])),
                                    independent_defect_field=True)
        # ℤ[1/2] is not 3-divisible: a violation, not an undecided case
        assert grthm_plus_report(undecided).verdict.value is False

    @given(seeds)
    def test_random_fields_consistent(self, seed):
        rng = random.Random(seed)
        f = random_field(rng)
        family = deeply_ramified_family(rng, f, 20) if is_deeply_ramified(f).value is True else ()
        assert grthm_plus_report(f, family).status in ("consistent", "partial")
