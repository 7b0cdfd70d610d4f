from fractions import Fraction as F

import pytest
from hypothesis import given
from hypothesis import strategies as st

from valdiff.extensions import (
    ARTIN_SCHREIER,
    KUMMER,
    ONE_UNIT,
    UNIT,
    CaseMismatchError,
    DefectData,
    InconsistentWitnessError,
    classify_generator_case,
    derivative_value,
    normalize_generator,
    one_minus_zeta_value,
    theta_m_generator,
    unibranched_bound_check,
)
from valdiff.ordered_groups import LevelDescriptor, OrderedGroup
from valdiff.worked import root_of_t_composite, sqrt_p_over_perfectoid

Z = OrderedGroup.of(LevelDescriptor.cyclic(1))
Q = OrderedGroup.of(LevelDescriptor.rationals())


def as_ramified(p, G=Z, value=None, j=None):
    value = value if value is not None else (F(-1, p),)
    return normalize_generator(ARTIN_SCHREIER, p, p, p, G, p, 1, generator_value=value, j=j)


class TestValidate:
    def test_immediate_forces_defect(self):
        ext = normalize_generator(ARTIN_SCHREIER, 3, 3, 3, Z, 1, 1,
                                  defect=DefectData(independent=True))
        assert ext.d == 3 and ext.is_defect

    def test_ramified_ok(self):
        assert as_ramified(3).d == 1

    def test_too_large(self):
        with pytest.raises(InconsistentWitnessError) as err:
            normalize_generator(KUMMER, 3, 0, 7, Z, 3, 3, d=1, vp=(1,), has_zeta=True)
        assert any("e*f*d" in v for v in err.value.violations)

    def test_defect_needs_residue_char(self):
        with pytest.raises(InconsistentWitnessError):
            normalize_generator(KUMMER, 2, 3, 3, Z, 1, 1, d=2, has_zeta=True)

    def test_kummer_needs_roots_of_unity(self):
        with pytest.raises(InconsistentWitnessError):
            normalize_generator(KUMMER, 3, 7, 7, Z, 3, 1, generator_value=(F(1, 3),), has_zeta=False)

    def test_ramified_value_must_leave_group(self):
        with pytest.raises(InconsistentWitnessError):
            as_ramified(3, value=(F(-1),))

    @given(st.sampled_from([2, 3, 5]), st.integers(1, 6), st.integers(1, 6), st.integers(1, 6))
    def test_ostrowski_triples(self, p, e, f, d):
        legal = {(p, 1, 1), (1, p, 1), (1, 1, p)}
        try:
            if (e, f, d) == (p, 1, 1):
                as_ramified(p)
            elif (e, f, d) == (1, 1, p):
                normalize_generator(ARTIN_SCHREIER, p, p, p, Z, 1, 1, p,
                                    defect=DefectData(independent=False))
            else:
                normalize_generator(ARTIN_SCHREIER, p, p, p, Z, e, f, d)
            accepted = True
        except InconsistentWitnessError:
            accepted = False
        assert accepted == ((e, f, d) in legal)


class TestNormalize:
    def test_as_residue_separable_iff_value_zero(self):
        assert normalize_generator(ARTIN_SCHREIER, 3, 3, 3, Z, 1, 3).residue.separable
        assert not normalize_generator(ARTIN_SCHREIER, 3, 3, 3, Z, 1, 3,
                                       generator_value=(-1,)).residue.separable

    def test_one_unit_boundary_separable(self):
        G = OrderedGroup.of(LevelDescriptor.cyclic(F(1, 2)))
        ext = normalize_generator(KUMMER, 3, 0, 3, G, 1, 3, generator_value=(F(1, 2),),
                                  one_unit=True, has_zeta=True, vp=(1,))
        assert ext.residue.separable and ext.residue.generated_by == ONE_UNIT
        below = normalize_generator(KUMMER, 3, 0, 3, G, 1, 3, generator_value=(F(1, 2),),
                                    one_unit=True, has_zeta=True, vp=(2,))
        assert not below.residue.separable

    def test_unit_kummer_p_inseparable(self):
        ext = normalize_generator(KUMMER, 3, 0, 3, Z, 1, 3, has_zeta=True, vp=(2,))
        assert not ext.residue.separable and ext.residue.generated_by == UNIT

    def test_kummer_prime_to_p_separable(self):
        ext = normalize_generator(KUMMER, 2, 5, 5, Z, 1, 2)
        assert ext.residue.separable


class TestGeneratorCase:
    def test_discrete_single_generator(self):
        for p in (2, 3, 5):
            gc = classify_generator_case(as_ramified(p))
            assert gc.tag == "DL2d" and not gc.union_form

    @pytest.mark.parametrize("p", [3, 5])
    def test_composite_example(self, p):
        gc = classify_generator_case(root_of_t_composite(p))
        assert gc.union_form and gc.tag == "DL2c"
        assert gc.j in gc.valid_js

    def test_divisible_for_small_indices(self):
        # ℤ[1/6] is 2-, 3- and 4-divisible, and 1/5 is outside it
        G = OrderedGroup.of(LevelDescriptor.localized(1, [2, 3]))
        ext = normalize_generator(KUMMER, 5, 11, 11, G, 5, 1, generator_value=(F(1, 5),), has_zeta=True)
        gc = classify_generator_case(ext)
        assert gc.tag == "DL2a" and gc.j == 1

    def test_all_dense(self):
        G = OrderedGroup.of(LevelDescriptor.localized(1, [3]), LevelDescriptor.rationals())
        gc = classify_generator_case(as_ramified(5, G, (F(-1, 5), 0)))
        assert gc.tag == "DL2b" and gc.j == 1

    def test_discrete_jump_j_inverse(self):
        # vθ = -2/5 over ℤ: j·(-2) ≡ 1 mod 5 gives j = 2, so jvθ ≡ 1/5 mod ℤ
        gc = classify_generator_case(as_ramified(5, value=(F(-2, 5),)))
        assert gc.valid_js == (2,) and gc.j == 2

    def test_inert(self):
        gc = classify_generator_case(normalize_generator(ARTIN_SCHREIER, 3, 3, 3, Z, 1, 3))
        assert gc.tag == "DL1"

    def test_needs_defectless(self):
        ext = normalize_generator(ARTIN_SCHREIER, 3, 3, 3, Z, 1, 1, defect=DefectData(independent=True))
        with pytest.raises(CaseMismatchError):
            classify_generator_case(ext)


class TestThetaM:
    @pytest.mark.parametrize("p,m,k,ell", [(3, 1, 1, 2), (5, 4, 1, 1), (2, 1, 1, 1)])
    def test_examples(self, p, m, k, ell):
        assert theta_m_generator(p, m) == (k, ell, F(1, p))

    def test_range(self):
        with pytest.raises(ValueError):
            theta_m_generator(5, 5)


class TestDerivative:
    def test_as_unscaled(self):
        assert derivative_value(as_ramified(3)).is_zero

    def test_sqrt_p(self):
        for p in (3, 5, 7):
            assert derivative_value(sqrt_p_over_perfectoid(p), (0,), 1).coords == (F(1, 2),)

    def test_unit_kummer_p(self):
        ext = normalize_generator(KUMMER, 3, 0, 3, Z, 1, 3, has_zeta=True, vp=(2,))
        assert derivative_value(ext) == ext.vp

    @given(st.sampled_from([2, 3, 5, 7]), st.integers(-5, 5))
    def test_j_one_matches_scaled(self, p, c):
        ext = as_ramified(p)
        assert derivative_value(ext, (c,), 1) == derivative_value(ext, (c,)) == Z.element(((p - 1) * c,))

    def test_scaled_inseparable(self):
        ext = normalize_generator(ARTIN_SCHREIER, 3, 3, 3, Z, 1, 3, generator_value=(-2,))
        assert derivative_value(ext).coords == (4,)

    def test_defect_has_no_formula(self):
        ext = normalize_generator(ARTIN_SCHREIER, 3, 3, 3, Z, 1, 1, defect=DefectData(independent=True))
        with pytest.raises(CaseMismatchError):
            derivative_value(ext)


class TestRootsOfUnity:
    def test_examples(self):
        assert one_minus_zeta_value(3, 1) == F(1, 2)
        assert one_minus_zeta_value(2, 1) == 1
        assert one_minus_zeta_value(5, 0) == 0

    def test_not_prime(self):
        with pytest.raises(ValueError):
            one_minus_zeta_value(4, 1)

    @given(st.sampled_from([2, 3, 5, 7, 11]), st.fractions(min_value=0, max_value=10))
    def test_inverse(self, n, vn):
        assert one_minus_zeta_value(n, vn) * (n - 1) == vn


class TestUnibranchedBound:
    def ext(self):
        G = OrderedGroup.of(LevelDescriptor.cyclic(F(1, 2)))
        return normalize_generator(KUMMER, 3, 0, 3, G, 3, 1, generator_value=(F(1, 6),),
                                   has_zeta=True, vp=(1,))

    def test_examples(self):
        ext = self.ext()
        assert unibranched_bound_check(ext, (F(1, 6),))
        assert unibranched_bound_check(ext, (F(1, 6) + F(1, 2),))
        assert not unibranched_bound_check(ext, (F(1, 6) + F(1, 2) + F(1, 100),))

    def test_artin_schreier_rejected(self):
        with pytest.raises(CaseMismatchError):
            unibranched_bound_check(as_ramified(3), (0,))
