"""One test per acceptance criterion; each prints a PASS/FAIL line (also
collected in the terminal summary)."""

import random
import time
from collections import Counter
from fractions import Fraction as F

import pytest

from valdiff.deeply_ramified import (
    DEPENDENT_DEFECT,
    is_deeply_ramified,
    witness_extension,
)
from valdiff.extensions import derivative_value, theta_m_generator
from valdiff.generate import deeply_ramified_family, random_field, random_group, random_tower
from valdiff.hahn_oracle import (
    STANDARD_GROUPS,
    compare,
    describe_relation,
    random_instance,
    series_derivative_value,
    value_grid,
)
from valdiff.kahler import InertialStep, henselize_normalize, kahler_of, kahler_of_tower
from valdiff.ordered_groups import check_DRvg, check_DRvg_quotients
from valdiff.worked import (
    composite_field,
    perfectoid_field,
    root_of_t_composite,
    sqrt_p_over_perfectoid,
)


@pytest.mark.acceptance(1, "sqrt(p) over the Z[1/p]-valued p-adic field has Ω = 0")
def test_criterion_1_square_root_of_p(criterion):
    t0 = time.perf_counter()
    for p in (3, 5, 7):
        desc = kahler_of(sqrt_p_over_perfectoid(p))
        assert desc.case == "e" and desc.is_zero
        assert desc.reason == "vq = 0 and isolated classes dense"
        assert is_deeply_ramified(perfectoid_field(p)).value is True
    elapsed = time.perf_counter() - t0
    assert elapsed < 1
    criterion.detail = f"p = 3, 5, 7: Zero ({desc.reason})"


@pytest.mark.acceptance(2, "t^(1/p) over Z[1/2] x (1/(p-1))Z has Ω = 0 without DRvg")
def test_criterion_2_composite_valuation(criterion):
    t0 = time.perf_counter()
    for p in (3, 5):
        desc = kahler_of(root_of_t_composite(p))
        assert desc.is_zero
        assert desc.reason == "vI ∩ C(vp) = ∅ and isolated classes dense"
        drvg, level = check_DRvg(composite_field(p).value_group)
        assert drvg is False and level == 1
    assert time.perf_counter() - t0 < 1
    criterion.detail = f"p = 3, 5: Zero ({desc.reason}); DRvg false at level 1"


@pytest.mark.acceptance(3, "oracle and classifier agree on random equal-characteristic instances")
def test_criterion_3_oracle_equivalence(criterion):
    rng = random.Random(20240)
    t0 = time.perf_counter()
    shapes = Counter()
    bad = []
    total = 0
    for group in sorted(STANDARD_GROUPS):
        for p in (2, 3, 5):
            for _ in range(7):
                rel = random_instance(rng, group, p)
                c = compare(rel)
                kind = f"{rel.kind} e={c.oracle.e}"
                shapes[kind] += 1
                total += 1
                if not c.agree:
                    bad.append((group, p, str(rel.b), c.mismatches))
    # a dedicated batch of ramified Artin-Schreier instances, where I ≠ I^p is at stake
    for i in range(60):
        group = sorted(STANDARD_GROUPS)[i % 3]
        rel = random_instance(rng, group, shape="as-ramified")
        c = compare(rel)
        shapes[f"{rel.kind} e={c.oracle.e}"] += 1
        total += 1
        if not c.agree:
            bad.append((group, rel.degree, str(rel.b), c.mismatches))
    elapsed = time.perf_counter() - t0
    criterion.detail = f"{total} instances, {total - len(bad)} agree; " + ", ".join(
        f"{k}: {v}" for k, v in sorted(shapes.items()))
    assert total >= 50
    assert not bad, bad[:5]
    assert elapsed < 30


@pytest.mark.acceptance(4, "derivative values from series match the closed formulas")
def test_criterion_4_derivatives(criterion):
    rng = random.Random(44)
    bad = []
    kinds = Counter()
    for _ in range(100):
        rel = random_instance(rng)
        ext = describe_relation(rel)
        kinds[rel.kind] += 1
        # unscaled: differentiate the defining polynomial at its root
        j0 = 1 if ext.is_ramified else None
        if series_derivative_value(rel) != derivative_value(ext, (0,), j0).coords:
            bad.append(("unscaled", str(rel.b)))
        # scaled generator c·x^j
        vc = rng.choice(value_grid(rel.field.group, F(-2), F(2), 1))
        j = rng.randrange(1, rel.degree) if ext.is_ramified else 1
        jj = j if ext.is_ramified else None
        if series_derivative_value(rel, (vc,), j) != derivative_value(ext, (vc,), jj).coords:
            bad.append(("scaled", str(rel.b), vc, j))
    criterion.detail = f"100 instances ({dict(kinds)}), {len(bad)} mismatches"
    assert not bad, bad[:5]


@pytest.mark.acceptance(5, "DRvg by level scan equals DRvg by consecutive quotients")
def test_criterion_5_drvg_two_routes(criterion):
    rng = random.Random(55)
    bad = []
    failing = 0
    for _ in range(1000):
        G = random_group(rng, 4, allow_zero=True)
        a, b = check_DRvg(G), check_DRvg_quotients(G)
        failing += not a[0]
        if a != b:
            bad.append((G, a, b))
    criterion.detail = f"1000 groups, {failing} fail DRvg, {len(bad)} disagreements"
    assert not bad, bad[:5]


@pytest.mark.acceptance(6, "tower verdict is the conjunction of step verdicts and henselization-invariant")
def test_criterion_6_towers(criterion):
    rng = random.Random(66)
    zero = 0
    for _ in range(500):
        t = random_tower(rng)
        assert 1 <= len(t.steps) <= 5
        v = kahler_of_tower(t)
        steps = [True if isinstance(s, InertialStep) else kahler_of(s.ext).is_zero for s in t.steps]
        assert v.is_zero == all(steps)
        normalized, _ = henselize_normalize(t)
        assert kahler_of_tower(normalized).is_zero == v.is_zero
        zero += v.is_zero
    criterion.detail = f"500 towers, {zero} with Ω = 0"


@pytest.mark.acceptance(7, "violations yield nonzero witnesses; deeply ramified families are all zero")
def test_criterion_7_deep_ramification(criterion):
    rng = random.Random(77)
    t0 = time.perf_counter()
    violating, dr_fields = [], []
    while len(violating) < 200:
        f = random_field(rng)
        v = is_deeply_ramified(f)
        if v.value is True:
            dr_fields.append(f)
        elif any(x.tag != DEPENDENT_DEFECT for x in v.violations):
            violating.append((f, v))
    witnesses = 0
    for f, v in violating:
        for x in v.violations:
            assert not kahler_of(witness_extension(f, x)).is_zero, (f, x)
            witnesses += 1
    members = 0
    for f in dr_fields:
        for ext in deeply_ramified_family(rng, f, 200):
            assert kahler_of(ext).is_zero, (f, ext)
            members += 1
    elapsed = time.perf_counter() - t0
    criterion.detail = (f"200 violating fields, {witnesses} witnesses Nonzero; "
                        f"{len(dr_fields)} deeply ramified fields x 200 = {members} members Zero")
    assert dr_fields
    assert elapsed < 30


@pytest.mark.acceptance(8, "theta_m exponents for p in {2, 3, 5, 7}")
def test_criterion_8_theta_m(criterion):
    rows = 0
    for p in (2, 3, 5, 7):
        for m in range(1, p):
            k, ell, value = theta_m_generator(p, m)
            assert -ell * m == 1 - k * p
            assert value == F(1, p) == k + ell * F(-m, p)
            assert (ell == 1) == (m == p - 1)
            rows += 1
    criterion.detail = f"{rows} rows checked"
