"""Deeply ramified fields at descriptor level.

A field is summarized by its characteristic, residue characteristic, value
group, the value of ``p`` (mixed characteristic), residue perfection and two
assumptions that a finite descriptor cannot decide on its own: whether all
degree-``p`` defect extensions have independent defect, and an optional
explicit assertion about surjectivity of Frobenius on ``O/pO`` of the
completion.

The module reports violations of the value-group and residue conditions,
builds for each violation an explicit degree-``p`` extension whose module of
differentials is nonzero, and checks families of extensions over deeply
ramified fields for vanishing.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional, Union

from .extensions import (
    ARTIN_SCHREIER,
    KUMMER,
    DefectData,
    PrimeExtension,
    normalize_generator,
)
from .kahler import kahler_of
from .ordered_groups import (
    ConvexSubgroup,
    GroupElement,
    OrderedGroup,
    check_DRvg,
    convex_of,
    is_p_divisible,
    is_prime,
)

__all__ = [
    "UNDECIDED",
    "FieldDescriptor",
    "Violation",
    "DRVerdict",
    "GRReport",
    "vp_convex",
    "check_DRvr",
    "is_deeply_ramified",
    "witness_extension",
    "grthm_plus_report",
]

UNDECIDED = "undecided"

DISCRETE_COMPONENT = "discrete-component"
NOT_P_DIVISIBLE = "not-p-divisible-at-vp"
IMPERFECT_RESIDUE = "imperfect-residue"
DEPENDENT_DEFECT = "dependent-defect"


@dataclass(frozen=True)
class FieldDescriptor:
    char_K: int
    residue_char: int
    value_group: OrderedGroup
    vp: Optional[GroupElement] = None
    residue_perfect: bool = True
    contains_zeta_p: bool = True
    independent_defect_field: bool = True
    drvr_flag: Optional[bool] = None

    def __post_init__(self):
        p = self.residue_char
        if not is_prime(p):
            raise ValueError(f"residue characteristic {p} must be prime")
        if self.char_K not in (0, p):
            raise ValueError(f"char K = {self.char_K} incompatible with residue char {p}")
        if self.value_group.rank == 0:
            raise ValueError("trivial value group")
        if self.char_K == 0:
            if self.vp is None:
                raise ValueError("mixed characteristic needs the value of p")
            vp = self.value_group.element(
                self.vp.coords if isinstance(self.vp, GroupElement) else self.vp)
            if not vp > 0:
                raise ValueError("vp must be positive")
            if self.contains_zeta_p and not self.value_group.contains((vp / (p - 1)).coords):
                raise ValueError("with a p-th root of unity in K, vp/(p-1) lies in vK")
            object.__setattr__(self, "vp", vp)
        elif self.vp is not None:
            raise ValueError("vp is only meaningful in mixed characteristic")

    @property
    def mixed(self) -> bool:
        return self.char_K == 0


@dataclass(frozen=True)
class Violation:
    tag: str
    level: Optional[int] = None
    witness: Optional[GroupElement] = None

    def __str__(self) -> str:
        if self.tag == DISCRETE_COMPONENT:
            return f"discrete archimedean component at level {self.level}"
        if self.tag == NOT_P_DIVISIBLE:
            return f"(vK)_vp not p-divisible: {self.witness} has no p-th divisor"
        if self.tag == IMPERFECT_RESIDUE:
            return "residue field not perfect"
        return "dependent defect extensions exist"


@dataclass(frozen=True)
class DRVerdict:
    value: Union[bool, str]
    violations: tuple
    drvg: bool
    drvr: Union[bool, str]


def vp_convex(f: FieldDescriptor) -> ConvexSubgroup:
    """``(vK)_{vp}``: smallest convex subgroup containing vp, or vK itself in
    equal characteristic."""
    if f.mixed:
        return convex_of(f.vp)
    return f.value_group.convex(0)


def check_DRvr(f: FieldDescriptor) -> Union[bool, str]:
    criterion = (f.independent_defect_field and f.residue_perfect
                 and is_p_divisible(vp_convex(f), f.residue_char))
    if criterion:
        if f.drvr_flag is False:
            raise ValueError("drvr_flag=false contradicts the sufficient criterion")
        return True
    if f.drvr_flag is not None:
        return f.drvr_flag
    return UNDECIDED


def _violations(f: FieldDescriptor) -> list[Violation]:
    G = f.value_group
    p = f.residue_char
    out = []
    for i, L in enumerate(G.levels):
        if L.is_discrete:
            out.append(Violation(DISCRETE_COMPONENT, i))
    for i in range(vp_convex(f).start, G.rank):
        L = G.levels[i]
        if not L.is_divisible_by(p):
            out.append(Violation(NOT_P_DIVISIBLE, i, G.unit(i, -L.g)))
    if not f.residue_perfect:
        out.append(Violation(IMPERFECT_RESIDUE))
    if not f.independent_defect_field:
        out.append(Violation(DEPENDENT_DEFECT))
    return out


def is_deeply_ramified(f: FieldDescriptor) -> DRVerdict:
    violations = tuple(_violations(f))
    drvg, _ = check_DRvg(f.value_group)
    try:
        drvr = check_DRvr(f)
    except ValueError:
        drvr = True
    if violations or drvr is False:
        value: Union[bool, str] = False
    elif drvg and drvr is True:
        value = True
    else:
        value = UNDECIDED
    return DRVerdict(value, violations, drvg, drvr)


def witness_extension(f: FieldDescriptor, v: Violation) -> PrimeExtension:
    """A degree-p extension of ``f`` with nonvanishing differentials."""
    if v not in _violations(f):
        raise ValueError(f"violation does not hold: {v}")
    p = f.residue_char
    G = f.value_group
    if v.tag == DEPENDENT_DEFECT:
        kind = ARTIN_SCHREIER if not f.mixed else KUMMER
        return normalize_generator(kind, p, f.char_K, p, G, 1, 1, p, has_zeta=f.contains_zeta_p,
                                   vp=_vp(f), defect=DefectData(independent=False))
    if v.tag == IMPERFECT_RESIDUE:
        if not f.mixed:
            return normalize_generator(ARTIN_SCHREIER, p, p, p, G, 1, p,
                                       generator_value=G.unit(0, -G.levels[0].g).coords)
        _need_zeta(f)
        return normalize_generator(KUMMER, p, 0, p, G, 1, p, has_zeta=True, vp=_vp(f))
    if v.tag == DISCRETE_COMPONENT:
        va = G.unit(v.level, -G.levels[v.level].g)
    else:
        va = v.witness
    delta = (va / p).coords
    if not f.mixed:
        return normalize_generator(ARTIN_SCHREIER, p, p, p, G, p, 1, generator_value=delta)
    _need_zeta(f)
    return normalize_generator(KUMMER, p, 0, p, G, p, 1, generator_value=delta, has_zeta=True,
                               vp=_vp(f))


def _vp(f: FieldDescriptor):
    return None if f.vp is None else f.vp.coords


def _need_zeta(f: FieldDescriptor) -> None:
    if not f.contains_zeta_p:
        raise ValueError("Kummer witnesses need a primitive p-th root of unity in K")


@dataclass
class GRReport:
    field: FieldDescriptor
    verdict: DRVerdict
    status: str = "consistent"  # consistent | partial | inconsistent
    witnesses: list = field(default_factory=list)
    family_checked: int = 0
    problems: list = field(default_factory=list)


def grthm_plus_report(f: FieldDescriptor, family=()) -> GRReport:
    """Check both directions of the equivalence between deep ramification
    and vanishing differentials on a descriptor and a family over it."""
    verdict = is_deeply_ramified(f)
    report = GRReport(f, verdict)
    if verdict.value is True:
        for ext in family:
            desc = kahler_of(ext)
            report.family_checked += 1
            if not desc.is_zero:
                report.problems.append(f"nonzero differentials over a deeply ramified field: {ext}")
    elif verdict.value is False:
        if f.mixed and not f.contains_zeta_p:
            report.status = "partial"
        else:
            for v in verdict.violations:
                ext = witness_extension(f, v)
                desc = kahler_of(ext)
                report.witnesses.append((v, ext, desc))
                if desc.is_zero:
                    report.problems.append(f"witness for {v} has vanishing differentials")
    else:
        report.status = "partial"
    if report.problems:
        report.status = "inconsistent"
    return report
