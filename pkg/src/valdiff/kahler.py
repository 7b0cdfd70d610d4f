"""Kähler differentials ``Ω_{O_L|O_K}`` of prime-degree extensions and towers.

Each classified extension gets one of three answer shapes:

* :class:`Zero`;
* :class:`CyclicQuotient` -- ``O_L/(a)``, stored through ``va``;
* :class:`IdealQuotient` -- ``I/I^p`` or ``I/qI^q`` for an ideal ``I`` given by
  its :class:`~valdiff.ordered_groups.IdealValueSet`.

Every descriptor carries the dispatch ``case`` letter, a human readable
``reason`` and ``theorem``, a short name of the result that applies.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Optional, Union

from .extensions import (
    ARTIN_SCHREIER,
    KUMMER,
    CaseMismatchError,
    InconsistentWitnessError,
    PrimeExtension,
    classify_generator_case,
    derivative_value,
    validate,
)
from .ordered_groups import GroupElement, IdealValueSet, convex_of, ideal_value_set

__all__ = [
    "MissingWitnessError",
    "Zero",
    "CyclicQuotient",
    "IdealQuotient",
    "KahlerDescriptor",
    "InertialStep",
    "PrimeStep",
    "TowerDescriptor",
    "TowerVerdict",
    "kahler_of",
    "kahler_of_tower",
    "henselize_normalize",
]


class MissingWitnessError(ValueError):
    """The descriptor lacks data needed to decide its case."""


@dataclass(frozen=True)
class Zero:
    case: str
    reason: str
    theorem: str

    is_zero = True
    shape = "zero"


@dataclass(frozen=True)
class CyclicQuotient:
    """``O_L/(a)`` with ``va = annihilator``; zero iff ``va = 0``."""

    annihilator: GroupElement
    form: str
    case: str
    reason: str
    theorem: str

    shape = "cyclic"

    @property
    def is_zero(self) -> bool:
        return self.annihilator.is_zero


@dataclass(frozen=True)
class IdealQuotient:
    """``I/I^p`` or ``I/qI^q``.  ``ideal`` is None for defect extensions
    without cut data."""

    ideal: Optional[IdealValueSet]
    form: str
    is_zero: bool
    case: str
    reason: str
    theorem: str
    factor: Optional[GroupElement] = None

    shape = "ideal"


KahlerDescriptor = Union[Zero, CyclicQuotient, IdealQuotient]


def _checked(ext: PrimeExtension) -> None:
    problems = validate(ext)
    if problems:
        raise InconsistentWitnessError(problems)


def _ramified_kummer_i(ext: PrimeExtension) -> IdealQuotient:
    q = ext.degree
    gc = classify_generator_case(ext)
    amb = ext.value_data
    delta = ext.delta
    ideal = ideal_value_set(amb, (gc.j * delta).coords, shape="(c eta^j : v(c eta^j) > 0)")
    vq = ext.vq
    vq_name = "vp" if ext.mixed and q == ext.residue_char else "vq"
    # clause 1: the value set misses the convex subgroup generated by vq
    if vq.is_zero:
        clause1 = True
        why1 = f"{vq_name} = 0"
    else:
        clause1 = not ideal.intersects(convex_of(vq).start)
        why1 = f"vI ∩ C({vq_name}) = ∅" if clause1 else f"vI meets C({vq_name})"
    # clause 2: every isolated class sits over a non-discrete component
    isolated = ideal.isolated_classes()
    discrete = [c.level for c in isolated if ext.base.levels[c.level].is_discrete]
    clause2 = not discrete
    if clause2:
        why2 = "isolated classes dense"
    else:
        why2 = f"isolated class over discrete level {discrete[0]}"
    is_zero = clause1 and clause2
    direct = ideal.power_quotient_is_zero(q, vq.coords)
    if direct != is_zero:  # pragma: no cover - two derivations must agree
        raise AssertionError(f"inconsistent verdicts for {ext}")
    if is_zero:
        reason = f"{why1} and {why2}"
    else:
        reason = why1 if not clause1 else why2
    form = "I/qI^q" if not vq.is_zero else "I/I^q"
    return IdealQuotient(ideal, form, is_zero, "e", reason, "kummer-ramified", vq)


def kahler_of(ext: PrimeExtension) -> KahlerDescriptor:
    """Describe ``Ω_{O_L|O_K}`` for a validated prime-degree extension."""
    _checked(ext)
    n = ext.degree
    if ext.is_defect:
        indep = ext.defect_independent
        if indep is None:
            raise MissingWitnessError("defect extension without independence data")
        if indep:
            return Zero("g", "independent defect", "defect-independence")
        return IdealQuotient(None, "I/I^p", False, "g", "dependent defect",
                             "defect-independence")
    if ext.kind == KUMMER and ext.is_inert and n == ext.residue_char and ext.mixed:
        ann = derivative_value(ext)
        if ext.one_unit_generator:
            reason = ("separable residue extension" if ann.is_zero
                      else "inseparable residue extension from a 1-unit")
            return CyclicQuotient(ann, "p c^(p-1)", "d", reason, "kummer-inert")
        return CyclicQuotient(ann, "p", "d", "inseparable residue extension from a unit",
                              "kummer-inert")
    if ext.is_inert:
        if ext.residue.separable:
            return Zero("a", "separable residue extension", "separable-residue")
        if ext.kind != ARTIN_SCHREIER:  # pragma: no cover - excluded by validate
            raise CaseMismatchError("inseparable residue extension of unexpected kind")
        ann = derivative_value(ext)
        return CyclicQuotient(ann, "c^(p-1)", "b", "inseparable residue extension",
                              "artin-schreier-inert")
    # ramified
    if ext.kind == ARTIN_SCHREIER:
        gc = classify_generator_case(ext)
        delta = ext.delta
        ideal = ideal_value_set(ext.value_data, (gc.j * delta).coords, (-delta).coords,
                                shape="(c theta^(j-1) : v(c theta^j) > 0)")
        if ideal.power_quotient_is_zero(n):  # pragma: no cover - never happens
            raise AssertionError(f"I = I^p for {ext}")
        return IdealQuotient(ideal, "I/I^p", False, "c", "ramified Artin-Schreier extension",
                             "artin-schreier-ramified")
    if ext.one_unit_generator:
        gc = classify_generator_case(ext)
        xi = ext.delta
        ideal = ideal_value_set(ext.value_data, (gc.j * xi).coords, (-xi).coords,
                                shape="(c xi^(j-1) : v(c xi^j) > 0)")
        if ideal.power_quotient_is_zero(n):  # pragma: no cover
            raise AssertionError(f"I = I^p for {ext}")
        return IdealQuotient(ideal, "I/I^p", False, "f", "ramified Kummer extension from a 1-unit",
                             "kummer-ramified-one-unit")
    return _ramified_kummer_i(ext)


# ---------------------------------------------------------------------------
# towers


@dataclass(frozen=True)
class InertialStep:
    """Passage to (part of) the inertia field: separable residue extension
    of the given degree, unchanged value group."""

    degree: int
    separable: bool = True


@dataclass(frozen=True)
class PrimeStep:
    ext: PrimeExtension


@dataclass(frozen=True)
class TowerDescriptor:
    steps: tuple

    def __post_init__(self):
        object.__setattr__(self, "steps", tuple(self.steps))


@dataclass(frozen=True)
class TowerVerdict:
    is_zero: bool
    verdicts: tuple
    first_nonzero: Optional[int] = None  # 1-based step index


def _check_tower(t: TowerDescriptor) -> None:
    if not t.steps:
        raise ValueError("empty tower")
    for i, s in enumerate(t.steps):
        if isinstance(s, InertialStep):
            if i != 0:
                raise ValueError(f"step {i + 1}: inertial steps may only start the tower")
            if s.degree < 1 or not s.separable:
                raise ValueError(f"step {i + 1}: inertial step needs separable residue data")
        elif not isinstance(s, PrimeStep):
            raise ValueError(f"step {i + 1}: unknown step {s!r}")


def kahler_of_tower(t: TowerDescriptor) -> TowerVerdict:
    """Ω of the top over the bottom vanishes iff it vanishes at every step."""
    _check_tower(t)
    verdicts = []
    for s in t.steps:
        if isinstance(s, InertialStep):
            verdicts.append(Zero("a", "inertial step", "separable-residue"))
        else:
            verdicts.append(kahler_of(s.ext))
    first = next((i + 1 for i, v in enumerate(verdicts) if not v.is_zero), None)
    return TowerVerdict(first is None, tuple(verdicts), first)


NORMALIZATION_NOTE = ("henselization is immediate: value group and residue field unchanged, "
                      "so the descriptor and every verdict are preserved")


def henselize_normalize(x):
    """Return ``(x, note)``; the invariant signature is henselization-stable."""
    return x, NORMALIZATION_NOTE
