"""Descriptors of unibranched Galois extensions of prime degree.

An extension ``L|K`` is described by its invariants rather than by field
elements: the kind of defining equation, ``(e, f, d)``, the value of the
chosen generator and residue data.  The classifiers downstream consume
exactly this signature.

Generator values, by case:

==================  ==========================================================
Artin-Schreier e=p  ``vθ`` (negative, not in vK)
Artin-Schreier f=p  ``vθ``: 0 for separable residue extensions, otherwise the
                    negative value of a generator whose scaled residue is
                    inseparable
Kummer, η a unit    ``vη`` (e-case; 0 or omitted for the f-case)
Kummer, 1-unit η    ``v(η-1)``; the e-case generator value is then
                    ``vξ = v(η-1) - vp/(p-1)``
==================  ==========================================================
"""

from __future__ import annotations

from dataclasses import dataclass, field, replace
from fractions import Fraction
from typing import Optional

from .ordered_groups import (
    AdjoinedGroup,
    GroupElement,
    OrderedGroup,
    adjoin,
    as_fraction,
    is_prime,
)

__all__ = [
    "ARTIN_SCHREIER",
    "KUMMER",
    "InconsistentWitnessError",
    "CaseMismatchError",
    "ResidueData",
    "DefectData",
    "PrimeExtension",
    "GeneratorCase",
    "validate",
    "normalize_generator",
    "classify_generator_case",
    "theta_m_generator",
    "derivative_value",
    "one_minus_zeta_value",
    "unibranched_bound_check",
]

ARTIN_SCHREIER = "artin-schreier"
KUMMER = "kummer"

UNIT = "unit"
ONE_UNIT = "one-unit"
NONE = "none"


class InconsistentWitnessError(ValueError):
    """The supplied invariants cannot describe a prime-degree extension."""

    def __init__(self, violations):
        self.violations = list(violations)
        super().__init__("; ".join(self.violations))


class CaseMismatchError(ValueError):
    """A formula was requested for an extension of the wrong shape."""


@dataclass(frozen=True)
class ResidueData:
    residue_char: int
    degree: int = 1
    separable: bool = True
    generated_by: str = NONE


@dataclass(frozen=True)
class DefectData:
    """Information on a defect extension.

    Either an explicit ``independent`` flag, or a distance cut
    ``center - {α ∈ p·vK : α > H}`` with ``H`` the convex subgroup starting at
    ``cut_level``.  The cut form certifies independence when the center is
    ``p/(p-1)·vp`` and ``H`` does not contain ``vp`` (center 0 and ``H`` proper
    in equal characteristic).
    """

    independent: Optional[bool] = None
    cut_level: Optional[int] = None
    center: Optional[GroupElement] = None


def _hull_elem(base: OrderedGroup, x) -> GroupElement | None:
    if x is None:
        return None
    return base.hull_element(x)


@dataclass(frozen=True)
class PrimeExtension:
    kind: str
    degree: int
    char_K: int
    base: OrderedGroup
    e: int
    f: int
    d: int
    residue: ResidueData
    generator_value: Optional[GroupElement] = None
    one_unit_generator: bool = False
    j: Optional[int] = None
    has_zeta: Optional[bool] = None
    vp: Optional[GroupElement] = None
    defect: Optional[DefectData] = None

    def __post_init__(self):
        object.__setattr__(self, "generator_value", _hull_elem(self.base, self.generator_value))
        object.__setattr__(self, "vp", _hull_elem(self.base, self.vp))
        if self.defect is not None and self.defect.center is not None:
            object.__setattr__(self, "defect", replace(
                self.defect, center=_hull_elem(self.base, self.defect.center)))
        if self.has_zeta is None and self.kind == KUMMER and self.degree == 2:
            object.__setattr__(self, "has_zeta", True)

    @property
    def residue_char(self) -> int:
        return self.residue.residue_char

    @property
    def mixed(self) -> bool:
        return self.char_K == 0 and self.residue_char > 0

    @property
    def zero(self) -> GroupElement:
        return self.base.hull().zero()

    @property
    def vq(self) -> GroupElement:
        """Value of the degree; 0 unless it equals the residue characteristic
        in mixed characteristic."""
        if self.mixed and self.degree == self.residue_char:
            return self.vp
        return self.zero

    @property
    def is_ramified(self) -> bool:
        return self.e == self.degree

    @property
    def is_inert(self) -> bool:
        return self.f == self.degree

    @property
    def is_defect(self) -> bool:
        return self.d == self.degree

    @property
    def kummer_case(self) -> str | None:
        if self.kind != KUMMER:
            return None
        return "ii" if self.one_unit_generator else "i"

    @property
    def delta(self) -> GroupElement | None:
        """Value of the generator whose class generates ``vL/vK``."""
        if not self.is_ramified or self.generator_value is None:
            return None
        if self.kind == KUMMER and self.one_unit_generator:
            if self.vp is None:
                return None
            return self.generator_value - self.vp / (self.degree - 1)
        return self.generator_value

    @property
    def value_data(self) -> AdjoinedGroup | None:
        delta = self.delta
        if delta is None:
            return None
        return adjoin(self.base, delta.coords, self.degree)

    @property
    def defect_independent(self) -> bool | None:
        dd = self.defect
        if dd is None:
            return None
        if dd.independent is not None:
            return dd.independent
        if dd.cut_level is None:
            return None
        n = self.base.rank
        if not 1 <= dd.cut_level <= n:
            return False
        if self.mixed:
            if self.vp is None or dd.center is None:
                return None
            expected = self.vp.scale(Fraction(self.degree, self.degree - 1))
            vp_level = self.vp.first_nonzero
            return dd.center == expected and dd.cut_level > vp_level
        center = dd.center if dd.center is not None else self.zero
        return center.is_zero


# ---------------------------------------------------------------------------
# validation


def validate(ext: PrimeExtension) -> list[str]:
    """Return the list of violated constraints (empty when consistent)."""
    out: list[str] = []
    n, p = ext.degree, ext.residue_char
    if not is_prime(n):
        out.append(f"degree {n} is not prime")
        return out
    if ext.kind not in (ARTIN_SCHREIER, KUMMER):
        out.append(f"unknown extension kind {ext.kind!r}")
        return out
    if ext.char_K not in (0, p) or (ext.char_K > 0 and not is_prime(ext.char_K)):
        out.append(f"char K = {ext.char_K} incompatible with residue characteristic {p}")
    if p < 0 or (p > 0 and not is_prime(p)):
        out.append(f"residue characteristic {p} is neither 0 nor prime")
    for name, x in (("e", ext.e), ("f", ext.f), ("d", ext.d)):
        if x not in (1, n):
            out.append(f"{name}={x} must be 1 or {n}")
    if ext.e * ext.f * ext.d != n:
        out.append(f"e*f*d = {ext.e * ext.f * ext.d} differs from the degree {n}")
    if ext.d > 1 and p != n:
        out.append("a defect extension needs degree equal to the residue characteristic")
    if ext.residue.degree != ext.f:
        out.append("residue degree differs from f")
    if ext.f > 1 and ext.residue.generated_by == NONE:
        out.append("a residue extension needs a generator tag")
    if ext.mixed:
        if ext.vp is None:
            out.append("mixed characteristic needs the value of p")
        elif not ext.vp > 0:
            out.append("vp must be positive")
        elif not ext.base.contains(ext.vp.coords):
            out.append("vp is not in the value group")
    if ext.kind == ARTIN_SCHREIER:
        if not (ext.char_K == n == p):
            out.append("Artin-Schreier extensions need char K = degree")
        if ext.one_unit_generator:
            out.append("1-unit generators belong to Kummer extensions")
    else:
        if ext.char_K == n:
            out.append("Kummer extensions of degree char K do not exist")
        if not ext.has_zeta:
            out.append(f"Kummer extension needs a primitive {n}-th root of unity in K")
        if ext.one_unit_generator and not (ext.mixed and n == p):
            out.append("1-unit generators need degree = residue characteristic in mixed characteristic")
    if ext.j is not None:
        if not ext.is_ramified:
            out.append("j is only defined for ramified extensions")
        elif not 1 <= ext.j <= n - 1:
            out.append(f"j={ext.j} outside 1..{n - 1}")
    if out:
        return out
    gv = ext.generator_value
    if ext.kind == KUMMER and ext.one_unit_generator:
        bound = ext.vp / (n - 1)
        if gv is None or not gv > 0:
            out.append("v(η-1) must be positive for a 1-unit generator")
        elif gv > bound:
            out.append("v(η-1) exceeds vp/(p-1), impossible for a Kummer generator")
    if ext.is_ramified:
        delta = ext.delta
        if delta is None:
            out.append("a ramified extension needs its generator value")
        else:
            if ext.base.contains(delta.coords):
                out.append("the generator value of a ramified extension must lie outside vK")
            if not ext.base.contains((n * delta).coords):
                out.append("n times the generator value must lie in vK")
            if ext.kind == ARTIN_SCHREIER and not delta < 0:
                out.append("an Artin-Schreier generator of a ramified extension has negative value")
            if ext.kind == KUMMER and ext.one_unit_generator and not gv < ext.vp / (n - 1):
                out.append("v(η-1) = vp/(p-1) does not give a ramified extension")
    elif ext.is_inert:
        if ext.kind == ARTIN_SCHREIER:
            if gv is not None and (gv > 0 or not ext.base.contains(gv.coords)):
                out.append("Artin-Schreier generator of an inert extension needs value <= 0 in vK")
            sep = gv is None or gv.is_zero
            if ext.residue.separable != sep:
                out.append("residue separability must match vθ = 0")
        elif n != p:
            if not ext.residue.separable:
                out.append("Kummer residue extensions of degree prime to p are separable")
        elif ext.one_unit_generator:
            if not ext.base.contains(gv.coords):
                out.append("v(η-1) must lie in vK for an inert Kummer extension")
            if ext.residue.separable != (gv == ext.vp / (n - 1)):
                out.append("residue separability must match v(η-1) = vp/(p-1)")
        elif ext.residue.separable:
            out.append("a unit Kummer generator of degree p gives an inseparable residue extension")
    return out


def normalize_generator(kind: str, degree: int, char_K: int, residue_char: int,
                        base: OrderedGroup, e: int, f: int, d: int | None = None,
                        generator_value=None, one_unit: bool = False, j: int | None = None,
                        has_zeta: bool | None = None, vp=None,
                        defect: DefectData | None = None) -> PrimeExtension:
    """Build a validated descriptor, deriving the residue data.

    Raises :class:`InconsistentWitnessError` listing all violations.
    """
    if d is None:
        d = degree // (e * f) if e * f and degree % (e * f) == 0 else 0
    gv = None if generator_value is None else base.hull_element(generator_value)
    vpe = None if vp is None else base.hull_element(vp)
    if f == degree:
        if kind == ARTIN_SCHREIER:
            residue = ResidueData(residue_char, f, gv is None or gv.is_zero, UNIT)
        elif degree != residue_char:
            residue = ResidueData(residue_char, f, True, UNIT)
        elif one_unit:
            sep = gv is not None and vpe is not None and gv == vpe / (degree - 1)
            residue = ResidueData(residue_char, f, sep, ONE_UNIT)
        else:
            residue = ResidueData(residue_char, f, False, UNIT)
    else:
        residue = ResidueData(residue_char, f if f in (1, degree) else f, True, NONE)
    ext = PrimeExtension(kind, degree, char_K, base, e, f, d, residue, gv, one_unit, j,
                         has_zeta, vpe, defect)
    problems = validate(ext)
    if problems:
        raise InconsistentWitnessError(problems)
    return ext


# ---------------------------------------------------------------------------
# generator cases


@dataclass(frozen=True)
class GeneratorCase:
    """Which description of ``O_L`` applies.

    ``union_form`` is True when ``O_L`` is the increasing union of the rings
    ``O_K[c·x^j]``; False when a single generator suffices.
    ``valid_js`` lists the exponents ``j`` for which ``{v(c x^j) > 0}`` is
    coinitial in the positive values.
    """

    tag: str
    j: Optional[int]
    union_form: bool
    valid_js: tuple = field(default=())


def classify_generator_case(ext: PrimeExtension) -> GeneratorCase:
    if ext.d != 1:
        raise CaseMismatchError("generator cases need a defectless extension")
    n = ext.degree
    if ext.is_inert:
        return GeneratorCase("DL1", None, False, ())
    if not ext.is_ramified:
        raise CaseMismatchError("e must equal the degree")
    base = ext.base
    delta = ext.delta
    if delta is None:
        raise CaseMismatchError("missing generator value")
    m = ext.value_data.jump_level
    level = base.levels[m]
    if level.is_discrete:
        a = delta.coords[m] * n / level.g
        a = int(a)
        j = pow(a % n, -1, n)
        valid = (j,)
    else:
        j = 1
        valid = tuple(range(1, n))
    if ext.j is not None and ext.j not in valid:
        raise CaseMismatchError(
            f"j={ext.j} does not give a coinitial value set; expected one of {list(valid)}")
    if ext.j is not None:
        j = ext.j
    if level.is_discrete and m == base.rank - 1:
        return GeneratorCase("DL2d", j, False, valid)
    if all(base.is_divisible_by(i) for i in range(2, n)):
        return GeneratorCase("DL2a", 1, True, valid)
    if all(L.is_dense for L in base.levels):
        return GeneratorCase("DL2b", 1, True, valid)
    if level.is_dense:
        return GeneratorCase("DL2c", j, True, valid)
    return GeneratorCase("DL2e", j, True, valid)


def theta_m_generator(p: int, m: int) -> tuple[int, int, Fraction]:
    """``(k, ℓ, value)`` with ``-ℓm = 1 - kp`` and ``v(π^k ϑ_m^ℓ) = 1/p``.

    Here ``ϑ_m`` is an Artin-Schreier root with ``vϑ_m = -m/p`` over a field
    with ``vπ = 1`` the least positive value.
    """
    if not is_prime(p):
        raise ValueError(f"{p} is not prime")
    if not 1 <= m <= p - 1:
        raise ValueError(f"m={m} outside 1..{p - 1}")
    ell = pow(-m % p, -1, p)
    k = (1 + ell * m) // p
    value = k + ell * Fraction(-m, p)
    return k, ell, value


# ---------------------------------------------------------------------------
# derivative values


def derivative_value(ext: PrimeExtension, vc=None, j: int | None = None) -> GroupElement:
    """Value of ``h'(x)`` for the minimal polynomial ``h`` of the generator.

    The generator is ``c·x^j`` (``x`` = θ, η or ξ per the case) for the
    Artin-Schreier e-case, Kummer e-cases and scaled Artin-Schreier
    generators; ``c̃(η-1)`` for the 1-unit Kummer f-case, where ``vc``
    defaults to ``-v(η-1)``.
    """
    n = ext.degree
    vc_e = None if vc is None else ext.base.hull_element(vc)
    zero = ext.zero
    if ext.is_defect:
        raise CaseMismatchError("no generator formula for defect extensions")
    if j is not None and not ext.is_ramified:
        raise CaseMismatchError("j only applies to ramified extensions")
    if ext.kind == ARTIN_SCHREIER:
        if ext.is_ramified:
            if j is None and vc_e is None:
                return zero
            c = vc_e if vc_e is not None else zero
            return (c + (((j or 1) - 1) * ext.delta)) * (n - 1)
        if vc_e is None:
            gv = ext.generator_value
            if gv is None or gv.is_zero:
                return zero
            vc_e = -gv
        return vc_e * (n - 1)
    # Kummer
    c = vc_e if vc_e is not None else zero
    if ext.one_unit_generator:
        if ext.is_ramified:
            xi = ext.delta
            return (c + ((j or 1) - 1) * xi) * (n - 1)
        if vc_e is None:
            c = -ext.generator_value
        return ext.vp + c * (n - 1)
    if ext.is_ramified:
        return ext.vq + (c + (j or 1) * ext.delta) * (n - 1)
    if n == ext.residue_char and ext.mixed:
        if vc_e is not None:
            raise CaseMismatchError("the unit Kummer f-case takes no scaling")
        return ext.vp
    # y = c·η with η of value generator_value (0 when unset)
    gv = ext.generator_value if ext.generator_value is not None else zero
    return ext.vq + (c + gv) * (n - 1)


def one_minus_zeta_value(n: int, vn) -> Fraction | GroupElement:
    """``v(1 - ζ_n) = vn/(n-1)`` for a primitive ``n``-th root of unity."""
    if not is_prime(n):
        raise ValueError(f"{n} is not prime")
    if isinstance(vn, GroupElement):
        if vn < 0:
            raise ValueError("vn must be nonnegative")
        return vn / (n - 1)
    vn = as_fraction(vn)
    if vn < 0:
        raise ValueError("vn must be nonnegative")
    return vn / (n - 1)


def unibranched_bound_check(ext: PrimeExtension, candidate) -> bool:
    """``v(η - c) <= vη + v(1 - ζ_q)`` for a Kummer generator η."""
    if ext.kind != KUMMER:
        raise CaseMismatchError("bound applies to Kummer extensions")
    cand = ext.base.hull_element(candidate)
    if ext.one_unit_generator or not ext.is_ramified:
        v_eta = ext.zero
        if not ext.one_unit_generator and ext.generator_value is not None:
            v_eta = ext.generator_value
    else:
        v_eta = ext.delta
    return cand <= v_eta + one_minus_zeta_value(ext.degree, ext.vq)
