"""Worked examples as ready-made descriptors.

* :func:`sqrt_p_over_perfectoid` -- ``K(√p)`` over the p-adic field with all
  p-power roots of p adjoined (value group ``ℤ[1/p]``, ``vp = 1``).
* :func:`root_of_t_composite` -- ``K(t^{1/p})`` over a field with composite
  valuation, value group ``ℤ[1/2] ×lex (1/(p-1))ℤ`` and ``vp = (0, 1)``.
* :func:`laurent_field` -- ``F_p((t))`` with value group ``ℤ``.
"""

from __future__ import annotations

from fractions import Fraction

from .deeply_ramified import FieldDescriptor
from .extensions import KUMMER, PrimeExtension, normalize_generator
from .ordered_groups import LevelDescriptor, OrderedGroup


def perfectoid_group(p: int) -> OrderedGroup:
    return OrderedGroup.of(LevelDescriptor.localized(1, [p]))


def perfectoid_field(p: int) -> FieldDescriptor:
    # vp/(p-1) is not in ℤ[1/p] for p > 2, so ζ_p is not in K
    G = perfectoid_group(p)
    return FieldDescriptor(0, p, G, G.element((1,)), contains_zeta_p=(p == 2))


def sqrt_p_over_perfectoid(p: int) -> PrimeExtension:
    if p == 2:
        raise ValueError("the square root of p is a Kummer generator only for odd p")
    return normalize_generator(KUMMER, 2, 0, p, perfectoid_group(p), 2, 1,
                               generator_value=(Fraction(1, 2),), has_zeta=True, vp=(1,))


def composite_group(p: int) -> OrderedGroup:
    return OrderedGroup.of(LevelDescriptor.localized(1, [2]),
                           LevelDescriptor.cyclic(Fraction(1, p - 1)))


def composite_field(p: int) -> FieldDescriptor:
    G = composite_group(p)
    return FieldDescriptor(0, p, G, G.element((0, 1)))


def root_of_t_composite(p: int) -> PrimeExtension:
    if p == 2:
        raise ValueError("p must be odd")
    return normalize_generator(KUMMER, p, 0, p, composite_group(p), p, 1,
                               generator_value=(Fraction(1, p), 0), has_zeta=True, vp=(0, 1))


def laurent_field(p: int) -> FieldDescriptor:
    return FieldDescriptor(p, p, OrderedGroup.of(LevelDescriptor.cyclic(1)))
