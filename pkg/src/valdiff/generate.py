"""Seeded random descriptors: groups, prime extensions, fields, towers and
degree-p families over deeply ramified fields.

Every generator takes a :class:`random.Random` so batches are reproducible.
Extensions are drawn per case and validated; draws that the validator
rejects are retried.
"""

from __future__ import annotations

import random
from fractions import Fraction
from typing import Optional

from .deeply_ramified import FieldDescriptor
from .extensions import (
    ARTIN_SCHREIER,
    KUMMER,
    DefectData,
    InconsistentWitnessError,
    PrimeExtension,
    classify_generator_case,
    normalize_generator,
)
from .kahler import InertialStep, PrimeStep, TowerDescriptor
from .ordered_groups import GroupElement, LevelDescriptor, OrderedGroup

__all__ = [
    "SMALL_PRIMES",
    "random_level",
    "random_group",
    "random_element",
    "random_extension",
    "random_field",
    "random_tower",
    "deeply_ramified_family",
    "extended_group",
]

SMALL_PRIMES = (2, 3, 5, 7)


def random_level(rng: random.Random, allow_zero: bool = False) -> LevelDescriptor:
    kinds = ["cyclic", "localized", "rationals"] + (["zero"] if allow_zero else [])
    kind = rng.choice(kinds)
    g = Fraction(rng.randrange(1, 4), rng.randrange(1, 4))
    if kind == "cyclic":
        return LevelDescriptor.cyclic(g)
    if kind == "localized":
        primes = rng.sample(SMALL_PRIMES, rng.randrange(1, 3))
        return LevelDescriptor.localized(g, primes)
    if kind == "rationals":
        return LevelDescriptor.rationals()
    return LevelDescriptor.zero()


def random_group(rng: random.Random, max_rank: int = 4, allow_zero: bool = False) -> OrderedGroup:
    """A lex product of 1..max_rank levels (zero levels are dropped, so the
    rank may come out smaller when ``allow_zero`` is set)."""
    levels = [random_level(rng, allow_zero) for _ in range(rng.randrange(1, max_rank + 1))]
    G = OrderedGroup(tuple(levels))
    if G.rank == 0:
        return OrderedGroup.of(LevelDescriptor.cyclic(1))
    return G


def _level_value(rng: random.Random, L: LevelDescriptor, span: int = 3) -> Fraction:
    if L.kind == "rationals":
        return Fraction(rng.randrange(1, 4 * span), rng.randrange(1, 5))
    step = L.g
    if L.kind == "localized":
        s = rng.choice(sorted(L.primes))
        step = L.g / s ** rng.randrange(0, 3)
    return step * rng.randrange(1, span + 1)


def random_element(rng: random.Random, G: OrderedGroup, sign: int = 0,
                   level: Optional[int] = None) -> GroupElement:
    """A nonzero element supported on one level; ``sign`` forces the sign."""
    i = rng.randrange(G.rank) if level is None else level
    x = _level_value(rng, G.levels[i])
    s = sign or rng.choice((-1, 1))
    return G.unit(i, s * x)


def _non_divisible(rng: random.Random, G: OrderedGroup, n: int, sign: int,
                   levels=None) -> Optional[GroupElement]:
    """``γ ∈ G`` on a single level with ``γ/n ∉ G``, or None."""
    cands = [i for i in (levels if levels is not None else range(G.rank))
             if not G.levels[i].is_divisible_by(n)]
    if not cands:
        return None
    i = rng.choice(cands)
    L = G.levels[i]
    k = rng.randrange(1, 4)
    while k % n == 0:
        k += 1
    return G.unit(i, sign * k * L.g)


def extended_group(G: OrderedGroup, delta: GroupElement, n: int) -> Optional[OrderedGroup]:
    """``G + ℤδ`` as a lex product when δ sits on a single level, else None."""
    nz = [i for i, x in enumerate(delta.coords) if x]
    if len(nz) != 1:
        return None
    m = nz[0]
    levels = list(G.levels)
    levels[m] = levels[m].extend(delta.coords[m], n)
    return OrderedGroup(tuple(levels))


def _try(build):
    try:
        return build()
    except InconsistentWitnessError:
        return None


def _equal_char_extension(rng: random.Random, G: OrderedGroup, p: int, shape: str):
    if shape == "as-sep":
        return normalize_generator(ARTIN_SCHREIER, p, p, p, G, 1, p)
    if shape == "as-insep":
        return normalize_generator(ARTIN_SCHREIER, p, p, p, G, 1, p,
                                   generator_value=random_element(rng, G, -1).coords)
    if shape == "as-ram":
        gamma = _non_divisible(rng, G, p, -1)
        if gamma is None:
            return None
        ext = normalize_generator(ARTIN_SCHREIER, p, p, p, G, p, 1,
                                  generator_value=(gamma / p).coords)
        if rng.random() < 0.5:
            return ext
        j = rng.choice(classify_generator_case(ext).valid_js)
        return normalize_generator(ARTIN_SCHREIER, p, p, p, G, p, 1,
                                   generator_value=(gamma / p).coords, j=j)
    if shape == "defect":
        return normalize_generator(ARTIN_SCHREIER, p, p, p, G, 1, 1, p,
                                   defect=DefectData(independent=rng.random() < 0.5))
    return _kummer_prime_to_p(rng, G, p, p, shape)


def _kummer_prime_to_p(rng, G, p, char_K, shape, vp=None):
    qs = [q for q in SMALL_PRIMES if q != p and (p - 1) % q == 0]
    if not qs:
        return None
    q = rng.choice(qs)
    if shape == "kummer-inert":
        return normalize_generator(KUMMER, q, char_K, p, G, 1, q, has_zeta=True, vp=vp,
                                   generator_value=random_element(rng, G).coords)
    gamma = _non_divisible(rng, G, q, rng.choice((-1, 1)))
    if gamma is None:
        return None
    return normalize_generator(KUMMER, q, char_K, p, G, q, 1, generator_value=(gamma / q).coords,
                               has_zeta=True, vp=vp)


def _mixed_extension(rng: random.Random, G: OrderedGroup, p: int, vp: GroupElement, shape: str):
    bound = vp / (p - 1)
    if shape == "kummer-unit-inert":
        return normalize_generator(KUMMER, p, 0, p, G, 1, p, has_zeta=True, vp=vp.coords)
    if shape == "kummer-one-unit-inert":
        if rng.random() < 0.5:
            gv = bound
        else:
            gv = random_element(rng, G, 1, level=rng.randrange(vp.first_nonzero, G.rank))
            if not gv < bound:
                gv = bound
        return normalize_generator(KUMMER, p, 0, p, G, 1, p, generator_value=gv.coords,
                                   one_unit=True, has_zeta=True, vp=vp.coords)
    if shape == "kummer-ram":
        gamma = _non_divisible(rng, G, p, rng.choice((-1, 1)))
        if gamma is None:
            return None
        return normalize_generator(KUMMER, p, 0, p, G, p, 1, generator_value=(gamma / p).coords,
                                   has_zeta=True, vp=vp.coords)
    if shape == "kummer-one-unit-ram":
        gamma = _non_divisible(rng, G, p, -1, range(vp.first_nonzero, G.rank))
        if gamma is None:
            return None
        gv = bound + gamma / p
        if not gv > 0:
            return None
        return normalize_generator(KUMMER, p, 0, p, G, p, 1, generator_value=gv.coords,
                                   one_unit=True, has_zeta=True, vp=vp.coords)
    if shape == "defect":
        return normalize_generator(KUMMER, p, 0, p, G, 1, 1, p, has_zeta=True, vp=vp.coords,
                                   defect=DefectData(independent=rng.random() < 0.5))
    return _kummer_prime_to_p(rng, G, p, 0, shape, vp=vp.coords)


EQUAL_SHAPES = ("as-sep", "as-insep", "as-ram", "defect", "kummer-inert", "kummer-ram")
MIXED_SHAPES = ("kummer-unit-inert", "kummer-one-unit-inert", "kummer-ram",
                "kummer-one-unit-ram", "defect", "kummer-inert")


def random_vp(rng: random.Random, G: OrderedGroup, p: int) -> Optional[GroupElement]:
    """A positive ``vp`` with ``vp/(p-1) ∈ G``, as needed when ζ_p ∈ K."""
    for _ in range(10):
        level = rng.randrange(G.rank)
        x = _level_value(rng, G.levels[level]) * (p - 1)
        vp = G.unit(level, x)
        if G.contains((vp / (p - 1)).coords):
            return vp
    return None


def random_extension(rng: random.Random, G: Optional[OrderedGroup] = None,
                     p: Optional[int] = None, mixed: Optional[bool] = None,
                     vp: Optional[GroupElement] = None, shape: Optional[str] = None,
                     attempts: int = 50) -> PrimeExtension:
    """A validated prime-degree extension descriptor."""
    for _ in range(attempts):
        G_ = G if G is not None else random_group(rng, 3)
        p_ = p if p is not None else rng.choice(SMALL_PRIMES)
        mixed_ = mixed if mixed is not None else rng.random() < 0.5
        if mixed_:
            vp_ = vp if vp is not None else random_vp(rng, G_, p_)
            if vp_ is None:
                continue
            ext = _try(lambda: _mixed_extension(rng, G_, p_, vp_, shape or rng.choice(MIXED_SHAPES)))
        else:
            ext = _try(lambda: _equal_char_extension(rng, G_, p_, shape or rng.choice(EQUAL_SHAPES)))
        if ext is not None:
            return ext
    raise ValueError("no valid extension found for the requested data")


def random_field(rng: random.Random, max_rank: int = 3, p: Optional[int] = None,
                 mixed: Optional[bool] = None) -> FieldDescriptor:
    G = random_group(rng, max_rank)
    p = p if p is not None else rng.choice(SMALL_PRIMES)
    mixed = mixed if mixed is not None else rng.random() < 0.5
    vp = random_vp(rng, G, p) if mixed else None
    if mixed and vp is None:
        mixed = False
    return FieldDescriptor(
        0 if mixed else p, p, G, vp,
        residue_perfect=rng.random() < 0.7,
        contains_zeta_p=True,
        independent_defect_field=rng.random() < 0.8,
    )


def random_tower(rng: random.Random, max_len: int = 5) -> TowerDescriptor:
    """A tower whose prime steps sit over the value group of the previous
    step (ramified steps extend one level of the group)."""
    G = random_group(rng, 3)
    p = rng.choice(SMALL_PRIMES)
    mixed = rng.random() < 0.5
    vp = random_vp(rng, G, p) if mixed else None
    mixed = vp is not None
    steps = []
    length = rng.randrange(1, max_len + 1)
    if rng.random() < 0.3:
        steps.append(InertialStep(rng.randrange(2, 5)))
    while len(steps) < length:
        ext = random_extension(rng, G, p, mixed, vp)
        if ext.is_ramified:
            G2 = extended_group(G, ext.delta, ext.degree)
            if G2 is None or (mixed and not G2.contains((vp / (p - 1)).coords)):
                continue
            G = G2
            if vp is not None:
                vp = G.element(vp.coords)
        steps.append(PrimeStep(ext))
    return TowerDescriptor(tuple(steps))


def deeply_ramified_family(rng: random.Random, f: FieldDescriptor, size: int) -> list[PrimeExtension]:
    """Degree-p Galois extensions that can exist over a deeply ramified field:
    residue extensions are separable, defects independent, and ramification
    only occurs at levels outside ``(vK)_vp``."""
    p = f.residue_char
    G = f.value_group
    if f.mixed and not f.contains_zeta_p:
        raise ValueError("degree-p Galois extensions in mixed characteristic need ζ_p in K")
    out = []
    while len(out) < size:
        if not f.mixed:
            shape = rng.choice(("as-sep", "defect"))
            if shape == "as-sep":
                ext = normalize_generator(ARTIN_SCHREIER, p, p, p, G, 1, p)
            else:
                ext = normalize_generator(ARTIN_SCHREIER, p, p, p, G, 1, 1, p,
                                          defect=DefectData(independent=True))
            out.append(ext)
            continue
        vp = f.vp
        shape = rng.choice(("one-unit-sep", "defect", "ram-outside"))
        if shape == "one-unit-sep":
            ext = normalize_generator(KUMMER, p, 0, p, G, 1, p, generator_value=(vp / (p - 1)).coords,
                                      one_unit=True, has_zeta=True, vp=vp.coords)
        elif shape == "defect":
            ext = normalize_generator(KUMMER, p, 0, p, G, 1, 1, p, has_zeta=True, vp=vp.coords,
                                      defect=DefectData(independent=True))
        else:
            gamma = _non_divisible(rng, G, p, rng.choice((-1, 1)), range(vp.first_nonzero))
            if gamma is None:
                continue
            ext = normalize_generator(KUMMER, p, 0, p, G, p, 1, generator_value=(gamma / p).coords,
                                      has_zeta=True, vp=vp.coords)
        out.append(ext)
    return out
