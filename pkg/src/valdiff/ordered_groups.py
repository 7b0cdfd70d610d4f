"""Ordered abelian groups modelled as finite lexicographic products of
subgroups of the rationals.

Every group here is a tuple of *levels*, most significant first.  A level is
one of ``{0}``, ``g·ℤ``, ``g·ℤ[1/S]`` or ``ℚ``.  Elements are vectors of
``Fraction`` coordinates compared lexicographically.  The convex subgroups of
such a product are exactly its suffixes, and the archimedean component
attached to an element is the level of its first nonzero coordinate.

Besides plain groups the module provides

* :class:`AdjoinedGroup` -- ``Γ + ℤδ`` for a vector δ with ``qδ ∈ Γ``, the
  value group of a ramified prime-degree extension;
* :class:`IdealValueSet` -- the up-closure of ``(offset + Γ)^{>0} + shift``
  inside such an adjoined group, i.e. the value set of ideals of the form
  ``(c·x : c ∈ K, v(c·x) > 0)``.

All objects are immutable.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from functools import total_ordering
from typing import Iterable, Sequence, Union

__all__ = [
    "GroupError",
    "GroupMismatchError",
    "LevelDescriptor",
    "OrderedGroup",
    "GroupElement",
    "ConvexSubgroup",
    "AdjoinedGroup",
    "IdealValueSet",
    "IsolatedClass",
    "as_fraction",
    "is_prime",
    "prime_factors",
    "compare",
    "convex_of",
    "convex_plus_of",
    "arch_component",
    "is_p_divisible",
    "check_DRvg",
    "check_DRvg_quotients",
    "adjoin",
    "ideal_value_set",
    "intersects_convex",
    "exists_isolated_class",
]


class GroupError(ValueError):
    """Invalid group data or an operation outside its domain."""


class GroupMismatchError(GroupError):
    """Elements living in incompatible groups were combined."""


def as_fraction(x) -> Fraction:
    """Parse an int, Fraction or ``"p/q"`` string into a Fraction."""
    if isinstance(x, Fraction):
        return x
    if isinstance(x, bool):
        raise GroupError(f"not a rational number: {x!r}")
    if isinstance(x, int):
        return Fraction(x)
    if isinstance(x, str):
        try:
            return Fraction(x.strip())
        except (ValueError, ZeroDivisionError) as exc:
            raise GroupError(f"not a rational number: {x!r}") from exc
    raise GroupError(f"not a rational number: {x!r}")


def is_prime(n: int) -> bool:
    if not isinstance(n, int) or n < 2:
        return False
    if n < 4:
        return True
    if n % 2 == 0:
        return False
    return all(n % d for d in range(3, math.isqrt(n) + 1, 2))


def prime_factors(n: int) -> frozenset[int]:
    n = abs(n)
    out = set()
    d = 2
    while d * d <= n:
        while n % d == 0:
            out.add(d)
            n //= d
        d += 1
    if n > 1:
        out.add(n)
    return frozenset(out)


def _strip(n: int, primes: frozenset[int]) -> int:
    for p in primes:
        while n % p == 0:
            n //= p
    return n


# ---------------------------------------------------------------------------
# levels


_KINDS = ("zero", "cyclic", "localized", "rationals")


@dataclass(frozen=True)
class LevelDescriptor:
    """One archimedean level: ``{0}``, ``gℤ``, ``gℤ[1/S]`` or ``ℚ``.

    ``Localized`` generators are normalized so that neither numerator nor
    denominator of ``g`` carries a prime of ``S`` (``4·ℤ[1/2] = ℤ[1/2]``);
    equal subgroups therefore compare equal.
    """

    kind: str
    g: Fraction = Fraction(1)
    primes: frozenset = frozenset()

    def __post_init__(self):
        if self.kind not in _KINDS:
            raise GroupError(f"unknown level kind {self.kind!r}")
        g = as_fraction(self.g)
        primes = frozenset(self.primes)
        if self.kind in ("cyclic", "localized") and g <= 0:
            raise GroupError("level generator must be positive")
        if self.kind == "localized":
            if not primes:
                raise GroupError("localized level needs a nonempty prime set")
            bad = [s for s in primes if not is_prime(s)]
            if bad:
                raise GroupError(f"not prime: {bad}")
            g = Fraction(_strip(g.numerator, primes), _strip(g.denominator, primes))
        elif primes:
            raise GroupError(f"{self.kind} level takes no prime set")
        if self.kind in ("zero", "rationals"):
            g = Fraction(1)
        object.__setattr__(self, "g", g)
        object.__setattr__(self, "primes", primes)

    @classmethod
    def zero(cls) -> "LevelDescriptor":
        return cls("zero")

    @classmethod
    def cyclic(cls, g=1) -> "LevelDescriptor":
        return cls("cyclic", as_fraction(g))

    @classmethod
    def localized(cls, g, primes: Iterable[int]) -> "LevelDescriptor":
        return cls("localized", as_fraction(g), frozenset(primes))

    @classmethod
    def rationals(cls) -> "LevelDescriptor":
        return cls("rationals")

    @property
    def is_trivial(self) -> bool:
        return self.kind == "zero"

    @property
    def is_discrete(self) -> bool:
        return self.kind == "cyclic"

    @property
    def is_dense(self) -> bool:
        return self.kind in ("localized", "rationals")

    def contains(self, x) -> bool:
        x = as_fraction(x)
        if self.kind == "zero":
            return x == 0
        if self.kind == "rationals":
            return True
        r = x / self.g
        if self.kind == "cyclic":
            return r.denominator == 1
        return _strip(r.denominator, self.primes) == 1

    def is_divisible_by(self, n: int) -> bool:
        """Whether every element has an ``n``-th divisor inside the level."""
        if n == 1 or self.kind in ("zero", "rationals"):
            return True
        if self.kind == "cyclic":
            return False
        return prime_factors(n) <= self.primes

    def least_positive(self) -> Fraction | None:
        return self.g if self.kind == "cyclic" else None

    def has_in_open(self, a: Fraction, b: Fraction) -> bool:
        """Is there a level element strictly between ``a`` and ``b``?"""
        if a >= b:
            return False
        if self.kind == "zero":
            return a < 0 < b
        if self.is_dense:
            return True
        k = math.floor(a / self.g) + 1
        return k * self.g < b

    def coset_rep(self, x: Fraction) -> Fraction:
        """A positive representative of ``x + level`` lying in ``(0, g]``.

        For a cyclic level this is the least positive element of the coset.
        """
        if self.kind == "zero":
            return x
        r = x - self.g * math.floor(x / self.g)
        return r if r > 0 else self.g

    def extend(self, x: Fraction, q: int) -> "LevelDescriptor":
        """The level ``self + ℤx`` when ``x ∉ self`` and ``qx ∈ self``."""
        if self.kind == "cyclic":
            return LevelDescriptor.cyclic(self.g / q)
        if self.kind == "localized":
            return LevelDescriptor.localized(self.g / q, self.primes)
        if self.kind == "zero":
            return LevelDescriptor.cyclic(abs(x))
        return self

    def to_data(self) -> dict:
        d = {"kind": self.kind}
        if self.kind in ("cyclic", "localized"):
            d["g"] = str(self.g)
        if self.kind == "localized":
            d["primes"] = sorted(self.primes)
        return d

    def __str__(self) -> str:
        if self.kind == "zero":
            return "0"
        if self.kind == "rationals":
            return "Q"
        g = "" if self.g == 1 else f"({self.g})"
        if self.kind == "cyclic":
            return f"{g}Z"
        return f"{g}Z[1/{','.join(map(str, sorted(self.primes)))}]"


# ---------------------------------------------------------------------------
# groups and elements


def _coords(x, n: int) -> tuple:
    if isinstance(x, GroupElement):
        x = x.coords
    if isinstance(x, (int, str, Fraction)) and n == 1:
        x = (x,)
    t = tuple(as_fraction(c) for c in x)
    if len(t) != n:
        raise GroupMismatchError(f"expected {n} coordinates, got {len(t)}")
    return t


def _lex_cmp(a: Sequence[Fraction], b: Sequence[Fraction]) -> int:
    for x, y in zip(a, b):
        if x != y:
            return -1 if x < y else 1
    return 0


def _meets_interval(levels, lo, hi, lo_open, hi_open) -> bool:
    """Does the lex product of ``levels`` meet the interval from lo to hi?"""
    c = _lex_cmp(lo, hi)
    if c > 0 or (c == 0 and (lo_open or hi_open)):
        return False
    if not levels:
        return True
    L, a, b = levels[0], lo[0], hi[0]
    if a == b:
        return L.contains(a) and _meets_interval(levels[1:], lo[1:], hi[1:], lo_open, hi_open)
    if L.has_in_open(a, b):
        return True
    # tails are unbounded in both directions as soon as one level remains
    if L.contains(a) and (len(levels) > 1 or not lo_open):
        return True
    if L.contains(b) and (len(levels) > 1 or not hi_open):
        return True
    return False


class _Group:
    """Shared behaviour of :class:`OrderedGroup` and :class:`AdjoinedGroup`."""

    rank: int

    def contains(self, x) -> bool:  # pragma: no cover - abstract
        raise NotImplementedError

    def component(self, i: int) -> LevelDescriptor:  # pragma: no cover
        raise NotImplementedError

    @property
    def components(self) -> tuple:
        return tuple(self.component(i) for i in range(self.rank))

    def hull(self) -> "OrderedGroup":
        return OrderedGroup((LevelDescriptor.rationals(),) * self.rank)

    def element(self, coords) -> "GroupElement":
        t = _coords(coords, self.rank)
        if not self.contains(t):
            raise GroupError(f"{_fmt(t)} is not in {self}")
        return GroupElement(t, self)

    def zero(self) -> "GroupElement":
        return GroupElement((Fraction(0),) * self.rank, self)

    def unit(self, i: int, scale=None) -> "GroupElement":
        """``scale·e_i``; ``scale`` defaults to the level's generator."""
        L = self.component(i)
        s = L.g if scale is None else as_fraction(scale)
        c = [Fraction(0)] * self.rank
        c[i] = s
        return self.element(c)

    def hull_element(self, coords) -> "GroupElement":
        return GroupElement(_coords(coords, self.rank), self.hull())

    def is_divisible_by(self, n: int) -> bool:
        return all(self.component(i).is_divisible_by(n) for i in range(self.rank))

    def convex(self, start: int) -> "ConvexSubgroup":
        return ConvexSubgroup(self, start)


@dataclass(frozen=True)
class OrderedGroup(_Group):
    """Finite lex product of levels; Zero levels are dropped on construction."""

    levels: tuple

    def __post_init__(self):
        levels = tuple(self.levels)
        for L in levels:
            if not isinstance(L, LevelDescriptor):
                raise GroupError(f"not a level: {L!r}")
        object.__setattr__(self, "levels", tuple(L for L in levels if not L.is_trivial))

    @classmethod
    def of(cls, *levels: LevelDescriptor) -> "OrderedGroup":
        return cls(tuple(levels))

    @property
    def rank(self) -> int:
        return len(self.levels)

    def component(self, i: int) -> LevelDescriptor:
        return self.levels[i]

    def contains(self, x) -> bool:
        t = _coords(x, self.rank)
        return all(L.contains(c) for L, c in zip(self.levels, t))

    def meets_interval(self, lo, hi, lo_open=True, hi_open=False) -> bool:
        return _meets_interval(self.levels, _coords(lo, self.rank), _coords(hi, self.rank),
                               lo_open, hi_open)

    @property
    def is_hull(self) -> bool:
        return all(L.kind == "rationals" for L in self.levels)

    def __str__(self) -> str:
        if not self.levels:
            return "0"
        return " x_lex ".join(str(L) for L in self.levels)


def _fmt(t) -> str:
    return "(" + ", ".join(str(c) for c in t) + ")"


@total_ordering
@dataclass(frozen=True, eq=False)
class GroupElement:
    """A coordinate vector together with the group it was taken from."""

    coords: tuple
    group: _Group = field(repr=False)

    def _check(self, other) -> "GroupElement":
        if not isinstance(other, GroupElement):
            if other == 0:
                return self.group.zero()
            raise GroupMismatchError(f"cannot combine element with {other!r}")
        if len(other.coords) != len(self.coords):
            raise GroupMismatchError("elements of groups of different rank")
        return other

    def _join(self, other: "GroupElement") -> _Group:
        g, h = self.group, other.group
        if g == h:
            return g
        if isinstance(g, AdjoinedGroup) and g.base == h:
            return g
        if isinstance(h, AdjoinedGroup) and h.base == g:
            return h
        return g.hull()

    def __add__(self, other):
        other = self._check(other)
        return GroupElement(tuple(a + b for a, b in zip(self.coords, other.coords)),
                            self._join(other))

    __radd__ = __add__

    def __neg__(self):
        return GroupElement(tuple(-a for a in self.coords), self.group)

    def __sub__(self, other):
        return self + (-self._check(other))

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, n):
        if isinstance(n, int) and not isinstance(n, bool):
            return GroupElement(tuple(n * a for a in self.coords), self.group)
        if isinstance(n, Fraction):
            return self.scale(n)
        return NotImplemented

    __rmul__ = __mul__

    def scale(self, r) -> "GroupElement":
        """Rational multiple, living in the divisible hull."""
        r = as_fraction(r)
        if r.denominator == 1:
            return self * r.numerator
        return GroupElement(tuple(r * a for a in self.coords), self.group.hull())

    def __truediv__(self, n):
        return self.scale(Fraction(1) / as_fraction(n))

    def __eq__(self, other):
        if isinstance(other, GroupElement):
            return self.coords == other.coords
        if other == 0:
            return self.is_zero
        return NotImplemented

    def __hash__(self):
        return hash(self.coords)

    def __lt__(self, other):
        other = self._check(other)
        return _lex_cmp(self.coords, other.coords) < 0

    @property
    def is_zero(self) -> bool:
        return not any(self.coords)

    @property
    def first_nonzero(self) -> int | None:
        for i, c in enumerate(self.coords):
            if c:
                return i
        return None

    def in_group(self, group: _Group) -> bool:
        return group.contains(self.coords)

    def __str__(self) -> str:
        if len(self.coords) == 1:
            return str(self.coords[0])
        return _fmt(self.coords)

    def __repr__(self) -> str:
        return f"GroupElement{_fmt(self.coords)}"

    def to_data(self) -> list:
        return [str(c) for c in self.coords]


def compare(a: GroupElement, b: GroupElement) -> int:
    """-1, 0 or 1 according to the lexicographic order."""
    if not isinstance(a, GroupElement) or not isinstance(b, GroupElement):
        raise GroupMismatchError("compare expects two group elements")
    if a.group.hull() != b.group.hull():
        raise GroupMismatchError("elements of different groups")
    return _lex_cmp(a.coords, b.coords)


# ---------------------------------------------------------------------------
# convex subgroups


@dataclass(frozen=True)
class ConvexSubgroup:
    """The suffix ``{x : x_j = 0 for j < start}`` of ``group``."""

    group: _Group
    start: int

    def __post_init__(self):
        if not 0 <= self.start <= self.group.rank:
            raise GroupError(f"convex subgroup index {self.start} out of range")

    @property
    def is_trivial(self) -> bool:
        return self.start == self.group.rank

    @property
    def levels(self) -> tuple:
        return tuple(self.group.component(i) for i in range(self.start, self.group.rank))

    def contains(self, x) -> bool:
        t = _coords(x, self.group.rank)
        return not any(t[: self.start]) and self.group.contains(t)

    def __le__(self, other: "ConvexSubgroup") -> bool:
        return self.start >= other.start

    def __lt__(self, other: "ConvexSubgroup") -> bool:
        return self.start > other.start


def _nonzero_level(gamma: GroupElement) -> int:
    i = gamma.first_nonzero
    if i is None:
        raise GroupError("operation undefined for the zero element")
    return i


def convex_of(gamma: GroupElement) -> ConvexSubgroup:
    """Smallest convex subgroup containing γ."""
    return ConvexSubgroup(gamma.group, _nonzero_level(gamma))


def convex_plus_of(gamma: GroupElement) -> ConvexSubgroup:
    """Largest convex subgroup not containing γ."""
    return ConvexSubgroup(gamma.group, _nonzero_level(gamma) + 1)


def arch_component(gamma: GroupElement) -> LevelDescriptor:
    return gamma.group.component(_nonzero_level(gamma))


def is_p_divisible(group: Union[_Group, ConvexSubgroup], p: int) -> bool:
    if isinstance(group, ConvexSubgroup):
        return all(L.is_divisible_by(p) for L in group.levels)
    return group.is_divisible_by(p)


def check_DRvg(group: _Group) -> tuple[bool, int | None]:
    """No archimedean component is discrete; scans the levels.

    Returns ``(True, None)`` or ``(False, index of the first discrete level)``.
    """
    if group.rank == 0:
        raise GroupError("the trivial group has no archimedean components")
    for i in range(group.rank):
        if group.component(i).is_discrete:
            return False, i
    return True, None


def _least_positive_of_product(levels) -> tuple | None:
    """Least positive element of a lex product, or None if there is none."""
    if not levels or levels[-1].least_positive() is None:
        return None
    cand = (Fraction(0),) * (len(levels) - 1) + (levels[-1].least_positive(),)
    zero = (Fraction(0),) * len(levels)
    # nothing strictly between 0 and the candidate
    if _meets_interval(levels, zero, cand, True, True):
        return None
    return cand


def check_DRvg_quotients(group: _Group) -> tuple[bool, int | None]:
    """Second route: no quotient ``Γ₂/Γ₁`` of convex subgroups ``Γ₁ ⊊ Γ₂`` is ``ℤ``.

    A quotient of suffixes ``i < k`` is the lex product of levels ``i..k-1``;
    it is isomorphic to ℤ iff it is archimedean (a single level) and has a
    least positive element.  The witness is the upper index ``i`` of the
    offending pair.
    """
    if group.rank == 0:
        raise GroupError("the trivial group has no archimedean components")
    levels = group.components
    n = len(levels)
    for i in range(n):
        for k in range(i + 1, n + 1):
            quotient = levels[i:k]
            archimedean = len(quotient) == 1
            if archimedean and _least_positive_of_product(quotient) is not None:
                return False, i
    return True, None


# ---------------------------------------------------------------------------
# adjoining a root


@dataclass(frozen=True)
class AdjoinedGroup(_Group):
    """``Γ' = Γ + ℤδ`` where ``qδ ∈ Γ`` and ``q`` is prime."""

    base: OrderedGroup
    delta: tuple
    q: int

    def __post_init__(self):
        if not is_prime(self.q):
            raise GroupError(f"q={self.q} is not prime")
        d = _coords(self.delta, self.base.rank)
        object.__setattr__(self, "delta", d)
        if not self.base.contains(tuple(self.q * c for c in d)):
            raise GroupError(f"q*delta is not in the base group for delta={_fmt(d)}")

    @property
    def rank(self) -> int:
        return self.base.rank

    @property
    def delta_element(self) -> GroupElement:
        return GroupElement(self.delta, self)

    @property
    def index(self) -> int:
        return 1 if self.base.contains(self.delta) else self.q

    @property
    def jump_level(self) -> int | None:
        """First level at which δ leaves the base group (None if δ ∈ Γ)."""
        for i, (L, c) in enumerate(zip(self.base.levels, self.delta)):
            if not L.contains(c):
                return i
        return None

    def component(self, i: int) -> LevelDescriptor:
        L = self.base.levels[i]
        if i == self.jump_level:
            return L.extend(self.delta[i], self.q)
        return L

    def contains(self, x) -> bool:
        t = _coords(x, self.rank)
        return any(self.base.contains(tuple(a - k * d for a, d in zip(t, self.delta)))
                   for k in range(self.q))

    def coset_count(self) -> int:
        """Number of distinct classes among ``kδ + Γ`` for ``k = 0..q-1``."""
        reps: list[int] = []
        for k in range(self.q):
            if not any(self.base.contains(tuple((k - r) * d for d in self.delta)) for r in reps):
                reps.append(k)
        return len(reps)

    def __str__(self) -> str:
        return f"({self.base}) + Z{_fmt(self.delta)}"


def adjoin(group: OrderedGroup, delta, q: int) -> AdjoinedGroup:
    return AdjoinedGroup(group, _coords(delta, group.rank), q)


def _as_adjoined(group: _Group) -> AdjoinedGroup:
    if isinstance(group, AdjoinedGroup):
        return group
    return AdjoinedGroup(group, (Fraction(0),) * group.rank, 2)


# ---------------------------------------------------------------------------
# ideal value sets


@dataclass(frozen=True)
class IsolatedClass:
    """A positive element α of the generating coset with ``vI ∩ C⁺(α) = ∅``."""

    level: int
    alpha: GroupElement


@dataclass(frozen=True)
class IdealValueSet:
    """Up-closure in ``Γ'`` of ``{u + shift : u ∈ offset + Γ, u > 0}``.

    ``shift`` is ``0`` for ``I = (cη : vcη > 0)`` and ``-δ`` (or ``-vξ``) for
    ideals generated by ``cθ^{j-1}`` with ``vcθ^j > 0``.  ``shape`` is a free
    tag naming the ideal.
    """

    ambient: AdjoinedGroup
    offset: tuple
    shift: tuple = None
    shape: str = "(c x : v(c x) > 0)"

    def __post_init__(self):
        n = self.ambient.rank
        object.__setattr__(self, "offset", _coords(self.offset, n))
        s = (0,) * n if self.shift is None else self.shift
        s = _coords(s, n)
        if _lex_cmp(s, (Fraction(0),) * n) < 0:
            raise GroupError("the shift of an ideal value set must be >= 0")
        object.__setattr__(self, "shift", s)

    @property
    def base(self) -> OrderedGroup:
        return self.ambient.base

    @property
    def rank(self) -> int:
        return self.ambient.rank

    @property
    def is_empty(self) -> bool:
        return self.rank == 0

    def contains(self, x) -> bool:
        """Membership: ``x ∈ Γ'`` and ``x ≥ u + shift`` for some ``u > 0``."""
        t = _coords(x, self.rank)
        if not self.ambient.contains(t):
            return False
        # need γ ∈ Γ with -offset < γ <= x - shift - offset
        lo = tuple(-o for o in self.offset)
        hi = tuple(a - s - o for a, s, o in zip(t, self.shift, self.offset))
        return self.base.meets_interval(lo, hi, lo_open=True, hi_open=False)

    def deepest_level(self) -> int:
        """Largest level that can be the first nonzero level of ``u > 0``."""
        for i, (L, o) in enumerate(zip(self.base.levels, self.offset)):
            if not L.contains(o):
                return i
        return self.rank - 1

    def achievable_levels(self) -> range:
        if self.is_empty:
            return range(0)
        return range(self.deepest_level() + 1)

    def intersects(self, start: int) -> bool:
        """Does the value set meet the suffix starting at ``start``?"""
        n = self.rank
        if start >= n:
            return False
        if any(self.shift[:start]):
            return False
        return all(self.base.levels[j].contains(self.offset[j]) for j in range(start))

    def witness(self, level: int) -> GroupElement:
        """A positive coset element whose first nonzero coordinate is ``level``.

        The coordinate at ``level`` is the least positive element of the coset
        when that level is cyclic.
        """
        if level not in self.achievable_levels():
            raise GroupError(f"level {level} is not achievable")
        c = [Fraction(0)] * self.rank
        c[level] = self.base.levels[level].coset_rep(self.offset[level])
        for j in range(level + 1, self.rank):
            c[j] = self.offset[j]
        return GroupElement(tuple(c), self.ambient)

    def isolated_classes(self) -> list[IsolatedClass]:
        """All achievable levels whose next convex subgroup misses the set."""
        return [IsolatedClass(i, self.witness(i)) for i in self.achievable_levels()
                if not self.intersects(i + 1)]

    def power_quotient_is_zero(self, power: int, factor=None) -> bool:
        """Decide ``I = a·I^power`` directly from the infimum of the set.

        ``factor`` is ``va ≥ 0`` (defaults to 0).  The test compares the cut
        ``power·inf(P) + (power-1)·shift + va`` with ``inf(P)``, truncated at the
        deepest achievable level, where ``P`` is the positive part of the coset.
        """
        if self.is_empty:
            raise GroupError("empty ideal value set")
        n = self.rank
        va = (Fraction(0),) * n if factor is None else _coords(factor, n)
        m = self.deepest_level()
        d = tuple((power - 1) * s + a for s, a in zip(self.shift, va))[: m + 1]
        L = self.base.levels[m]
        zero = (Fraction(0),) * (m + 1)
        if L.is_discrete:
            mu = L.coset_rep(self.offset[m])
            bound = list(d)
            bound[m] += (power - 1) * mu
            return not _lex_cmp(zero, bound) < 0
        return not _lex_cmp(d, zero) > 0


def ideal_value_set(ambient: AdjoinedGroup, offset, shift=None,
                    shape: str = "(c x : v(c x) > 0)") -> IdealValueSet:
    return IdealValueSet(_as_adjoined(ambient), offset, shift, shape)


def intersects_convex(ideal: IdealValueSet, convex: ConvexSubgroup) -> bool:
    if convex.group.rank != ideal.rank:
        raise GroupMismatchError("convex subgroup of a different group")
    return ideal.intersects(convex.start)


def exists_isolated_class(ideal: IdealValueSet) -> IsolatedClass | None:
    """The deepest isolated class, or None.  See also ``isolated_classes``."""
    if ideal.is_empty:
        raise GroupError("empty ideal value set")
    found = ideal.isolated_classes()
    return found[-1] if found else None
