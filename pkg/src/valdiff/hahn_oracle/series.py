"""Finite-support generalized power series ``Σ a_γ t^γ`` with precision.

A series is a finite map from exponent vectors (tuples of Fractions, compared
lexicographically) to nonzero coefficients.  ``prec`` is either None (the
series is exact) or an exponent bound: only the terms below ``prec`` are
known, everything at or above it is unknown.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Optional

from ..ordered_groups import OrderedGroup, as_fraction


class PrecisionError(ArithmeticError):
    """The requested information lies beyond the known part of a series."""


class ZeroValuationError(ArithmeticError):
    """Valuation of the exact zero series."""


def _exp(e, rank: int) -> tuple:
    if isinstance(e, (int, str, Fraction)):
        e = (e,)
    t = tuple(as_fraction(x) for x in e)
    if len(t) != rank:
        raise ValueError(f"exponent {e!r} does not have {rank} coordinates")
    return t


def _add_exp(a: tuple, b: tuple) -> tuple:
    return tuple(x + y for x, y in zip(a, b))


def _min_prec(a, b):
    if a is None:
        return b
    if b is None:
        return a
    return min(a, b)


@dataclass(frozen=True)
class HahnSeries:
    terms: tuple  # sorted ((exponent, coeff), ...)
    ring: object
    group: OrderedGroup
    prec: Optional[tuple] = None

    # -- construction -------------------------------------------------------

    @classmethod
    def from_dict(cls, d: dict, ring, group: OrderedGroup, prec=None) -> "HahnSeries":
        rank = group.rank
        clean = {}
        for e, c in d.items():
            e = _exp(e, rank)
            if prec is not None and e >= prec:
                continue
            if not ring.is_zero(c):
                clean[e] = c
        return cls(tuple(sorted(clean.items())), ring, group, prec)

    @classmethod
    def zero(cls, ring, group, prec=None) -> "HahnSeries":
        return cls((), ring, group, prec)

    @classmethod
    def monomial(cls, exponent, ring, group, coeff=None) -> "HahnSeries":
        c = ring.one if coeff is None else coeff
        return cls.from_dict({exponent: c}, ring, group)

    @classmethod
    def constant(cls, c, ring, group) -> "HahnSeries":
        return cls.from_dict({(0,) * group.rank: c}, ring, group)

    def _like(self, d: dict, prec) -> "HahnSeries":
        return HahnSeries.from_dict(d, self.ring, self.group,
                                    None if prec is None else _exp(prec, self.group.rank))

    def as_dict(self) -> dict:
        return dict(self.terms)

    # -- queries ------------------------------------------------------------

    @property
    def is_exact(self) -> bool:
        return self.prec is None

    def is_zero(self) -> bool:
        """True only for the exact zero series."""
        return not self.terms and self.prec is None

    def valuation(self) -> tuple:
        if self.terms:
            return self.terms[0][0]
        if self.prec is None:
            raise ZeroValuationError("valuation of zero")
        raise PrecisionError(f"all known terms vanish below {self.prec}")

    def leading(self) -> tuple:
        """``(exponent, coefficient)`` of the lowest known term."""
        self.valuation()
        return self.terms[0]

    def residue(self):
        """Coefficient of ``t^0``; requires nonnegative valuation."""
        zero = (Fraction(0),) * self.group.rank
        if self.prec is not None and self.prec <= zero:
            raise PrecisionError("constant term unknown")
        if self.terms and self.terms[0][0] < zero:
            raise ValueError("series of negative valuation has no residue")
        return self.as_dict().get(zero, self.ring.zero)

    def part(self, lo=None, hi=None) -> "HahnSeries":
        """Terms with ``lo <= exponent < hi`` (exact unless the part reaches prec)."""
        d = {e: c for e, c in self.terms
             if (lo is None or e >= lo) and (hi is None or e < hi)}
        prec = self.prec if hi is None or (self.prec is not None and self.prec <= hi) else None
        return self._like(d, prec)

    def in_base(self) -> bool:
        """All known terms have exponents in the group and base coefficients."""
        return all(self.group.contains(e) and self.ring.in_base(c) for e, c in self.terms)

    # -- arithmetic ---------------------------------------------------------

    def _check(self, other: "HahnSeries") -> None:
        if not isinstance(other, HahnSeries):
            raise TypeError(f"cannot combine series with {other!r}")
        if other.group.rank != self.group.rank or other.ring != self.ring:
            raise ValueError("series over different rings or groups")

    def __add__(self, other: "HahnSeries") -> "HahnSeries":
        self._check(other)
        d = self.as_dict()
        for e, c in other.terms:
            d[e] = self.ring.add(d[e], c) if e in d else c
        return self._like(d, _min_prec(self.prec, other.prec))

    def __neg__(self) -> "HahnSeries":
        return self._like({e: self.ring.neg(c) for e, c in self.terms}, self.prec)

    def __sub__(self, other: "HahnSeries") -> "HahnSeries":
        return self + (-other)

    def __mul__(self, other: "HahnSeries") -> "HahnSeries":
        self._check(other)
        prec = None
        for a, b in ((self, other), (other, self)):
            if a.prec is not None:
                if b.terms:
                    bound = _add_exp(a.prec, b.terms[0][0])
                elif b.prec is not None:
                    bound = _add_exp(a.prec, b.prec)
                else:
                    continue  # b is exactly zero
                prec = _min_prec(prec, bound)
        if self.is_zero() or other.is_zero():
            return HahnSeries.zero(self.ring, self.group)
        d: dict = {}
        R = self.ring
        for e1, c1 in self.terms:
            for e2, c2 in other.terms:
                e = _add_exp(e1, e2)
                if prec is not None and e >= prec:
                    break
                d[e] = R.add(d[e], R.mul(c1, c2)) if e in d else R.mul(c1, c2)
        return self._like(d, prec)

    def scale(self, c) -> "HahnSeries":
        return self._like({e: self.ring.mul(c, a) for e, a in self.terms}, self.prec)

    def shift(self, exponent) -> "HahnSeries":
        """Multiply by ``t^exponent``."""
        s = _exp(exponent, self.group.rank)
        prec = None if self.prec is None else _add_exp(self.prec, s)
        return self._like({_add_exp(e, s): c for e, c in self.terms}, prec)

    def __pow__(self, n: int) -> "HahnSeries":
        if n < 0:
            raise ValueError("negative powers are not supported")
        result = HahnSeries.constant(self.ring.one, self.ring, self.group)
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def frobenius(self, s: int = 1) -> "HahnSeries":
        """Apply ``x ↦ x^(p^s)`` (s may be negative for p-power roots)."""
        R, p = self.ring, self.ring.p
        out = self
        for _ in range(abs(s)):
            if s > 0:
                f = lambda e, c: (tuple(p * x for x in e), R.frob(c))
                prec = None if out.prec is None else tuple(p * x for x in out.prec)
            else:
                f = lambda e, c: (tuple(x / p for x in e), R.frob_inv(c))
                prec = None if out.prec is None else tuple(x / p for x in out.prec)
            out = out._like(dict(f(e, c) for e, c in out.terms), prec)
        return out

    def truncate(self, prec) -> "HahnSeries":
        prec = _exp(prec, self.group.rank)
        return self._like(self.as_dict(), _min_prec(self.prec, prec))

    def __str__(self) -> str:
        def ex(e):
            return str(e[0]) if len(e) == 1 else "(" + ",".join(map(str, e)) + ")"
        parts = [f"{self.ring.fmt(c)}*t^{ex(e)}" for e, c in self.terms]
        if self.prec is not None:
            parts.append(f"O(t^{ex(self.prec)})")
        return " + ".join(parts) or "0"


@dataclass(frozen=True)
class Polynomial:
    """Univariate polynomial with series coefficients, constant term first."""

    coeffs: tuple

    def derivative(self) -> "Polynomial":
        out = []
        for i, c in enumerate(self.coeffs[1:], start=1):
            out.append(c.scale(c.ring.from_int(i)))
        return Polynomial(tuple(out))

    def __call__(self, x: HahnSeries) -> HahnSeries:
        acc = None
        for c in reversed(self.coeffs):
            acc = c if acc is None else acc * x + c
        return acc
