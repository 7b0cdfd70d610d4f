"""Roots of Artin-Schreier and Kummer equations as series, elements of the
generated extension written in a power basis, and best approximation.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Sequence

from ..ordered_groups import OrderedGroup
from .coefficients import CoefficientError, find_root, ring_pow
from .series import HahnSeries, Polynomial, PrecisionError

__all__ = [
    "OracleScopeError",
    "BaseField",
    "artin_schreier_root",
    "kummer_root",
    "primitive_root_of_unity",
    "ExtElement",
    "ext_valuation",
    "Approximation",
    "best_approx",
    "greedy_approx",
]


class OracleScopeError(ValueError):
    """The instance lies outside what the finite-support oracle can decide."""


@dataclass(frozen=True)
class BaseField:
    """``k((t^Γ))`` with ``k`` the base subring of ``ring``."""

    p: int
    group: OrderedGroup
    ring: object

    @property
    def zero_exp(self) -> tuple:
        return (Fraction(0),) * self.group.rank

    def series(self, d: dict, prec=None) -> HahnSeries:
        return HahnSeries.from_dict(d, self.ring, self.group, prec)

    def monomial(self, exponent, coeff=None) -> HahnSeries:
        return HahnSeries.monomial(exponent, self.ring, self.group, coeff)

    def const(self, c) -> HahnSeries:
        return HahnSeries.constant(c, self.ring, self.group)

    def const_int(self, n: int) -> HahnSeries:
        return self.const(self.ring.from_int(n))

    def zero(self) -> HahnSeries:
        return HahnSeries.zero(self.ring, self.group)

    def in_K(self, s: HahnSeries) -> bool:
        return s.in_base()


def _scaled(e: tuple, r) -> tuple:
    return tuple(r * x for x in e)


def artin_schreier_root(b: HahnSeries, terms: int = 4) -> HahnSeries:
    """A root θ of ``θ^p - θ = b`` known up to a precision bound.

    Negative part: ``Σ_{k=1}^{terms} b_-^{p^-k}``, exact below
    ``v(b_-)/p^(terms+1)``.  When ``b`` has no negative part the constant
    term is a brute-force root in the coefficient ring and the positive part
    is ``-Σ_{k=0}^{terms} b_+^{p^k}``.
    """
    R, p = b.ring, b.ring.p
    zero = (Fraction(0),) * b.group.rank
    neg = b.part(hi=zero)
    if neg.terms:
        theta = HahnSeries.zero(R, b.group)
        for k in range(1, terms + 1):
            theta = theta + neg.frobenius(-k)
        return theta.truncate(_scaled(neg.terms[0][0], Fraction(1, p ** (terms + 1))))
    b0 = b.as_dict().get(zero, R.zero)
    try:
        t0 = find_root(R, lambda x: R.sub(R.sub(ring_pow(R, x, p), x), b0))
    except CoefficientError:
        t0 = None
    if t0 is None:
        if R.is_zero(b0):
            t0 = R.zero
        else:
            raise OracleScopeError("coefficient ring contains no Artin-Schreier root of the constant term")
    pos = HahnSeries.from_dict({e: c for e, c in b.terms if e > zero}, R, b.group)
    theta = HahnSeries.constant(t0, R, b.group)
    if pos.terms:
        acc = HahnSeries.zero(R, b.group)
        for k in range(terms + 1):
            acc = acc + pos.frobenius(k)
        theta = (theta - acc).truncate(_scaled(pos.terms[0][0], p ** (terms + 1)))
    return theta


def kummer_root(q: int, b: HahnSeries, terms: int = 3) -> HahnSeries:
    """A root of ``η^q = b`` for ``q`` prime to ``p``.

    Writes ``b = a t^γ (1 + m)`` and uses ``(1 + m)^s`` with
    ``s ≡ 1/q (mod p^terms)``, exact below ``γ/q + p^terms·v(m)``.
    """
    R, p = b.ring, b.ring.p
    if q % p == 0:
        raise OracleScopeError("Kummer roots of degree p do not exist in characteristic p")
    gamma, a = b.leading()
    r = find_root(R, lambda x: R.sub(ring_pow(R, x, q), a))
    if r is None:
        raise OracleScopeError("coefficient ring contains no q-th root of the leading coefficient")
    unit = b.shift(_scaled(gamma, -1)).scale(R.inv(a))
    one = HahnSeries.constant(R.one, R, b.group)
    m = unit - one
    lead = HahnSeries.monomial(_scaled(gamma, Fraction(1, q)), R, b.group, r)
    if not m.terms:
        return lead if m.is_exact else lead.truncate(_add(lead.terms[0][0], m.prec))
    bound = _scaled(m.terms[0][0], p ** terms)
    s = pow(q, -1, p ** terms)
    power = one
    base = m.truncate(bound) + one
    while s:
        if s & 1:
            power = (power * base).truncate(bound)
        base = (base * base).truncate(bound)
        s >>= 1
    return lead * power


def _add(a, b):
    return tuple(x + y for x, y in zip(a, b))


def primitive_root_of_unity(ring, q: int):
    """A primitive ``q``-th root of unity in the base subring."""
    for x in ring.elements():
        if not ring.in_base(x) or ring.is_zero(x):
            continue
        if ring_pow(ring, x, q) == ring.one and all(
                ring_pow(ring, x, k) != ring.one for k in range(1, q)):
            return x
    raise OracleScopeError(f"no primitive {q}-th root of unity in the residue field")


# ---------------------------------------------------------------------------
# power basis elements


@dataclass(frozen=True)
class ExtElement:
    """``Σ c_i x^i`` for a generator ``x`` with ``x^n = -Σ a_i x^i``.

    ``relation`` holds ``a_0..a_{n-1}`` (exact series over K), ``gen`` the
    series of ``x`` and ``basis_value`` the value of ``x`` when the powers of
    ``x`` form a valuation basis (the residue case has ``v(x) = 0``).
    """

    coeffs: tuple
    relation: tuple
    gen: HahnSeries
    basis_value: tuple

    @property
    def degree(self) -> int:
        return len(self.relation)

    def like(self, coeffs: Sequence[HahnSeries]) -> "ExtElement":
        return ExtElement(tuple(coeffs), self.relation, self.gen, self.basis_value)

    def __add__(self, other: "ExtElement") -> "ExtElement":
        return self.like([a + b for a, b in zip(self.coeffs, other.coeffs)])

    def __neg__(self) -> "ExtElement":
        return self.like([-a for a in self.coeffs])

    def __sub__(self, other: "ExtElement") -> "ExtElement":
        return self + (-other)

    def __mul__(self, other: "ExtElement") -> "ExtElement":
        n = self.degree
        zero = self.coeffs[0] - self.coeffs[0]
        prod = [zero] * (2 * n - 1)
        for i, a in enumerate(self.coeffs):
            for j, b in enumerate(other.coeffs):
                prod[i + j] = prod[i + j] + a * b
        for k in range(2 * n - 2, n - 1, -1):
            top = prod[k]
            if top.is_zero():
                continue
            for i, a in enumerate(self.relation):
                prod[k - n + i] = prod[k - n + i] - top * a
            prod[k] = zero
        return self.like(prod[:n])

    def evaluate(self) -> HahnSeries:
        acc = None
        for c in reversed(self.coeffs):
            acc = c if acc is None else acc * self.gen + c
        return acc


def ext_valuation(z: ExtElement) -> tuple:
    """``min_i v(c_i) + i·v(x)``, valid for a valuation basis."""
    best = None
    for i, c in enumerate(z.coeffs):
        if c.is_zero():
            continue
        val = tuple(a + i * d for a, d in zip(c.valuation(), z.basis_value))
        best = val if best is None or val < best else best
    if best is None:
        raise ValueError("valuation of zero")
    return best


# ---------------------------------------------------------------------------
# approximation


@dataclass(frozen=True)
class Approximation:
    """Result of approximating an element by elements of K.

    ``kind`` is ``"value"`` when ``v(x - c) ∉ vK``, ``"residue"`` when the
    value lies in vK but the normalized residue of ``x - c`` is not in the
    residue field of K, and ``"improvable"`` otherwise.
    """

    c: HahnSeries
    value: tuple
    kind: str
    remainder: Optional[HahnSeries] = None


def _classify_remainder(field: BaseField, rem: HahnSeries) -> str:
    e, a = rem.leading()
    if not field.group.contains(e):
        return "value"
    if not field.ring.in_base(a):
        return "residue"
    return "improvable"


def best_approx(field: BaseField, x, candidates: Sequence[HahnSeries]) -> Approximation:
    """Maximize ``v(x - c)`` over a finite candidate list."""
    if not candidates:
        raise ValueError("no candidates")
    xs = x.evaluate() if isinstance(x, ExtElement) else x
    best = None
    for c in candidates:
        rem = xs - c
        val = rem.valuation()
        if best is None or val > best[1]:
            best = (c, val, rem)
    c, val, rem = best
    return Approximation(c, val, _classify_remainder(field, rem), rem)


def greedy_approx(field: BaseField, x: HahnSeries, max_steps: int = 200) -> Approximation:
    """Subtract leading terms lying in K until one does not.

    ``kind`` is ``"exhausted"`` when the known part of ``x - c`` runs out
    before a term outside K is found.
    """
    c = field.zero()
    rem = x
    for _ in range(max_steps):
        try:
            e, a = rem.leading()
        except PrecisionError:
            return Approximation(c, rem.prec, "exhausted", rem)
        kind = _classify_remainder(field, rem)
        if kind != "improvable":
            return Approximation(c, e, kind, rem)
        term = field.monomial(e, a)
        c = c + term
        rem = rem - term
    return Approximation(c, rem.prec, "exhausted", rem)
