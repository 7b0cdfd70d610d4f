"""Coefficient rings for the series oracle.

Each ring distinguishes a *base* subring, the residue field of the ground
field ``K``, from the elements that only appear in extensions.

* :class:`PrimeField` -- ``F_p``; base = everything.
* :class:`GaloisField` -- ``F_p[x]/(m)`` for an irreducible ``m``; base = ``F_p``.
* :class:`PolynomialRing` -- ``F_p[w]`` with base ``F_p[u]``, ``u = w^(p^N)``.
  This realizes the imperfect residue field ``F_p(u)`` together with enough
  ``p``-power roots of ``u`` to write down roots of Artin-Schreier
  polynomials whose residue extension is inseparable.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass


class CoefficientError(ArithmeticError):
    pass


@dataclass(frozen=True)
class PrimeField:
    p: int

    @property
    def zero(self):
        return 0

    @property
    def one(self):
        return 1

    def from_int(self, n: int):
        return n % self.p

    def add(self, a, b):
        return (a + b) % self.p

    def neg(self, a):
        return -a % self.p

    def sub(self, a, b):
        return (a - b) % self.p

    def mul(self, a, b):
        return a * b % self.p

    def inv(self, a):
        if a % self.p == 0:
            raise CoefficientError("division by zero")
        return pow(a, -1, self.p)

    def is_zero(self, a) -> bool:
        return a % self.p == 0

    def frob(self, a):
        return a

    def frob_inv(self, a):
        return a

    def in_base(self, a) -> bool:
        return True

    def base_is_pth_power(self, a) -> bool:
        return True

    def is_separable_generator(self, a) -> bool:
        return True

    def elements(self):
        return range(self.p)

    def fmt(self, a) -> str:
        return str(a)


@dataclass(frozen=True)
class GaloisField:
    """``F_p[x]/(modulus)``; ``modulus`` lists the coefficients of a monic
    irreducible polynomial from the constant term up, leading 1 included."""

    p: int
    modulus: tuple

    @property
    def degree(self) -> int:
        return len(self.modulus) - 1

    @property
    def zero(self):
        return (0,) * self.degree

    @property
    def one(self):
        return (1,) + (0,) * (self.degree - 1)

    @property
    def gen(self):
        return (0, 1) + (0,) * (self.degree - 2)

    def from_int(self, n: int):
        return (n % self.p,) + (0,) * (self.degree - 1)

    def add(self, a, b):
        return tuple((x + y) % self.p for x, y in zip(a, b))

    def neg(self, a):
        return tuple(-x % self.p for x in a)

    def sub(self, a, b):
        return tuple((x - y) % self.p for x, y in zip(a, b))

    def mul(self, a, b):
        k, p = self.degree, self.p
        prod = [0] * (2 * k - 1)
        for i, x in enumerate(a):
            if x:
                for j, y in enumerate(b):
                    prod[i + j] += x * y
        for i in range(2 * k - 2, k - 1, -1):
            c = prod[i] % p
            if c:
                for j in range(k):
                    prod[i - k + j] -= c * self.modulus[j]
        return tuple(c % p for c in prod[:k])

    def pow(self, a, n: int):
        result, base = self.one, a
        while n:
            if n & 1:
                result = self.mul(result, base)
            base = self.mul(base, base)
            n >>= 1
        return result

    def inv(self, a):
        if self.is_zero(a):
            raise CoefficientError("division by zero")
        return self.pow(a, self.p ** self.degree - 2)

    def is_zero(self, a) -> bool:
        return not any(a)

    def frob(self, a):
        return self.pow(a, self.p)

    def frob_inv(self, a):
        return self.pow(a, self.p ** (self.degree - 1))

    def in_base(self, a) -> bool:
        return not any(a[1:])

    def base_is_pth_power(self, a) -> bool:
        return True

    def is_separable_generator(self, a) -> bool:
        return True

    def elements(self):
        return itertools.product(range(self.p), repeat=self.degree)

    def fmt(self, a) -> str:
        terms = [f"{c}" if i == 0 else (f"{c}x" if i == 1 else f"{c}x^{i}")
                 for i, c in enumerate(a) if c]
        return "+".join(terms) or "0"


@dataclass(frozen=True)
class PolynomialRing:
    """Sparse ``F_p[w]``; elements are sorted tuples of ``(exponent, coeff)``."""

    p: int
    depth: int

    @property
    def q(self) -> int:
        return self.p ** self.depth

    @property
    def zero(self):
        return ()

    @property
    def one(self):
        return ((0, 1),)

    @property
    def u(self):
        return ((self.q, 1),)

    def from_int(self, n: int):
        n %= self.p
        return ((0, n),) if n else ()

    def _norm(self, d: dict):
        return tuple(sorted((e, c % self.p) for e, c in d.items() if c % self.p))

    def add(self, a, b):
        d = dict(a)
        for e, c in b:
            d[e] = d.get(e, 0) + c
        return self._norm(d)

    def neg(self, a):
        return tuple((e, -c % self.p) for e, c in a)

    def sub(self, a, b):
        return self.add(a, self.neg(b))

    def mul(self, a, b):
        d: dict = {}
        for e1, c1 in a:
            for e2, c2 in b:
                d[e1 + e2] = d.get(e1 + e2, 0) + c1 * c2
        return self._norm(d)

    def inv(self, a):
        if len(a) == 1 and a[0][0] == 0:
            return ((0, pow(a[0][1], -1, self.p)),)
        raise CoefficientError(f"{self.fmt(a)} is not a unit")

    def is_zero(self, a) -> bool:
        return not a

    def frob(self, a):
        return tuple((e * self.p, c) for e, c in a)

    def frob_inv(self, a):
        if any(e % self.p for e, _ in a):
            raise CoefficientError(f"{self.fmt(a)} has no p-th root in F_p[w]")
        return tuple((e // self.p, c) for e, c in a)

    def in_base(self, a) -> bool:
        return all(e % self.q == 0 for e, _ in a)

    def base_is_pth_power(self, a) -> bool:
        return all(e % (self.q * self.p) == 0 for e, _ in a)

    def is_separable_generator(self, a) -> bool:
        """An element outside the base generates a separable extension of
        ``F_p(u)`` only if its p-th power is still outside the base."""
        return not self.in_base(self.frob(a))

    def elements(self):
        raise CoefficientError("F_p[w] is infinite")

    def fmt(self, a) -> str:
        if not a:
            return "0"
        return "+".join(f"{c}" if e == 0 else f"{c}w^{e}" for e, c in a)


def find_root(ring, poly_eval, predicate=None):
    """Brute-force search for an element with ``poly_eval(x) == 0``."""
    for x in ring.elements():
        if ring.is_zero(poly_eval(x)) and (predicate is None or predicate(x)):
            return x
    return None


def ring_pow(ring, a, n: int):
    result, base = ring.one, a
    while n:
        if n & 1:
            result = ring.mul(result, base)
        base = ring.mul(base, base)
        n >>= 1
    return result
