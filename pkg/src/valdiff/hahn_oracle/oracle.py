"""Brute-force classification of concrete equal-characteristic extensions and
comparison with the descriptor-level classifier.

The oracle only manipulates series: it computes a root of the defining
equation, approximates it by elements of K term by term, reads off the
ramification index / inertia degree from the first term that leaves K,
searches the exponent ``j`` by enumerating values of ``c·x^i`` over a grid of
K-values, and decides ``I = I^n`` by comparing sampled values.  The theory
side (:func:`describe_relation`) instead reduces the right-hand side to a
normal form and feeds the resulting descriptor to the classifier.
"""

from __future__ import annotations

import random
from math import comb
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional

from ..extensions import (
    ARTIN_SCHREIER,
    KUMMER,
    PrimeExtension,
    classify_generator_case,
    normalize_generator,
    unibranched_bound_check,
)
from ..kahler import kahler_of
from ..ordered_groups import LevelDescriptor, OrderedGroup, adjoin
from .coefficients import GaloisField, PolynomialRing, PrimeField, find_root, ring_pow
from .extension import (
    BaseField,
    ExtElement,
    OracleScopeError,
    artin_schreier_root,
    greedy_approx,
    kummer_root,
    primitive_root_of_unity,
)
from .series import HahnSeries, Polynomial

__all__ = [
    "Relation",
    "OracleResult",
    "ClassifierView",
    "Comparison",
    "oracle_classify",
    "describe_relation",
    "classifier_view",
    "compare",
    "value_grid",
    "generator_root",
    "series_derivative_value",
    "chain_check",
    "sample_unibranched",
    "random_instance",
    "STANDARD_GROUPS",
]


@dataclass(frozen=True)
class Relation:
    """``θ^p - θ = b`` (Artin-Schreier) or ``η^q = b`` (Kummer, q | p-1)."""

    kind: str
    degree: int
    b: HahnSeries
    field: BaseField

    def __post_init__(self):
        p = self.field.p
        if self.kind == ARTIN_SCHREIER and self.degree != p:
            raise OracleScopeError("Artin-Schreier relations have degree p")
        if self.kind == KUMMER and (p - 1) % self.degree:
            raise OracleScopeError("Kummer relations need q | p-1")
        if self.kind not in (ARTIN_SCHREIER, KUMMER):
            raise OracleScopeError(f"unknown relation kind {self.kind!r}")
        if not self.b.is_exact or not self.field.in_K(self.b):
            raise OracleScopeError("the right-hand side must be an exact element of K")
        if self.b.is_zero():
            raise OracleScopeError("the right-hand side must be nonzero")


@dataclass
class OracleResult:
    e: int
    f: int
    d: int
    delta: Optional[tuple] = None
    separable: bool = True
    valid_js: tuple = ()
    j: Optional[int] = None
    omega_zero: bool = False
    generator_value: Optional[tuple] = None
    notes: list = field(default_factory=list)


@dataclass(frozen=True)
class ClassifierView:
    e: int
    f: int
    d: int
    delta: Optional[tuple]
    separable: bool
    valid_js: tuple
    j: Optional[int]
    omega_zero: bool
    reason: str
    ext: PrimeExtension


@dataclass(frozen=True)
class Comparison:
    relation: Relation
    oracle: OracleResult
    classifier: ClassifierView
    mismatches: tuple

    @property
    def agree(self) -> bool:
        return not self.mismatches


# ---------------------------------------------------------------------------
# value grids


def value_grid(group: OrderedGroup, lo: Fraction, hi: Fraction, depth: int) -> list[Fraction]:
    """Rank-1 group elements in ``[lo, hi]`` on a lattice refined ``depth`` times."""
    if group.rank != 1:
        raise OracleScopeError("value sampling is implemented for rank-1 groups")
    L = group.levels[0]
    if L.kind == "cyclic":
        step = L.g
    elif L.kind == "localized":
        step = L.g
        for s in L.primes:
            step /= s ** depth
    else:
        step = Fraction(1, 30 ** depth)
    k0 = -((-lo) // step)
    out = []
    k = k0
    while k * step <= hi:
        out.append(k * step)
        k += 1
    return out


def _min_positive(values):
    pos = [v for v in values if v > 0]
    return min(pos) if pos else None


# ---------------------------------------------------------------------------
# oracle


def _differences(rel: Relation, root: HahnSeries, zeta):
    """``x - σx`` over the nontrivial automorphisms, for ``x = root - c``
    with ``c ∈ K``: the constant ``-k`` or ``(1 - ζ^k)·root``."""
    K = rel.field
    R = K.ring
    out = []
    for k in range(1, rel.degree):
        if rel.kind == ARTIN_SCHREIER:
            out.append(K.const_int(-k))
        else:
            out.append(root.scale(R.sub(R.one, ring_pow(R, zeta, k))))
    return out


def _approximate_root(rel: Relation, terms: int, max_rounds: int):
    """Find ``c ∈ K`` and the root series such that the leading term of
    ``root - c`` lies outside K.  Returns (x0, approximation, c_total)."""
    K = rel.field
    p = K.p
    b_cur = rel.b
    c_total = K.zero()
    for _ in range(max_rounds):
        if rel.kind == ARTIN_SCHREIER:
            root = artin_schreier_root(b_cur, terms)
        else:
            root = kummer_root(rel.degree, b_cur, 1)  # the leading term decides
        approx = greedy_approx(K, root)
        if approx.kind in ("value", "residue"):
            return approx.remainder, approx, c_total + approx.c
        if rel.kind != ARTIN_SCHREIER or approx.c.is_zero():
            break
        c = approx.c
        b_cur = b_cur - (c ** p - c)
        c_total = c_total + c
    raise OracleScopeError("no term outside K found: immediate or trivial extension")


def _ideal_samples(rel: Relation, x0: HahnSeries, depth: int):
    """Minimal positive values of ``c·x0^i`` on a value grid, per ``i``."""
    K = rel.field
    mins = {}
    for i in range(1, rel.degree):
        v_i = (x0 ** i).valuation()[0]
        g = K.group.levels[0].g
        grid = value_grid(K.group, -v_i - g, -v_i + 2 * g, depth)
        mins[i] = _min_positive([gamma + v_i for gamma in grid])
    return mins


def oracle_classify(rel: Relation, terms: int = 4, max_rounds: int = 6,
                    depth: int = 2) -> OracleResult:
    K = rel.field
    n = rel.degree
    zeta = primitive_root_of_unity(K.ring, n) if rel.kind == KUMMER else None
    x0, approx, c_total = _approximate_root(rel, terms, max_rounds)
    w = approx.value
    if approx.kind == "residue":
        lead = x0.leading()[1]
        shift = tuple(-a for a in w)
        prod = None
        for diff in _differences(rel, x0 + c_total, zeta):
            diff = diff.shift(shift)
            prod = diff if prod is None else prod * diff
        vd = prod.valuation()
        res = OracleResult(1, n, 1, separable=K.ring.is_separable_generator(lead),
                           omega_zero=not any(vd), generator_value=w)
        res.notes.append(f"v(h'(y)) = {vd[0] if len(vd) == 1 else vd}")
        return res
    # value witness: e = n
    res = OracleResult(n, 1, 1, delta=w, generator_value=w)
    # over a discrete level the grid does not refine and the minima stay put
    coarse = _ideal_samples(rel, x0, depth)
    fine = _ideal_samples(rel, x0, depth + 2)
    dense = any(fine[i] < coarse[i] for i in coarse)
    if dense:
        valid = tuple(range(1, n))
    else:
        best = min(coarse.values())
        valid = tuple(i for i in sorted(coarse) if coarse[i] == best)
    res.valid_js = valid
    j = valid[0]
    res.j = j
    # generator values of I and the power test
    gen_power = j - 1 if rel.kind == ARTIN_SCHREIER else j
    v_gen = (x0 ** gen_power).valuation()[0] if gen_power else Fraction(0)
    v_j = (x0 ** j).valuation()[0]
    g = K.group.levels[0].g

    def gen_values(d):
        grid = value_grid(K.group, -v_j - g, -v_j + 2 * g, d)
        return [gamma + v_gen for gamma in grid if gamma + v_j > 0]

    coarse_min = min(gen_values(depth))
    fine_min = min(gen_values(depth + 2))
    res.omega_zero = n * fine_min <= coarse_min
    res.notes.append(f"inf vI ~ {fine_min}; I {'=' if res.omega_zero else '!='} I^{n}")
    return res


def generator_root(rel: Relation, terms: int = 4, max_rounds: int = 6) -> HahnSeries:
    """Root of the relation shifted by an element of K so that its leading
    term lies outside K (θ or η of the normal form)."""
    return _approximate_root(rel, terms, max_rounds)[0]


def series_derivative_value(rel: Relation, vc=None, j: int = 1) -> tuple:
    """Value of ``h'(y)`` for ``y = t^vc·x^j``, with ``h`` the minimal
    polynomial of ``y`` and ``x`` the normal-form root.

    With ``vc=None`` and ``j=1`` the defining polynomial itself is
    differentiated and evaluated at the root.  Otherwise ``h = Π(Y - σy)`` and
    the product rule gives ``h'(y) = Π_{σ≠1}(y - σy)``; for Artin-Schreier
    ``x^j - (x+k)^j`` is expanded binomially before evaluation so the
    leading term survives the truncation of ``x``.
    """
    K = rel.field
    R, n = K.ring, rel.degree
    x = generator_root(rel)
    if vc is None and j == 1:
        if rel.kind == ARTIN_SCHREIER:
            coeffs = [-rel.b, K.const_int(-1)] + [K.zero()] * (n - 2) + [K.const_int(1)]
        else:
            coeffs = [-rel.b] + [K.zero()] * (n - 1) + [K.const_int(1)]
        return Polynomial(tuple(coeffs)).derivative()(x).valuation()
    c = K.monomial(vc if vc is not None else K.zero_exp)
    zeta = primitive_root_of_unity(R, n) if rel.kind == KUMMER else None
    total = None
    for k in range(1, n):
        if rel.kind == ARTIN_SCHREIER:
            # x^j - (x+k)^j = -Σ_{i<j} C(j,i) k^(j-i) x^i
            coeffs = tuple(K.const_int(-comb(j, i) * k ** (j - i)) for i in range(j))
            diff = c * Polynomial(coeffs)(x)
        else:
            diff = (c * x ** j).scale(R.sub(R.one, ring_pow(R, zeta, j * k)))
        v = diff.valuation()
        total = v if total is None else tuple(a + b for a, b in zip(total, v))
    return total


def chain_check(rel: Relation, vc1: tuple, vc2: tuple) -> bool:
    """Whether ``c₁x ∈ O_K[c₂x]`` (hence ``O_K[c₁x] ⊆ O_K[c₂x]``), decided by
    writing the powers of ``c₁x`` in the basis ``1, y, …, y^(n-1)`` of
    ``O_K[y]``, ``y = c₂x``, and testing the coefficients for integrality.

    ``y`` must be integral over O_K: ``vc2 >= -v(x)`` and ``vc2 >= 0`` for
    Artin-Schreier.
    """
    K = rel.field
    n = rel.degree
    x = generator_root(rel)
    c2 = K.monomial(vc2)
    if rel.kind == ARTIN_SCHREIER:
        # y^p - c^(p-1) y - c^p b' = 0 with b' = x^p - x ∈ K
        b_norm = _normal_rhs(rel, x)
        relation = [-(c2 ** n) * b_norm, -(c2 ** (n - 1))] + [K.zero()] * (n - 2)
    else:
        relation = [-(c2 ** n) * rel.b] + [K.zero()] * (n - 1)
    for a in relation:
        if not a.is_zero() and a.valuation() < K.zero_exp:
            raise OracleScopeError("c₂x is not integral over O_K")
    y = c2 * x
    zero = [K.zero()] * n
    ratio = K.monomial(tuple(a - b for a, b in zip(vc1, vc2)))
    z = ExtElement(tuple([K.zero(), ratio] + zero[2:]), tuple(relation), y, y.valuation())
    power = z
    for _ in range(1, n):
        if any(not c.is_zero() and c.valuation() < K.zero_exp for c in power.coeffs):
            return False
        power = power * z
    return True


def _normal_rhs(rel: Relation, x: HahnSeries) -> HahnSeries:
    """``x^p - x`` for the normal-form root, as an exact element of K."""
    c = _approximate_root(rel, 4, 6)[2]
    K = rel.field
    return rel.b - (c ** K.p - c)


def sample_unibranched(rel: Relation, ext: PrimeExtension, rng: random.Random,
                       samples: int = 20) -> list:
    """``(value of η - c, bound holds)`` for sampled ``c ∈ K`` near η."""
    if rel.kind != KUMMER:
        raise OracleScopeError("the unibranched bound concerns Kummer generators")
    K = rel.field
    eta = generator_root(rel)
    e0 = eta.valuation()
    out = []
    for _ in range(samples):
        shift = Fraction(rng.randrange(-4, 5), 2) * K.group.levels[0].g
        exp = tuple(a + shift for a in e0)
        if not K.group.contains(exp):
            exp = tuple(a.__floor__() for a in exp)
        c = K.monomial(exp, K.ring.from_int(rng.randrange(1, K.p)))
        v = (eta - c).valuation()
        out.append((v, unibranched_bound_check(ext, v)))
    return out


# ---------------------------------------------------------------------------
# theory side


def describe_relation(rel: Relation, max_steps: int = 60) -> PrimeExtension:
    """Descriptor of the extension defined by ``rel`` via the normal form of
    the right-hand side."""
    K = rel.field
    R, G, p, n = K.ring, K.group, K.p, rel.degree
    zero = K.zero_exp
    if rel.kind == KUMMER:
        gamma, a = rel.b.leading()
        if not G.contains(tuple(x / n for x in gamma)):
            return normalize_generator(KUMMER, n, p, p, G, n, 1,
                                       generator_value=tuple(x / n for x in gamma),
                                       has_zeta=True)
        root = find_root(R, lambda x: R.sub(ring_pow(R, x, n), a), predicate=R.in_base)
        if root is None:
            return normalize_generator(KUMMER, n, p, p, G, 1, n,
                                       generator_value=tuple(x / n for x in gamma),
                                       has_zeta=True)
        raise OracleScopeError("trivial Kummer extension")
    b = rel.b
    for _ in range(max_steps):
        neg = b.part(hi=zero)
        if not neg.terms:
            break
        e0, a = neg.leading()
        root_exp = tuple(x / p for x in e0)
        if G.contains(root_exp) and R.base_is_pth_power(a):
            c = K.monomial(root_exp, R.frob_inv(a))
            b = b - c ** p + c
            continue
        break
    else:
        raise OracleScopeError("normal form does not terminate: immediate extension")
    neg = b.part(hi=zero)
    if neg.terms:
        e0, a = neg.leading()
        vtheta = tuple(x / p for x in e0)
        if not G.contains(vtheta):
            return normalize_generator(ARTIN_SCHREIER, p, p, p, G, p, 1, generator_value=vtheta)
        return normalize_generator(ARTIN_SCHREIER, p, p, p, G, 1, p, generator_value=vtheta)
    b0 = b.as_dict().get(zero, R.zero)
    if R.is_zero(b0):
        raise OracleScopeError("trivial Artin-Schreier extension")
    return normalize_generator(ARTIN_SCHREIER, p, p, p, G, 1, p, generator_value=zero)


def classifier_view(ext: PrimeExtension) -> ClassifierView:
    desc = kahler_of(ext)
    if ext.is_ramified:
        gc = classify_generator_case(ext)
        valid, j = gc.valid_js, gc.j
        delta = ext.delta.coords
    else:
        valid, j, delta = (), None, None
    return ClassifierView(ext.e, ext.f, ext.d, delta, ext.residue.separable, valid, j,
                          desc.is_zero, desc.reason, ext)


def compare(rel: Relation, **kw) -> Comparison:
    """Run both routes and list the disagreeing fields."""
    ext = describe_relation(rel)
    cv = classifier_view(ext)
    ov = oracle_classify(rel, **kw)
    mism = []
    for name in ("e", "f", "d", "separable", "omega_zero"):
        if getattr(ov, name) != getattr(cv, name):
            mism.append(name)
    if cv.delta is not None:
        # the value groups generated must agree
        if ov.delta is None or adjoin(ext.base, ov.delta, rel.degree) != adjoin(
                ext.base, cv.delta, rel.degree):
            mism.append("delta")
        if ov.valid_js != cv.valid_js or ov.j not in cv.valid_js:
            mism.append("j")
    return Comparison(rel, ov, cv, tuple(mism))


# ---------------------------------------------------------------------------
# random instances


STANDARD_GROUPS = {
    "Z": OrderedGroup.of(LevelDescriptor.cyclic(1)),
    "Z/2": OrderedGroup.of(LevelDescriptor.cyclic(Fraction(1, 2))),
    "Z[1/3]": OrderedGroup.of(LevelDescriptor.localized(1, [3])),
}


def _random_element(rng: random.Random, group: OrderedGroup, lo: Fraction, hi: Fraction):
    vals = value_grid(group, lo, hi, 1)
    return rng.choice(vals) if vals else None


def _nonsquare(p: int) -> int:
    return next(a for a in range(2, p) if pow(a, (p - 1) // 2, p) == p - 1)


def random_instance(rng: random.Random, group_name: str | None = None,
                    p: int | None = None, shape: str | None = None) -> Relation:
    """A random nontrivial relation over one of the standard groups.

    Shapes: ``as-ramified``, ``as-inert``, ``as-inseparable``,
    ``kummer-ramified``, ``kummer-inert``.
    """
    group_name = group_name or rng.choice(sorted(STANDARD_GROUPS))
    G = STANDARD_GROUPS[group_name]
    shapes = ["as-inert", "as-inseparable"]
    if p is None:
        primes = [2, 3, 5]
        if shape and shape.startswith("kummer"):
            primes = [3, 5]
        elif shape == "as-ramified":
            primes = [q for q in primes if not G.is_divisible_by(q)]
        p = rng.choice(primes)
    ramifiable = any(not G.contains(x / p) for x in value_grid(G, Fraction(-3), Fraction(-1), 1))
    if ramifiable:
        shapes.append("as-ramified")
    if p > 2:
        shapes += ["kummer-ramified", "kummer-inert"]
    shape = shape or rng.choice(shapes)
    g = G.levels[0].g

    def extras(R, lo, count):
        d = {}
        for _ in range(count):
            e = _random_element(rng, G, lo, lo + 3)
            if e is not None:
                d[(e,)] = R.from_int(rng.randrange(1, p))
        return d

    if shape == "as-ramified":
        R = PrimeField(p)
        K = BaseField(p, G, R)
        cands = [x for x in value_grid(G, Fraction(-3), -g / 2, 1) if not G.contains(x / p)]
        e0 = rng.choice(cands)
        d = {(e0,): R.from_int(rng.randrange(1, p))}
        for (e,), c in extras(R, e0 + g / 8, rng.randrange(0, 3)).items():
            if e > e0:
                d[(e,)] = c
        b = K.series(d)
        if rng.random() < 0.4:
            vc = _random_element(rng, G, e0 * 2, e0 / p - g / 4)
            if vc is not None and vc < e0 / p:
                c = K.monomial((vc,), R.from_int(rng.randrange(1, p)))
                b = b + c ** p - c
        return Relation(ARTIN_SCHREIER, p, b, K)
    if shape == "as-inert":
        R = GaloisField(p, (p - 1, p - 1) + (0,) * (p - 2) + (1,))  # x^p - x - 1
        K = BaseField(p, G, R)
        d = {(Fraction(0),): R.from_int(rng.randrange(1, p))}
        d.update({k: v for k, v in extras(R, g / 2, rng.randrange(0, 3)).items() if k[0] > 0})
        b = K.series(d)
        if rng.random() < 0.5:
            vc = _random_element(rng, G, Fraction(-2), -g / 4)
            if vc is not None and vc < 0:
                c = K.monomial((vc,), R.from_int(rng.randrange(1, p)))
                b = b + c ** p - c
        return Relation(ARTIN_SCHREIER, p, b, K)
    if shape == "as-inseparable":
        R = PolynomialRing(p, 6)
        K = BaseField(p, G, R)
        gamma = rng.choice(value_grid(G, Fraction(-2), -g / 4, 1))
        b = K.series({(p * gamma,): R.u})
        pos = {k: v for k, v in extras(R, g / 2, rng.randrange(0, 2)).items() if k[0] > 0}
        if pos:
            b = b + K.series(pos)
        return Relation(ARTIN_SCHREIER, p, b, K)
    q = 2
    a = _nonsquare(p)
    R = GaloisField(p, ((-a) % p, 0, 1))
    K = BaseField(p, G, R)
    if shape == "kummer-ramified":
        cands = [x for x in value_grid(G, Fraction(-2), Fraction(2), 1) if not G.contains(x / q)]
        gamma = rng.choice(cands)
        lead = R.from_int(rng.randrange(1, p))
    else:
        cands = [x for x in value_grid(G, Fraction(-2), Fraction(2), 1) if G.contains(x / q)]
        gamma = rng.choice(cands)
        lead = R.from_int(a)
    d = {(gamma,): lead}
    for (e,), c in extras(R, gamma + g / 2, rng.randrange(0, 3)).items():
        if e > gamma:
            d[(e,)] = c
    return Relation(KUMMER, q, K.series(d), K)
