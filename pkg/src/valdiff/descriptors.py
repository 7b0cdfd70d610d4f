"""Plain-data (TOML / JSON) forms of groups, extensions, fields, towers,
oracle relations and differential descriptors.

Rationals are written as strings (``"1/3"``) so nothing passes through
floating point.  ``*_from_data`` functions raise :class:`SchemaError` with a
dotted path to the offending entry; descriptor validation failures surface
as :class:`~valdiff.extensions.InconsistentWitnessError`.
"""

from __future__ import annotations

import json
import re
from fractions import Fraction
from pathlib import Path
from typing import Any, Optional

try:
    import tomllib
except ImportError:  # Python < 3.11
    import tomli as tomllib

from .deeply_ramified import FieldDescriptor
from .extensions import DefectData, PrimeExtension, normalize_generator
from .generate import extended_group
from .hahn_oracle import BaseField, GaloisField, PolynomialRing, PrimeField, Relation
from .kahler import CyclicQuotient, IdealQuotient, InertialStep, PrimeStep, TowerDescriptor, Zero
from .ordered_groups import GroupElement, LevelDescriptor, OrderedGroup, as_fraction

__all__ = [
    "ConfigError",
    "SchemaError",
    "load_config",
    "parse_config",
    "group_to_data",
    "group_from_data",
    "element_to_data",
    "element_from_data",
    "extension_to_data",
    "extension_from_data",
    "field_to_data",
    "field_from_data",
    "tower_to_data",
    "tower_from_data",
    "relation_to_data",
    "relation_from_data",
    "kahler_to_data",
    "report_record",
]


class ConfigError(ValueError):
    """Unparseable input; carries the 1-based line and column when known."""

    def __init__(self, message: str, line: Optional[int] = None, col: Optional[int] = None):
        self.line, self.col = line, col
        where = f" at line {line}, column {col}" if line is not None else ""
        super().__init__(f"{message}{where}")


class SchemaError(ValueError):
    """Well-formed input with missing or ill-typed entries."""

    def __init__(self, path: str, message: str):
        self.path = path
        super().__init__(f"{path}: {message}" if path else message)


_POS = re.compile(r"\(at line (\d+), column (\d+)\)")


def parse_config(text: str, fmt: str = "toml") -> dict:
    if fmt == "json":
        try:
            data = json.loads(text)
        except json.JSONDecodeError as exc:
            raise ConfigError(exc.msg, exc.lineno, exc.colno) from None
        if not isinstance(data, dict):
            raise ConfigError("top level must be an object")
        return data
    try:
        return tomllib.loads(text)
    except tomllib.TOMLDecodeError as exc:
        line, col = getattr(exc, "lineno", None), getattr(exc, "colno", None)
        msg = str(exc)
        m = _POS.search(msg)
        if m:
            msg = msg[:m.start()].rstrip()
            if line is None:
                line, col = int(m.group(1)), int(m.group(2))
        raise ConfigError(msg, line, col) from None


def load_config(path) -> dict:
    path = Path(path)
    try:
        text = path.read_text(encoding="utf-8")
    except OSError as exc:
        raise ConfigError(f"cannot read {path}: {exc.strerror}") from None
    return parse_config(text, "json" if path.suffix == ".json" else "toml")


# ---------------------------------------------------------------------------
# helpers


def _frac(x, path: str) -> Fraction:
    if isinstance(x, bool) or not isinstance(x, (int, str)):
        raise SchemaError(path, f"expected a rational as int or string, got {x!r}")
    try:
        return as_fraction(x)
    except (ValueError, ZeroDivisionError):
        raise SchemaError(path, f"not a rational number: {x!r}") from None


def _get(d: dict, key: str, path: str, types, default=...):
    if key not in d:
        if default is ...:
            raise SchemaError(f"{path}.{key}" if path else key, "missing")
        return default
    v = d[key]
    if not isinstance(v, types) or (isinstance(v, bool) and bool not in _as_tuple(types)):
        raise SchemaError(f"{path}.{key}" if path else key, f"unexpected value {v!r}")
    return v


def _as_tuple(t):
    return t if isinstance(t, tuple) else (t,)


def _table(d, path: str) -> dict:
    if not isinstance(d, dict):
        raise SchemaError(path, "expected a table")
    return d


def _fstr(x: Fraction) -> str:
    return str(x)


# ---------------------------------------------------------------------------
# groups and elements


def group_to_data(G) -> dict:
    return {"levels": [L.to_data() for L in G.levels]}


def _level_from_data(d, path: str) -> LevelDescriptor:
    d = _table(d, path)
    kind = _get(d, "kind", path, str)
    if kind == "zero":
        return LevelDescriptor.zero()
    if kind == "rationals":
        return LevelDescriptor.rationals()
    g = _frac(d.get("g", 1), f"{path}.g")
    if g <= 0:
        raise SchemaError(f"{path}.g", "generator must be positive")
    if kind == "cyclic":
        return LevelDescriptor.cyclic(g)
    if kind == "localized":
        primes = _get(d, "primes", path, list)
        if not primes or not all(isinstance(q, int) and not isinstance(q, bool) for q in primes):
            raise SchemaError(f"{path}.primes", "expected a nonempty list of primes")
        try:
            return LevelDescriptor.localized(g, primes)
        except ValueError as exc:
            raise SchemaError(f"{path}.primes", str(exc)) from None
    raise SchemaError(f"{path}.kind", f"unknown level kind {kind!r}")


def group_from_data(d, path: str = "group") -> OrderedGroup:
    d = _table(d, path)
    levels = _get(d, "levels", path, list)
    G = OrderedGroup(tuple(_level_from_data(L, f"{path}.levels[{i}]") for i, L in enumerate(levels)))
    if G.rank == 0:
        raise SchemaError(f"{path}.levels", "the group is trivial")
    return G


def element_to_data(x: GroupElement) -> list:
    return [_fstr(c) for c in x.coords]


def element_from_data(x, rank: int, path: str) -> tuple:
    if not isinstance(x, list):
        x = [x]
    if len(x) != rank:
        raise SchemaError(path, f"expected {rank} coordinates, got {len(x)}")
    return tuple(_frac(c, f"{path}[{i}]") for i, c in enumerate(x))


# ---------------------------------------------------------------------------
# extensions


def extension_to_data(ext: PrimeExtension) -> dict:
    d: dict[str, Any] = {
        "kind": ext.kind,
        "degree": ext.degree,
        "char_K": ext.char_K,
        "residue_char": ext.residue_char,
        "e": ext.e,
        "f": ext.f,
        "d": ext.d,
        "group": group_to_data(ext.base),
    }
    if ext.generator_value is not None:
        d["generator_value"] = element_to_data(ext.generator_value)
    if ext.one_unit_generator:
        d["one_unit"] = True
    if ext.j is not None:
        d["j"] = ext.j
    if ext.has_zeta is not None:
        d["has_zeta"] = ext.has_zeta
    if ext.vp is not None:
        d["vp"] = element_to_data(ext.vp)
    if ext.defect is not None:
        dd: dict[str, Any] = {}
        if ext.defect.independent is not None:
            dd["independent"] = ext.defect.independent
        if ext.defect.cut_level is not None:
            dd["cut_level"] = ext.defect.cut_level
        if ext.defect.center is not None:
            dd["center"] = element_to_data(ext.defect.center)
        d["defect"] = dd
    return d


def extension_from_data(d, path: str = "extension", group: Optional[OrderedGroup] = None) -> PrimeExtension:
    d = _table(d, path)
    G = group_from_data(d["group"], f"{path}.group") if "group" in d else group
    if G is None:
        raise SchemaError(f"{path}.group", "missing")
    n = G.rank
    kind = _get(d, "kind", path, str)
    degree = _get(d, "degree", path, int)
    residue_char = _get(d, "residue_char", path, int)
    char_K = _get(d, "char_K", path, int)
    e = _get(d, "e", path, int)
    f = _get(d, "f", path, int)
    dd = _get(d, "d", path, int, None)

    def elem(key):
        return element_from_data(d[key], n, f"{path}.{key}") if key in d else None

    defect = None
    if "defect" in d:
        t = _table(d["defect"], f"{path}.defect")
        defect = DefectData(
            independent=_get(t, "independent", f"{path}.defect", bool, None),
            cut_level=_get(t, "cut_level", f"{path}.defect", int, None),
            center=element_from_data(t["center"], n, f"{path}.defect.center") if "center" in t else None,
        )
    return normalize_generator(
        kind, degree, char_K, residue_char, G, e, f, dd,
        generator_value=elem("generator_value"),
        one_unit=_get(d, "one_unit", path, bool, False),
        j=_get(d, "j", path, int, None),
        has_zeta=_get(d, "has_zeta", path, bool, None),
        vp=elem("vp"),
        defect=defect,
    )


# ---------------------------------------------------------------------------
# fields


def field_to_data(fd: FieldDescriptor) -> dict:
    d: dict[str, Any] = {
        "char_K": fd.char_K,
        "residue_char": fd.residue_char,
        "group": group_to_data(fd.value_group),
        "residue_perfect": fd.residue_perfect,
        "contains_zeta_p": fd.contains_zeta_p,
        "independent_defect_field": fd.independent_defect_field,
    }
    if fd.vp is not None:
        d["vp"] = element_to_data(fd.vp)
    if fd.drvr_flag is not None:
        d["drvr_flag"] = fd.drvr_flag
    return d


def field_from_data(d, path: str = "field", group: Optional[OrderedGroup] = None) -> FieldDescriptor:
    d = _table(d, path)
    G = group_from_data(d["group"], f"{path}.group") if "group" in d else group
    if G is None:
        raise SchemaError(f"{path}.group", "missing")
    vp = element_from_data(d["vp"], G.rank, f"{path}.vp") if "vp" in d else None
    return FieldDescriptor(
        _get(d, "char_K", path, int),
        _get(d, "residue_char", path, int),
        G,
        None if vp is None else G.hull_element(vp),
        residue_perfect=_get(d, "residue_perfect", path, bool, True),
        contains_zeta_p=_get(d, "contains_zeta_p", path, bool, True),
        independent_defect_field=_get(d, "independent_defect_field", path, bool, True),
        drvr_flag=_get(d, "drvr_flag", path, bool, None),
    )


# ---------------------------------------------------------------------------
# towers


def tower_to_data(t: TowerDescriptor) -> dict:
    steps = []
    for s in t.steps:
        if isinstance(s, InertialStep):
            steps.append({"inertial": s.degree})
        else:
            steps.append(extension_to_data(s.ext))
    return {"step": steps}


def tower_from_data(d, path: str = "", group: Optional[OrderedGroup] = None) -> TowerDescriptor:
    """Steps without a ``group`` sit over the previous step's value group
    (the base group extended by a single-level generator value)."""
    d = _table(d, path or "tower")
    raw = _get(d, "step", path, list)
    if not raw:
        raise SchemaError(f"{path}.step" if path else "step", "empty tower")
    G = group_from_data(d["group"], "group") if "group" in d else group
    steps = []
    for i, s in enumerate(raw):
        sp = f"step[{i}]"
        s = _table(s, sp)
        if "inertial" in s:
            steps.append(InertialStep(_get(s, "inertial", sp, int), _get(s, "separable", sp, bool, True)))
            continue
        ext = extension_from_data(s, sp, G)
        steps.append(PrimeStep(ext))
        G = ext.base
        if ext.is_ramified:
            G = extended_group(ext.base, ext.delta, ext.degree)
            if G is None and i + 1 < len(raw) and "group" not in raw[i + 1]:
                raise SchemaError(f"step[{i + 1}].group",
                                  "value group after a multi-level ramified step must be given")
    return TowerDescriptor(tuple(steps))


# ---------------------------------------------------------------------------
# oracle relations


def _ring_from_data(spec, p: int, path: str):
    if spec in (None, "prime"):
        return PrimeField(p)
    spec = _table(spec, path)
    if "galois" in spec:
        mod = spec["galois"]
        if not isinstance(mod, list) or not all(isinstance(c, int) for c in mod) or len(mod) < 3:
            raise SchemaError(f"{path}.galois", "expected the modulus coefficients, constant first")
        return GaloisField(p, tuple(c % p for c in mod))
    if "polynomial" in spec:
        return PolynomialRing(p, _get(spec, "polynomial", path, int))
    raise SchemaError(path, "expected 'prime', {galois = [...]} or {polynomial = depth}")


def _ring_to_data(R):
    if isinstance(R, PrimeField):
        return "prime"
    if isinstance(R, GaloisField):
        return {"galois": list(R.modulus)}
    return {"polynomial": R.depth}


def _coeff_from_data(R, c, path: str):
    if isinstance(R, PrimeField):
        if not isinstance(c, int):
            raise SchemaError(path, "expected an integer coefficient")
        return R.from_int(c)
    if isinstance(R, GaloisField):
        if isinstance(c, int):
            return R.from_int(c)
        if not isinstance(c, list) or len(c) != R.degree:
            raise SchemaError(path, f"expected {R.degree} coordinates")
        return tuple(x % R.p for x in c)
    if isinstance(c, int):
        return R.from_int(c)
    try:
        return R._norm({int(e): int(v) for e, v in c})
    except (TypeError, ValueError):
        raise SchemaError(path, "expected [[w-exponent, coefficient], ...]") from None


def _coeff_to_data(R, c):
    if isinstance(R, PrimeField):
        return c
    if isinstance(R, GaloisField):
        return list(c)
    return [list(t) for t in c]


def relation_to_data(rel: Relation) -> dict:
    K = rel.field
    return {
        "kind": rel.kind,
        "p": K.p,
        "degree": rel.degree,
        "group": group_to_data(K.group),
        "coefficients": _ring_to_data(K.ring),
        "b": [[element_to_data_exp(e), _coeff_to_data(K.ring, c)] for e, c in rel.b.terms],
    }


def element_to_data_exp(e: tuple) -> Any:
    return _fstr(e[0]) if len(e) == 1 else [_fstr(x) for x in e]


def relation_from_data(d, path: str = "relation") -> Relation:
    from .hahn_oracle import OracleScopeError

    d = _table(d, path)
    kind = _get(d, "kind", path, str)
    p = _get(d, "p", path, int)
    G = group_from_data(_get(d, "group", path, dict), f"{path}.group")
    R = _ring_from_data(d.get("coefficients"), p, f"{path}.coefficients")
    default_deg = p if kind == "artin-schreier" else 2
    degree = _get(d, "degree", path, int, default_deg)
    terms = {}
    for i, t in enumerate(_get(d, "b", path, list)):
        tp = f"{path}.b[{i}]"
        if not isinstance(t, list) or len(t) != 2:
            raise SchemaError(tp, "expected [exponent, coefficient]")
        terms[element_from_data(t[0], G.rank, f"{tp}[0]")] = _coeff_from_data(R, t[1], f"{tp}[1]")
    K = BaseField(p, G, R)
    try:
        return Relation(kind, degree, K.series(terms), K)
    except OracleScopeError as exc:
        raise SchemaError(path, str(exc)) from None


# ---------------------------------------------------------------------------
# differentials


def kahler_to_data(desc) -> dict:
    if isinstance(desc, Zero):
        return {"shape": "zero"}
    if isinstance(desc, CyclicQuotient):
        return {"shape": "cyclic", "form": desc.form,
                "annihilator": element_to_data(desc.annihilator)}
    assert isinstance(desc, IdealQuotient)
    d: dict[str, Any] = {"shape": "ideal", "form": desc.form}
    if desc.ideal is not None:
        I = desc.ideal
        d["ideal"] = {
            "generators": I.shape,
            "offset": [_fstr(x) for x in I.offset],
            "shift": [_fstr(x) for x in I.shift],
            "delta": [_fstr(x) for x in I.ambient.delta],
            "index": I.ambient.q,
        }
    if desc.factor is not None:
        d["factor"] = element_to_data(desc.factor)
    return d


def report_record(desc) -> dict:
    return {
        "case": desc.case,
        "is_zero": desc.is_zero,
        "descriptor": kahler_to_data(desc),
        "reason": desc.reason,
        "paper_theorem": desc.theorem,
    }
