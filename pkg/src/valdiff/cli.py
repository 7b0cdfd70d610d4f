"""Command-line front end.

Subcommands::

    valdiff classify        --input exts.toml     differentials of prime extensions
    valdiff classify-tower  --input tower.toml    vanishing along a tower
    valdiff check-dr        --input fields.toml   deep ramification and witnesses
    valdiff oracle-verify   --input rels.toml     series oracle vs classifier
    valdiff examples                              built-in worked examples

Exit codes: 0 success, 1 a verdict is false (or a mismatch was found),
2 undecided / partial, 3 unparseable input, 4 invalid descriptors.
"""

from __future__ import annotations

import argparse
import json
import random
import sys
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Iterable, Optional

from . import __version__
from .deeply_ramified import UNDECIDED, grthm_plus_report, is_deeply_ramified
from .descriptors import (
    ConfigError,
    SchemaError,
    extension_from_data,
    extension_to_data,
    field_from_data,
    field_to_data,
    group_from_data,
    load_config,
    relation_from_data,
    relation_to_data,
    report_record,
    tower_from_data,
    tower_to_data,
)
from .extensions import CaseMismatchError, InconsistentWitnessError, theta_m_generator
from .generate import deeply_ramified_family
from .hahn_oracle import STANDARD_GROUPS, OracleScopeError, compare, random_instance
from .kahler import MissingWitnessError, kahler_of, kahler_of_tower
from .ordered_groups import GroupError, check_DRvg
from .worked import (
    composite_field,
    laurent_field,
    perfectoid_field,
    root_of_t_composite,
    sqrt_p_over_perfectoid,
)

EXIT_OK, EXIT_FALSE, EXIT_UNDECIDED, EXIT_PARSE, EXIT_SEMANTIC = 0, 1, 2, 3, 4

COMMANDS = ("classify", "classify-tower", "check-dr", "oracle-verify", "examples")

SEMANTIC_ERRORS = (SchemaError, InconsistentWitnessError, CaseMismatchError, MissingWitnessError,
                   OracleScopeError, GroupError, ValueError)


@dataclass(frozen=True)
class RunConfig:
    command: str
    input: Optional[str] = None
    format: str = "human"
    seed: int = 0
    jobs: int = 1

    def __post_init__(self):
        if self.command not in COMMANDS:
            raise ValueError(f"unknown command {self.command!r}")
        if self.command != "examples" and not self.input:
            raise ValueError(f"{self.command} needs --input")
        if self.format not in ("human", "json-lines"):
            raise ValueError(f"unknown format {self.format!r}")


class _Out:
    def __init__(self, fmt: str, stream):
        self.fmt, self.stream = fmt, stream

    def emit(self, record: dict, human: str) -> None:
        if self.fmt == "json-lines":
            self.stream.write(json.dumps(record, ensure_ascii=False, sort_keys=True) + "\n")
        else:
            self.stream.write(human.rstrip("\n") + "\n")


def _fan_out(fn: Callable, items: Iterable, jobs: int) -> list:
    items = list(items)
    if jobs <= 1 or len(items) < 2:
        return [fn(x) for x in items]
    with ThreadPoolExecutor(max_workers=jobs) as pool:
        return list(pool.map(fn, items))


def _entries(data: dict, key: str) -> list:
    raw = data.get(key, [])
    if isinstance(raw, dict):
        raw = [raw]
    if not isinstance(raw, list):
        raise SchemaError(key, "expected a table or an array of tables")
    return raw


def _default_group(data: dict):
    return group_from_data(data["group"], "group") if "group" in data else None


def _human_desc(rec: dict) -> str:
    verdict = "Zero" if rec["is_zero"] else "Nonzero"
    d = rec["descriptor"]
    extra = ""
    if d["shape"] == "cyclic":
        extra = f" O_L/({d['form']}), annihilator value {_fmt_elem(d['annihilator'])}"
    elif d["shape"] == "ideal":
        extra = f" {d['form']}"
    return f"case ({rec['case']}) {verdict}:{extra} -- {rec['reason']} [{rec['paper_theorem']}]"


def _fmt_elem(x) -> str:
    return x[0] if len(x) == 1 else "(" + ", ".join(x) + ")"


# ---------------------------------------------------------------------------
# commands


def _cmd_classify(data: dict, cfg: RunConfig, out: _Out) -> int:
    G = _default_group(data)
    exts = [extension_from_data(d, f"extension[{i}]", G)
            for i, d in enumerate(_entries(data, "extension"))]
    if not exts:
        raise SchemaError("extension", "no extensions given")
    descs = _fan_out(kahler_of, exts, cfg.jobs)
    for i, (ext, desc) in enumerate(zip(exts, descs)):
        rec = {"index": i, "extension": extension_to_data(ext), **report_record(desc)}
        out.emit(rec, f"[{i}] {ext.kind} degree {ext.degree} (e={ext.e}, f={ext.f}, d={ext.d}): "
                      + _human_desc(rec))
    return EXIT_OK


def _cmd_tower(data: dict, cfg: RunConfig, out: _Out) -> int:
    t = tower_from_data(data)
    v = kahler_of_tower(t)
    steps = [report_record(d) for d in v.verdicts]
    rec = {"tower": tower_to_data(t), "is_zero": v.is_zero, "first_nonzero": v.first_nonzero,
           "steps": steps}
    lines = [f"step {i + 1}: " + _human_desc(s) for i, s in enumerate(steps)]
    head = "tower: Zero" if v.is_zero else f"tower: Nonzero (first at step {v.first_nonzero})"
    out.emit(rec, "\n".join([head] + lines))
    return EXIT_OK


def _dr_code(status: str, value) -> int:
    if status == "inconsistent" or value is False:
        return EXIT_FALSE
    if status == "partial" or value == UNDECIDED:
        return EXIT_UNDECIDED
    return EXIT_OK


def _cmd_check_dr(data: dict, cfg: RunConfig, out: _Out) -> int:
    G = _default_group(data)
    raw = _entries(data, "field")
    if not raw:
        raise SchemaError("field", "no fields given")
    fields = [field_from_data(d, f"field[{i}]", G) for i, d in enumerate(raw)]
    sizes = []
    for i, d in enumerate(raw):
        n = d.get("family", 0)
        if not isinstance(n, int) or isinstance(n, bool) or n < 0:
            raise SchemaError(f"field[{i}].family", "expected a nonnegative integer")
        sizes.append(n)

    def run(i):
        f = fields[i]
        family = ()
        # without ζ_p there are no degree-p Galois descriptors to sample
        has_family = not (f.mixed and not f.contains_zeta_p)
        if sizes[i] and has_family and is_deeply_ramified(f).value is True:
            family = deeply_ramified_family(random.Random(cfg.seed * 1_000_003 + i), f, sizes[i])
        return grthm_plus_report(f, family)

    code = EXIT_OK
    for i, r in enumerate(_fan_out(run, range(len(fields)), cfg.jobs)):
        v = r.verdict
        rec = {
            "index": i,
            "field": field_to_data(r.field),
            "deeply_ramified": v.value,
            "drvg": v.drvg,
            "drvr": v.drvr,
            "violations": [str(x) for x in v.violations],
            "witnesses": [{"violation": str(x), "extension": extension_to_data(e), **report_record(d)}
                          for x, e, d in r.witnesses],
            "status": r.status,
            "family_checked": r.family_checked,
            "problems": r.problems,
        }
        lines = [f"[{i}] deeply ramified: {v.value} (DRvg {v.drvg}, DRvr {v.drvr}); report {r.status}"]
        lines += [f"    violation: {x}" for x in v.violations]
        lines += [f"    witness for {x.tag}: {e.kind} degree {e.degree} (e={e.e}, f={e.f}) -> "
                  + _human_desc(report_record(d)) for x, e, d in r.witnesses]
        if r.family_checked:
            lines.append(f"    family of {r.family_checked} extensions checked")
        lines += [f"    PROBLEM: {p}" for p in r.problems]
        out.emit(rec, "\n".join(lines))
        code = max(code, _dr_code(r.status, v.value))
    return code


def _oracle_record(c) -> dict:
    o, k = c.oracle, c.classifier

    def frac_list(x):
        return None if x is None else [str(a) for a in x]

    return {
        "relation": relation_to_data(c.relation),
        "agree": c.agree,
        "mismatches": list(c.mismatches),
        "oracle": {"e": o.e, "f": o.f, "d": o.d, "delta": frac_list(o.delta),
                   "separable": o.separable, "valid_js": list(o.valid_js), "j": o.j,
                   "omega_zero": o.omega_zero},
        "classifier": {"e": k.e, "f": k.f, "d": k.d, "delta": frac_list(k.delta),
                       "separable": k.separable, "valid_js": list(k.valid_js), "j": k.j,
                       "omega_zero": k.omega_zero, "reason": k.reason},
    }


def _cmd_oracle(data: dict, cfg: RunConfig, out: _Out) -> int:
    rels = [relation_from_data(d, f"relation[{i}]") for i, d in enumerate(_entries(data, "relation"))]
    n_random = data.get("random", 0)
    if not isinstance(n_random, int) or isinstance(n_random, bool) or n_random < 0:
        raise SchemaError("random", "expected a nonnegative integer")
    groups = data.get("groups", sorted(STANDARD_GROUPS))
    primes = data.get("primes", [2, 3, 5])
    if not isinstance(groups, list) or any(g not in STANDARD_GROUPS for g in groups) or not groups:
        raise SchemaError("groups", f"choose from {sorted(STANDARD_GROUPS)}")
    if not isinstance(primes, list) or any(p not in (2, 3, 5, 7) for p in primes) or not primes:
        raise SchemaError("primes", "choose from 2, 3, 5, 7")
    rng = random.Random(cfg.seed)
    for _ in range(n_random):
        rels.append(random_instance(rng, rng.choice(groups), rng.choice(primes)))
    if not rels:
        raise SchemaError("relation", "no relations given")

    def run(rel):
        try:
            return compare(rel)
        except OracleScopeError as exc:
            return exc

    code = EXIT_OK
    for i, (rel, c) in enumerate(zip(rels, _fan_out(run, rels, cfg.jobs))):
        if isinstance(c, OracleScopeError):
            out.emit({"index": i, "relation": relation_to_data(rel), "error": str(c)},
                     f"[{i}] {rel.kind} b = {rel.b}: outside oracle scope: {c}")
            code = max(code, EXIT_SEMANTIC)
            continue
        rec = {"index": i, **_oracle_record(c)}
        o = c.oracle
        status = "agree" if c.agree else "MISMATCH " + ",".join(c.mismatches)
        out.emit(rec, f"[{i}] {rel.kind} over {rel.field.group}, p={rel.field.p}, b = {rel.b}: "
                      f"e={o.e} f={o.f} Omega {'= 0' if o.omega_zero else '!= 0'}; {status}")
        if not c.agree:
            code = max(code, EXIT_FALSE)
    return code


def example_checks() -> list[tuple[str, bool, str]]:
    """``(name, passed, detail)`` for the built-in worked examples."""
    out = []
    for p in (3, 5, 7):
        d = kahler_of(sqrt_p_over_perfectoid(p))
        dr = is_deeply_ramified(perfectoid_field(p)).value
        ok = d.is_zero and d.case == "e" and d.reason == "vq = 0 and isolated classes dense" and dr is True
        out.append((f"sqrt(p) over Z[1/p]-valued field, p={p}", ok,
                    f"{'Zero' if d.is_zero else 'Nonzero'}: {d.reason}; deeply ramified {dr}"))
    for p in (3, 5):
        d = kahler_of(root_of_t_composite(p))
        drvg, level = check_DRvg(composite_field(p).value_group)
        ok = (d.is_zero and d.reason == "vI ∩ C(vp) = ∅ and isolated classes dense" and drvg is False)
        out.append((f"t^(1/p) over Z[1/2] x (1/(p-1))Z, p={p}", ok,
                    f"{'Zero' if d.is_zero else 'Nonzero'}: {d.reason}; DRvg {drvg} (discrete level {level})"))
    for p in (2, 3):
        r = grthm_plus_report(laurent_field(p))
        ok = r.verdict.value is False and r.witnesses and all(not d.is_zero for _, _, d in r.witnesses)
        out.append((f"F_{p}((t)) witnesses", bool(ok),
                    "; ".join(f"{v.tag} -> case ({d.case}) {'Zero' if d.is_zero else 'Nonzero'}"
                              for v, _, d in r.witnesses)))
    for p in (2, 3, 5, 7):
        rows = [(m, *theta_m_generator(p, m)) for m in range(1, p)]
        ok = all(-ell * m == 1 - k * p and k + ell * Fraction(-m, p) == Fraction(1, p)
                 and val == Fraction(1, p) and ((ell == 1) == (m == p - 1))
                 for m, k, ell, val in rows)
        out.append((f"theta_m table, p={p}", ok,
                    " ".join(f"m={m}:(k={k},l={ell})" for m, k, ell, _ in rows)))
    return out


def _cmd_examples(cfg: RunConfig, out: _Out) -> int:
    code = EXIT_OK
    for name, ok, detail in example_checks():
        out.emit({"example": name, "pass": ok, "detail": detail},
                 f"{'PASS' if ok else 'FAIL'}  {name}: {detail}")
        if not ok:
            code = EXIT_FALSE
    return code


def run(cfg: RunConfig, stdout=None, stderr=None) -> int:
    stdout = stdout or sys.stdout
    stderr = stderr or sys.stderr
    out = _Out(cfg.format, stdout)
    if cfg.command == "examples":
        return _cmd_examples(cfg, out)
    try:
        data = load_config(cfg.input)
    except ConfigError as exc:
        stderr.write(f"{cfg.input}: parse error: {exc}\n")
        return EXIT_PARSE
    handler = {"classify": _cmd_classify, "classify-tower": _cmd_tower,
               "check-dr": _cmd_check_dr, "oracle-verify": _cmd_oracle}[cfg.command]
    try:
        return handler(data, cfg, out)
    except InconsistentWitnessError as exc:
        stderr.write(f"{cfg.input}: invalid descriptor:\n")
        for v in exc.violations:
            stderr.write(f"  - {v}\n")
        return EXIT_SEMANTIC
    except SEMANTIC_ERRORS as exc:
        stderr.write(f"{cfg.input}: {exc}\n")
        return EXIT_SEMANTIC


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="valdiff", description=__doc__.split("\n\n")[0])
    ap.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    ap.add_argument("command", choices=COMMANDS)
    ap.add_argument("--input", "-i", help="descriptor file (.toml or .json)")
    ap.add_argument("--format", "-f", choices=("human", "json-lines"), default="human")
    ap.add_argument("--seed", type=int, default=0, help="seed for randomized batches")
    ap.add_argument("--jobs", "-j", type=int, default=1, help="worker threads (output order is fixed)")
    return ap


def main(argv=None) -> int:
    ap = build_parser()
    args = ap.parse_args(argv)
    try:
        cfg = RunConfig(args.command, args.input, args.format, args.seed, max(1, args.jobs))
    except ValueError as exc:
        ap.error(str(exc))
    return run(cfg)


if __name__ == "__main__":
    sys.exit(main())
