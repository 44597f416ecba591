"""Command-line front end: scenario files in, deterministic reports out.

Exit codes: 0 when every verdict passes (or the command is a plain query),
1 when a verdict fails, 2 for input errors and failed certificates.
"""

from __future__ import annotations

import argparse
import hashlib
import json
import os
import re
import shlex
import sys
import time
from dataclasses import dataclass, field
from importlib import resources
from typing import Dict, List, Optional, Tuple

import jsonschema

from . import __version__
from .complexes import koszul_complex, homology
from .groebner import Ideal
from .intersect import (
    DEFAULT_DEGREE_BOUND,
    CertificationError,
    CIVariety,
    IntersectionInstance,
    is_regular_sequence,
    is_tor_independent,
    les_verify,
    multitor,
    verify_excess_formula,
    verify_self_intersection,
)
from .modules import FPModule, NonHomogeneousError, hilbert_function
from .ring import GF, QQ, FieldError, ParseError, PolyRing, format_polynomial, order_from_name

ENV_DEGREE_BOUND = "LCITOR_DEGREE_BOUND"
SCHEMA_VERSION = 1

IDEAL_COMMANDS = {"gb", "dim", "regular", "koszul", "self-check"}
INSTANCE_COMMANDS = {"tor", "excess-check", "les-check"}
COMMANDS = sorted(IDEAL_COMMANDS | INSTANCE_COMMANDS | {"independent"})


class InputError(Exception):
    """Bad scenario or command line. ``location`` is ``path:line`` or a flag."""

    def __init__(self, message: str, location: str = ""):
        super().__init__(message)
        self.location = location

    def __str__(self):
        msg = super().__str__()
        return f"{self.location}: {msg}" if self.location else msg


def load_schema(name: str) -> dict:
    text = resources.files("lcitor").joinpath("schemas", f"{name}.schema.json").read_text("utf-8")
    return json.loads(text)


# ----------------------------------------------------------------------------
# Scenario files
# ----------------------------------------------------------------------------


@dataclass
class Scenario:
    data: dict
    path: str = "<scenario>"
    digest: str = ""
    lines: Dict[str, int] = field(default_factory=dict)

    def where(self, name: str) -> str:
        line = self.lines.get(name)
        return f"{self.path}:{line}" if line else self.path


_LIST_RE = re.compile(r"^\[(.*)\]$", re.S)
_IDEAL_RE = re.compile(r"^ideal\s+([A-Za-z_]\w*)\s*=\s*(.*)$")
_INST_RE = re.compile(r"^instance\s+([A-Za-z_]\w*)\s*=\s*\{(.*)\}$")


def _split_list(text: str, where: str) -> List[str]:
    m = _LIST_RE.match(text.strip())
    if not m:
        raise InputError(f"expected a bracketed list, got {text.strip()!r}", where)
    body = m.group(1).strip()
    return [p.strip() for p in body.split(",")] if body else []


def _parse_check(tokens: List[str], where: str) -> dict:
    if not tokens:
        raise InputError("empty check", where)
    check: dict = {"command": tokens[0], "args": []}
    it = iter(tokens[1:])
    for tok in it:
        if tok in ("--q", "--degree-bound"):
            val = next(it, None)
            if val is None or not val.isdigit():
                raise InputError(f"{tok} needs a non-negative integer", where)
            check["q" if tok == "--q" else "degree_bound"] = int(val)
        elif tok == "--homology":
            check["homology"] = True
        elif tok.startswith("-"):
            raise InputError(f"unknown check option {tok}", where)
        else:
            check["args"].append(tok)
    return check


def parse_scenario_text(text: str, path: str = "<scenario>") -> Tuple[dict, Dict[str, int]]:
    """Line-oriented scenario format to its JSON form (plus name → line)."""
    data: dict = {"ideals": {}, "instances": {}, "checks": []}
    lines: Dict[str, int] = {}
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        where = f"{path}:{lineno}"
        key, _, rest = line.partition(" ")
        rest = rest.strip()
        if key == "field":
            data["field"] = "Q" if rest in ("Q", "QQ") else _int(rest, where)
            lines["field"] = lineno
        elif key == "vars":
            data["vars"] = rest.replace(",", " ").split()
            lines["vars"] = lineno
        elif key == "order":
            data["order"] = rest
        elif key == "seed":
            data["seed"] = _int(rest, where)
        elif key == "description":
            data["description"] = rest
        elif key == "ideal":
            m = _IDEAL_RE.match(line)
            if not m:
                raise InputError("malformed ideal line; expected `ideal NAME = [f, ...]`", where)
            name = m.group(1)
            if name in data["ideals"] or name in data["instances"]:
                raise InputError(f"duplicate name {name!r}", where)
            data["ideals"][name] = _split_list(m.group(2), where)
            lines[name] = lineno
        elif key == "instance":
            m = _INST_RE.match(line)
            if not m:
                raise InputError("malformed instance; expected `instance NAME = {A, B; W = [...]}`",
                                 where)
            name = m.group(1)
            if name in data["ideals"] or name in data["instances"]:
                raise InputError(f"duplicate name {name!r}", where)
            head, _, tail = m.group(2).partition(";")
            inst: dict = {"varieties": [p.strip() for p in head.split(",") if p.strip()]}
            tail = tail.strip()
            if tail:
                wkey, _, wval = tail.partition("=")
                if wkey.strip() != "W":
                    raise InputError("instance tail must read `W = [...]`", where)
                inst["W"] = _split_list(wval, where)
            data["instances"][name] = inst
            lines[name] = lineno
        elif key == "check":
            check = _parse_check(shlex.split(rest), where)
            lines[f"check#{len(data['checks'])}"] = lineno
            data["checks"].append(check)
        else:
            raise InputError(f"unknown directive {key!r}", where)
    return data, lines


def _int(text: str, where: str) -> int:
    try:
        return int(text)
    except ValueError:
        raise InputError(f"expected an integer, got {text!r}", where) from None


def load_scenario(path: str) -> Scenario:
    try:
        with open(path, "rb") as fh:
            raw = fh.read()
    except OSError as exc:
        raise InputError(f"cannot read scenario: {exc.strerror}", path) from None
    text = raw.decode("utf-8")
    if text.lstrip().startswith("{"):
        try:
            data = json.loads(text)
        except json.JSONDecodeError as exc:
            raise InputError(f"invalid JSON: {exc.msg}", f"{path}:{exc.lineno}") from None
        lines: Dict[str, int] = {}
    else:
        data, lines = parse_scenario_text(text, path)
    try:
        jsonschema.validate(data, load_schema("scenario"))
    except jsonschema.ValidationError as exc:
        loc = "/".join(str(p) for p in exc.absolute_path)
        raise InputError(f"scenario does not validate: {exc.message}", f"{path}:{loc}" if loc else path)
    sc = Scenario(data, path, hashlib.sha256(raw).hexdigest(), lines)
    _check_names(sc)
    _check_polynomials(sc)
    return sc


def _check_names(sc: Scenario) -> None:
    ideals = sc.data.get("ideals", {})
    for name, inst in sc.data.get("instances", {}).items():
        for v in inst["varieties"]:
            if v not in ideals:
                raise InputError(f"instance {name!r} refers to unknown ideal {v!r}", sc.where(name))
    for i, check in enumerate(sc.data.get("checks", [])):
        try:
            _resolve_targets(sc, check["command"], check.get("args", []))
        except InputError as exc:
            line = sc.lines.get(f"check#{i}")
            raise InputError(str(exc.args[0]), f"{sc.path}:{line}" if line else sc.path) from None


def _check_polynomials(sc: Scenario) -> None:
    """Build the ring and parse every polynomial once, so malformed input is
    reported at load time even if no check touches it."""
    s = Session(sc)
    for name in sc.data.get("ideals", {}):
        s.gens(name)
    for name, inst in sc.data.get("instances", {}).items():
        if "W" in inst:
            s._parse_all(name, inst["W"])


def _resolve_targets(sc: Scenario, command: str, args: List[str]) -> None:
    ideals = sc.data.get("ideals", {})
    instances = sc.data.get("instances", {})
    if command in IDEAL_COMMANDS:
        want, pool, kind = 1, ideals, "ideal"
    elif command in INSTANCE_COMMANDS:
        want, pool, kind = 1, instances, "instance"
    elif command == "independent":
        want, pool, kind = 2, ideals, "ideal"
    else:
        raise InputError(f"unknown command {command!r}")
    if len(args) != want:
        raise InputError(f"{command} takes {want} {kind} name{'s' if want > 1 else ''}, got {len(args)}")
    for a in args:
        if a not in pool:
            known = ", ".join(sorted(pool)) or "none"
            raise InputError(f"unknown {kind} {a!r} (known: {known})")


# ----------------------------------------------------------------------------
# Evaluation
# ----------------------------------------------------------------------------


class Session:
    """Rings, ideals and certified objects of one scenario, built lazily."""

    def __init__(self, sc: Scenario, order: Optional[str] = None):
        self.sc = sc
        d = sc.data
        fld = d["field"]
        try:
            self.field = QQ if fld in ("Q", "QQ") else GF(int(fld))
        except FieldError as exc:
            raise InputError(str(exc), sc.where("field")) from None
        self.order_name = order or d.get("order", "grevlex")
        try:
            ord_ = order_from_name(self.order_name)
        except ValueError as exc:
            raise InputError(str(exc), "--order") from None
        if len(set(d["vars"])) != len(d["vars"]):
            raise InputError("variable names must be unique", sc.where("vars"))
        self.ring = PolyRing(self.field, d["vars"], ord_)
        self._ideals: Dict[str, Ideal] = {}
        self._gens: Dict[str, list] = {}
        self._varieties: Dict[str, CIVariety] = {}
        self._instances: Dict[str, IntersectionInstance] = {}

    def _parse_all(self, name: str, texts: List[str]):
        out = []
        for t in texts:
            try:
                out.append(self.ring.parse(t))
            except (ParseError, FieldError, ValueError) as exc:
                raise InputError(f"in {name!r}, cannot parse {t!r}: {exc}", self.sc.where(name)) from None
        return out

    def gens(self, name: str) -> list:
        if name not in self._gens:
            self._gens[name] = self._parse_all(name, self.sc.data["ideals"][name])
        return self._gens[name]

    def ideal(self, name: str) -> Ideal:
        if name not in self._ideals:
            self._ideals[name] = Ideal(self.ring, self.gens(name))
        return self._ideals[name]

    def variety(self, name: str) -> CIVariety:
        if name not in self._varieties:
            try:
                self._varieties[name] = CIVariety(name, self.ring, self.gens(name))
            except (CertificationError, ValueError) as exc:
                raise InputError(f"certificate failed: regularity of ideal {name!r} "
                                 f"[{', '.join(map(str, self.gens(name)))}]: {exc}",
                                 self.sc.where(name)) from None
        return self._varieties[name]

    def instance(self, name: str) -> IntersectionInstance:
        if name not in self._instances:
            spec = self.sc.data["instances"][name]
            Ys = [self.variety(v) for v in spec["varieties"]]
            w = self._parse_all(name, spec["W"]) if "W" in spec else None
            try:
                self._instances[name] = IntersectionInstance(name, Ys, w)
            except CertificationError as exc:
                raise InputError(f"certificate failed for instance {name!r}: {exc}",
                                 self.sc.where(name)) from None
        return self._instances[name]


def _poly(f) -> str:
    return format_polynomial(f)


def _module_row(q: int, M: FPModule, bound: int) -> dict:
    try:
        hf = hilbert_function(M, bound).to_list()
    except NonHomogeneousError:
        hf = None
    return {"q": q, "zero": M.is_zero(), "ngens": M.ngens,
            "generator_degrees": list(M.degrees) if M.degrees is not None else None,
            "hilbert_function": hf}


def cmd_gb(s: Session, name: str, opts: dict) -> dict:
    G = s.ideal(name).gb
    return {"status": "info", "basis": [_poly(g) for g in G.polynomials]}


def cmd_dim(s: Session, name: str, opts: dict) -> dict:
    I = s.ideal(name)
    dim = I.krull_dimension()
    return {"status": "info", "krull_dimension": dim, "nvars": s.ring.nvars,
            "height": None if dim < 0 else s.ring.nvars - dim, "unit": dim < 0}


def cmd_regular(s: Session, name: str, opts: dict) -> dict:
    try:
        rep = is_regular_sequence(s.gens(name))
    except ValueError as exc:
        raise InputError(f"regular {name}: {exc}", s.sc.where(name)) from None
    out = {"status": "info", "regular": rep.regular, "koszul": rep.koszul,
           "koszul_failure_degree": rep.koszul_failure_degree, "height": rep.height_value,
           "length": len(s.gens(name)), "height_criterion": rep.height_criterion,
           "homogeneous": rep.homogeneous, "oracles_agree": rep.oracles_agree}
    if rep.oracles_agree is False:
        out["status"] = "fail"
        out["error"] = "Koszul and height criteria disagree"
    return out


def cmd_koszul(s: Session, name: str, opts: dict) -> dict:
    fs = s.gens(name)
    if not fs:
        raise InputError(f"koszul {name}: empty sequence", s.sc.where(name))
    K = koszul_complex(fs)
    out: dict = {"status": "info",
                 "ranks": [K.rank(q) for q in range(K.lo, K.hi + 1)],
                 "generator_degrees": [list(K.module_degrees(q) or ()) for q in range(K.lo, K.hi + 1)],
                 "differentials": {
                     str(q): [[_poly(K.d(q).entry(i, j)) for j in range(K.rank(q))]
                              for i in range(K.rank(q - 1))]
                     for q in range(K.lo + 1, K.hi + 1)}}
    if opts.get("homology"):
        out["modules"] = [_module_row(q, homology(K, q), opts["degree_bound"])
                          for q in range(K.lo, K.hi + 1)]
    return out


def cmd_tor(s: Session, name: str, opts: dict) -> dict:
    inst = s.instance(name)
    qs = [opts["q"]] if opts.get("q") is not None else list(range(inst.codim_sum + 1))
    return {"status": "info", "excess": inst.excess, "empty": inst.empty,
            "modules": [_module_row(q, multitor(inst.varieties, q), opts["degree_bound"]) for q in qs]}


def cmd_independent(s: Session, a: str, b: str, opts: dict) -> dict:
    A, B = s.variety(a), s.variety(b)
    indep = is_tor_independent(A, B)
    rows = [_module_row(q, multitor([A, B], q), opts["degree_bound"])
            for q in range(1, A.codim + B.codim + 1)]
    return {"status": "info", "independent": indep, "modules": rows}


def _verdict_result(fn, *args) -> dict:
    try:
        v = fn(*args)
    except NonHomogeneousError as exc:
        raise InputError(f"verdicts need homogeneous input: {exc}") from None
    except CertificationError as exc:
        raise InputError(f"certificate failed: {exc}") from None
    return {"status": "pass" if v.passed else "fail", "verdict": v.to_dict()}


def cmd_self_check(s: Session, name: str, opts: dict) -> dict:
    return _verdict_result(verify_self_intersection, s.variety(name), opts["degree_bound"])


def cmd_excess_check(s: Session, name: str, opts: dict) -> dict:
    out = _verdict_result(verify_excess_formula, s.instance(name), opts["degree_bound"])
    inst = s.instance(name)
    qs = range((inst.excess or 0) + 2)
    out["modules"] = [_module_row(q, multitor(inst.varieties, q), opts["degree_bound"]) for q in qs]
    return out


def cmd_les_check(s: Session, name: str, opts: dict) -> dict:
    inst = s.instance(name)
    if len(inst.varieties) != 2:
        raise InputError(f"les-check needs an instance of two varieties, {name!r} has "
                         f"{len(inst.varieties)}", s.sc.where(name))
    return _verdict_result(les_verify, inst, opts["degree_bound"])


HANDLERS = {
    "gb": cmd_gb, "dim": cmd_dim, "regular": cmd_regular, "koszul": cmd_koszul,
    "tor": cmd_tor, "independent": cmd_independent, "self-check": cmd_self_check,
    "excess-check": cmd_excess_check, "les-check": cmd_les_check,
}


def run_check(s: Session, command: str, args: List[str], opts: dict) -> dict:
    _resolve_targets(s.sc, command, args)
    result = HANDLERS[command](s, *args, opts)
    return {"command": command, "args": list(args), **result}


def build_report(sc: Scenario, jobs: List[Tuple[str, List[str], dict]], order: Optional[str],
                 degree_bound: int, timings: bool = False) -> dict:
    s = Session(sc, order)
    results, times, warnings = [], {}, []
    if s.field.characteristic != 0:
        warnings.append(f"field GF({s.field.characteristic}) has positive characteristic: "
                        "verdicts fall outside the characteristic-0 hypotheses")
    exit_code = 0
    for i, (command, args, extra) in enumerate(jobs):
        opts = {"degree_bound": degree_bound, **extra}
        t0 = time.perf_counter()
        try:
            res = run_check(s, command, args, opts)
        except InputError as exc:
            res = {"command": command, "args": list(args), "status": "error", "error": str(exc)}
            exit_code = 2
        times[f"{i}:{command} {' '.join(args)}".strip()] = round(time.perf_counter() - t0, 6)
        if res["status"] == "fail" and exit_code == 0:
            exit_code = 1
        for row in (res.get("verdict") or {}).get("rows", []):
            if row["shift"]:
                warnings.append(f"{command} {' '.join(args)}: q={row['q']} differs by a uniform "
                                f"degree shift of {row['shift']}")
        results.append(res)
    report = {
        "tool": "lcitor", "version": __version__, "schema_version": SCHEMA_VERSION,
        "scenario_hash": sc.digest,
        "ring": {"field": repr(s.field), "vars": list(s.ring.variables), "order": s.order_name},
        "degree_bound": degree_bound, "results": results, "warnings": warnings,
        "exit_code": exit_code,
    }
    if timings:
        report["timings"] = times
    return report


# ----------------------------------------------------------------------------
# Human-readable output
# ----------------------------------------------------------------------------


def _hf(hf) -> str:
    return "n/a (not graded)" if hf is None else " ".join(map(str, hf))


def format_result(res: dict) -> List[str]:
    head = f"{res['command']} {' '.join(res['args'])}".strip()
    st = res["status"]
    out = [f"== {head} [{st}]"]
    if st == "error":
        out.append(f"  error: {res['error']}")
        return out
    if "basis" in res:
        out += [f"  {g}" for g in res["basis"]]
    if "krull_dimension" in res:
        out.append(f"  dim R/I = {res['krull_dimension']}, height = {res['height']}")
    if "regular" in res:
        out.append(f"  regular: {res['regular']} (Koszul: {res['koszul']}, height {res['height']} "
                   f"vs length {res['length']}, height criterion: {res['height_criterion']})")
    if "ranks" in res:
        out.append(f"  ranks: {res['ranks']}")
        for q, mat in res["differentials"].items():
            out.append(f"  d{q} = {mat}")
    if "independent" in res:
        out.append(f"  Tor-independent: {res['independent']}")
    if "excess" in res and "verdict" not in res:
        out.append(f"  excess codimension: {res['excess']}")
    for m in res.get("modules", []):
        label = "0" if m["zero"] else f"{m['ngens']} generator(s), degrees {m['generator_degrees']}"
        out.append(f"  H/Tor_{m['q']}: {label}; HF {_hf(m['hilbert_function'])}")
    v = res.get("verdict")
    if v:
        out.append(f"  {v['claim']}: {'PASS' if v['passed'] else 'FAIL'} (degree bound {v['degree_bound']})")
        for r in v["rows"]:
            mark = "=" if r["equal"] else "≠"
            out.append(f"    q={r['q']}: {_hf(r['left'])}  {mark}  {_hf(r['right'])}")
        for k, val in sorted(v.get("extra", {}).items()):
            out.append(f"    {k}: {val}")
        out += [f"    note: {d}" for d in v["diagnostics"]]
    if res.get("error"):
        out.append(f"  error: {res['error']}")
    return out


def format_report(report: dict) -> str:
    lines = [f"lcitor {report['version']}  scenario {report['scenario_hash'][:12]}  "
             f"{report['ring']['field']}[{', '.join(report['ring']['vars'])}] {report['ring']['order']}"]
    for res in report["results"]:
        lines += format_result(res)
    lines += [f"warning: {w}" for w in report["warnings"]]
    if "timings" in report:
        lines.append("timings (s):")
        lines += [f"  {k}: {v}" for k, v in report["timings"].items()]
    return "\n".join(lines)


# ----------------------------------------------------------------------------
# Entry point
# ----------------------------------------------------------------------------


def _default_bound() -> int:
    raw = os.environ.get(ENV_DEGREE_BOUND)
    if raw is None:
        return DEFAULT_DEGREE_BOUND
    if not raw.strip().isdigit():
        raise InputError(f"{ENV_DEGREE_BOUND} must be a non-negative integer, got {raw!r}")
    return int(raw)


def make_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(
        prog="lcitor",
        description="Multitors, Koszul homology and excess-intersection checks on scenario files.")
    p.add_argument("--version", action="version", version=f"lcitor {__version__}")
    sub = p.add_subparsers(dest="command", required=True, metavar="COMMAND")

    def common(sp):
        sp.add_argument("-s", "--scenario", required=True, help="scenario file (text or JSON)")
        sp.add_argument("--degree-bound", type=int, default=None,
                        help=f"Hilbert function degree bound (default {DEFAULT_DEGREE_BOUND}, "
                             f"or ${ENV_DEGREE_BOUND})")
        sp.add_argument("--order", choices=["grevlex", "lex"], default=None)
        sp.add_argument("--json", action="store_true", help="emit the JSON report")
        sp.add_argument("--quiet", action="store_true", help="print nothing; exit code only")
        sp.add_argument("--timings", action="store_true", help="append per-command timings")

    helps = {
        "gb": "reduced Gröbner basis of an ideal", "dim": "Krull dimension and height",
        "regular": "regular-sequence test (Koszul and height oracles)",
        "koszul": "Koszul complex of an ideal's generators",
        "tor": "multitor modules of an instance", "independent": "Tor-independence of two ideals",
        "self-check": "self-intersection formula", "excess-check": "excess intersection formula",
        "les-check": "long exact sequence checks for a pair",
    }
    for name in COMMANDS:
        sp = sub.add_parser(name, help=helps[name])
        sp.add_argument("names", nargs="*", metavar="NAME")
        common(sp)
        if name == "koszul":
            sp.add_argument("--homology", action="store_true")
        if name == "tor":
            sp.add_argument("--q", type=int, default=None)
    sp = sub.add_parser("run", help="run every check listed in the scenario")
    common(sp)
    sp = sub.add_parser("validate", help="parse and validate a scenario, print its JSON form")
    sp.add_argument("-s", "--scenario", required=True)
    return p


def main(argv: Optional[List[str]] = None) -> int:
    args = make_parser().parse_args(argv)
    try:
        sc = load_scenario(args.scenario)
        if args.command == "validate":
            print(json.dumps(sc.data, indent=2, sort_keys=True))
            return 0
        bound = args.degree_bound if args.degree_bound is not None else _default_bound()
        if bound < 0:
            raise InputError("degree bound must be non-negative", "--degree-bound")
        if args.command == "run":
            jobs = [(c["command"], c.get("args", []),
                     {k: c[k] for k in ("q", "homology") if k in c} |
                     ({"degree_bound": c["degree_bound"]} if "degree_bound" in c else {}))
                    for c in sc.data.get("checks", [])]
            if not jobs:
                raise InputError("scenario lists no checks", sc.path)
        else:
            extra = {}
            if getattr(args, "homology", False):
                extra["homology"] = True
            if getattr(args, "q", None) is not None:
                if args.q < 0:
                    raise InputError("--q must be non-negative", "--q")
                extra["q"] = args.q
            try:
                _resolve_targets(sc, args.command, args.names)
            except InputError as exc:
                raise InputError(str(exc), f"command line (scenario {sc.path})") from None
            jobs = [(args.command, args.names, extra)]
        report = build_report(sc, jobs, args.order, bound, timings=args.timings)
    except InputError as exc:
        if not getattr(args, "quiet", False):
            print(f"lcitor: error: {exc}", file=sys.stderr)
        return 2
    if not args.quiet:
        if args.json:
            print(json.dumps(report, indent=2, sort_keys=True, ensure_ascii=False))
        else:
            print(format_report(report))
    return report["exit_code"]


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
