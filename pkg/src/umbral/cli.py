"""Command-line front end.

Commands::

    umbral seq FAMILY      coefficient table of s_0 .. s_n_max
    umbral verify ID...    check registered identities ("all" for every one)
    umbral series TEXT     expand a series expression
    umbral list            families and identities

Exit codes: 0 success / every check passed, 1 some identity check failed,
2 usage or input error.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import sys
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

from . import __version__
from . import identities as ids_mod
from .dsl import evaluate, parse
from .errors import UmbralError
from .identities import Status, Variant
from .polynomial import Poly
from .sequences import (
    APPELL,
    PARAMETRIZED,
    Family,
    FamilyKind,
    family,
    family_pair_text,
    family_poly,
)
from .series import format_rat, parse_rat

FORMATS = ("text", "json", "csv")
VARIANTS = {"as-stated": [Variant.AS_STATED],
            "derivation": [Variant.DERIVATION_FORM],
            "both": [Variant.AS_STATED, Variant.DERIVATION_FORM]}


class UsageError(Exception):
    pass


@dataclass
class RunConfig:
    command: str
    n_max: int = 8
    trunc: int = 18
    params: dict[str, list[Fraction]] = field(default_factory=dict)
    format: str = "text"
    out: str | None = None
    ids: list[str] = field(default_factory=list)
    variant: str = "both"

    def to_json(self) -> dict:
        return {
            "n_max": self.n_max,
            "trunc": self.trunc,
            "params": {k: [format_rat(v) for v in vs] for k, vs in sorted(self.params.items())},
            "format": self.format,
            "ids": list(self.ids),
            "variant": self.variant,
        }

    def single(self) -> dict[str, Fraction]:
        out = {}
        for name, values in self.params.items():
            if len(values) != 1:
                raise UsageError(f"parameter {name!r} given {len(values)} times; "
                                 f"{self.command} needs a single value")
            out[name] = values[0]
        return out


def _param(text: str) -> tuple[str, Fraction]:
    name, sep, value = text.partition("=")
    name = name.strip()
    if not sep or not name.isidentifier():
        raise argparse.ArgumentTypeError(f"expected name=p/q, got {text!r}")
    try:
        return name, parse_rat(value)
    except ValueError as exc:
        raise argparse.ArgumentTypeError(f"{exc} (decimals are not exact; use p/q)") from None


def _natural(text: str) -> int:
    try:
        v = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected a non-negative integer, got {text!r}") from None
    if v < 0:
        raise argparse.ArgumentTypeError(f"expected a non-negative integer, got {text!r}")
    return v


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--n-max", type=_natural, default=None)
    common.add_argument("--trunc", type=_natural, default=None)
    common.add_argument("--param", type=_param, action="append", default=[],
                        metavar="NAME=P/Q", help="exact rational parameter (repeatable)")
    common.add_argument("--format", choices=FORMATS, default="text")
    common.add_argument("--out", metavar="PATH", default=None)

    parser = argparse.ArgumentParser(prog="umbral", description=__doc__.split("\n\n")[0])
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("seq", parents=[common], help="print a polynomial family")
    p.add_argument("family", choices=[k.value for k in FamilyKind])

    p = sub.add_parser("verify", parents=[common], help="verify identities")
    p.add_argument("ids", nargs="+", metavar="ID", help='identity ids or "all"')
    p.add_argument("--variant", choices=list(VARIANTS), default="both")

    p = sub.add_parser("series", parents=[common], help="expand a series expression")
    p.add_argument("text")

    sub.add_parser("list", parents=[common], help="list families and identities")
    return parser


def make_config(args: argparse.Namespace) -> RunConfig:
    n_max = 8 if args.n_max is None else args.n_max
    if args.command == "series" and args.n_max is None and args.trunc is not None:
        n_max = args.trunc  # series has no row count of its own
    trunc = 2 * n_max + 2 if args.trunc is None else args.trunc
    if trunc < n_max:
        print(f"warning: --trunc {trunc} is below --n-max {n_max}; raised to {n_max}",
              file=sys.stderr)
        trunc = n_max
    params: dict[str, list[Fraction]] = {}
    for name, value in args.param:
        params.setdefault(name, []).append(value)
    cfg = RunConfig(args.command, n_max, trunc, params, args.format, args.out)
    if args.command == "verify":
        cfg.ids = list(args.ids)
        cfg.variant = args.variant
    return cfg


# -- rendering helpers ---------------------------------------------------------

def _value_json(v):
    if isinstance(v, Poly):
        return [format_rat(c) for c in v.coeffs] or ["0"]
    return format_rat(v)


def _value_text(v) -> str:
    return str(v) if isinstance(v, Poly) else format_rat(v)


def _value_csv(v) -> str:
    return " ".join(_value_json(v)) if isinstance(v, Poly) else format_rat(v)


def _params_text(params) -> str:
    return ",".join(f"{k}={format_rat(v)}" for k, v in params)


def _emit_json(cfg: RunConfig, results: list, **extra) -> str:
    doc = {
        "tool_version": __version__,
        "command": cfg.command,
        "config": dict(cfg.to_json(), **extra),
        "results": results,
    }
    return json.dumps(doc, indent=2) + "\n"


def _emit_csv(header: Sequence[str], rows: list[Sequence[str]]) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(header)
    w.writerows(rows)
    return buf.getvalue()


# -- commands --------------------------------------------------------------------

def cmd_seq(cfg: RunConfig, name: str) -> tuple[str, int]:
    fam = family(name, cfg.single())
    g_text, f_text = family_pair_text(fam)
    rows = [family_poly(fam, n) for n in range(cfg.n_max + 1)]
    width = cfg.n_max + 1
    if cfg.format == "json":
        results = [{"n": n, "coeffs": [format_rat(c) for c in p.dense(width)]}
                   for n, p in enumerate(rows)]
        return _emit_json(cfg, results, family=str(fam), g=g_text, f=f_text), 0
    if cfg.format == "csv":
        header = ["n"] + [f"coeff{m}" for m in range(width)]
        return _emit_csv(header, [[str(n)] + [format_rat(c) for c in p.dense(width)]
                                  for n, p in enumerate(rows)]), 0
    lines = [f"# {fam} ~ (g, f) = ({g_text}, {f_text})"]
    for n, p in enumerate(rows):
        coeffs = ", ".join(format_rat(c) for c in p.dense(n + 1))
        lines.append(f"n={n}: [{coeffs}]    {p}")
    return "\n".join(lines) + "\n", 0


def cmd_verify(cfg: RunConfig) -> tuple[str, int]:
    selected = None if cfg.ids == ["all"] else cfg.ids
    if selected is not None and "all" in selected:
        raise UsageError('"all" cannot be combined with other ids')
    reports = ids_mod.verify_all(cfg.n_max, cfg.params or None, VARIANTS[cfg.variant],
                                 selected, k_max=cfg.trunc)
    ok = all(r.passed for r in reports)
    code = 0 if ok else 1

    entries = []
    for r in reports:
        for o in r.outcomes:
            e = {
                "id": r.id,
                "variant": r.variant.value,
                "n": o.n,
                "check": o.check,
                "index": list(o.index),
                "params": {k: format_rat(v) for k, v in o.params},
                "status": o.status.value,
            }
            if o.status is Status.FAIL:
                e["lhs"], e["rhs"], e["diff"] = (_value_json(o.lhs), _value_json(o.rhs),
                                                 _value_json(o.diff))
            if o.message:
                e["message"] = o.message
            entries.append((r, o, e))

    if cfg.format == "json":
        return _emit_json(cfg, [e for _, _, e in entries]), code
    if cfg.format == "csv":
        header = ["id", "variant", "n", "check", "index", "params", "status", "lhs", "rhs", "diff"]
        rows = []
        for r, o, _ in entries:
            sides = ([_value_csv(o.lhs), _value_csv(o.rhs), _value_csv(o.diff)]
                     if o.status is Status.FAIL else ["", "", ""])
            rows.append([r.id, r.variant.value, str(o.n), o.check,
                         " ".join(map(str, o.index)), _params_text(o.params), o.status.value]
                        + sides)
        return _emit_csv(header, rows), code

    lines = []
    for r in reports:
        bad = r.failures()
        total = len(r.outcomes)
        verdict = "PASS" if not bad else "FAIL"
        lines.append(f"{r.id:<10} {r.variant.value:<11} {verdict}  "
                     f"{total - len(bad)}/{total} checks passed")
        for o in bad:
            where = f"n={o.n}"
            if o.index:
                where += f" index={','.join(map(str, o.index))}"
            if o.params:
                where += f" {_params_text(o.params)}"
            if o.status is Status.ERROR:
                lines.append(f"    ERROR {where}: {o.message}")
                continue
            lines.append(f"    FAIL {o.check} {where}")
            lines.append(f"      lhs      = {_value_text(o.lhs)}")
            lines.append(f"      rhs      = {_value_text(o.rhs)}")
            lines.append(f"      lhs-rhs  = {_value_text(o.diff)}")
    lines.append(f"overall: {'PASS' if ok else 'FAIL'}")
    return "\n".join(lines) + "\n", code


def cmd_series(cfg: RunConfig, text: str) -> tuple[str, int]:
    s = evaluate(parse(text), cfg.single(), cfg.trunc)
    rows = [(k, s[k], s.umbral(k)) for k in range(s.trunc + 1)]
    if cfg.format == "json":
        results = [{"k": k, "c_k": format_rat(c), "a_k": format_rat(a)} for k, c, a in rows]
        return _emit_json(cfg, results, expression=text), 0
    if cfg.format == "csv":
        return _emit_csv(["k", "c_k", "a_k"],
                         [[str(k), format_rat(c), format_rat(a)] for k, c, a in rows]), 0
    width = max(len(format_rat(c)) for _, c, _ in rows)
    lines = [f"# {text}  (c_k ordinary, a_k = k! c_k)", f"{'k':>3}  {'c_k':>{width}}  a_k"]
    lines += [f"{k:>3}  {format_rat(c):>{width}}  {format_rat(a)}" for k, c, a in rows]
    return "\n".join(lines) + "\n", 0


def cmd_list(cfg: RunConfig) -> tuple[str, int]:
    fams = []
    for kind in FamilyKind:
        probe = Family(kind, Fraction(1) if kind in PARAMETRIZED else None)
        g, f = family_pair_text(probe)
        if kind in APPELL:
            g = g.replace("^1", "^r")
        fams.append({"name": kind.value, "param": probe.param_name, "g": g, "f": f})
    idents = []
    for desc in ids_mod.REGISTRY.values():
        idents.append({
            "id": desc.id,
            "kind": desc.statement_kind.value,
            "params": list(desc.params),
            "n_min": desc.n_min,
            "statement": desc.statement,
            "derivation": desc.derivation_statement,
        })
    if cfg.format == "json":
        return _emit_json(cfg, [{"families": fams, "identities": idents}]), 0
    if cfg.format == "csv":
        rows = [["family", f["name"], f["param"] or "", f"({f['g']}, {f['f']})"] for f in fams]
        rows += [["identity", i["id"], " ".join(i["params"]), i["statement"]] for i in idents]
        return _emit_csv(["type", "name", "params", "description"], rows), 0
    lines = ["families:"]
    for f in fams:
        p = f" [{f['param']}]" if f["param"] else ""
        lines.append(f"  {f['name'] + p:<22} ~ ({f['g']}, {f['f']})")
    lines.append("identities:")
    for i in idents:
        p = f" [{','.join(i['params'])}]" if i["params"] else ""
        lines.append(f"  {i['id'] + p:<16} {i['statement']}")
        if i["derivation"]:
            lines.append(f"  {'':<16}   derivation: {i['derivation']}")
    return "\n".join(lines) + "\n", 0


def run(argv: Sequence[str] | None = None) -> tuple[str, int]:
    """Parse ``argv`` and return the rendered output together with the exit code."""
    return execute(make_config_from(argv))


def make_config_from(argv: Sequence[str] | None) -> tuple[RunConfig, argparse.Namespace]:
    args = build_parser().parse_args(argv)
    return make_config(args), args


def execute(parsed: tuple[RunConfig, argparse.Namespace]) -> tuple[str, int]:
    cfg, args = parsed
    if cfg.command == "seq":
        return cmd_seq(cfg, args.family)
    if cfg.command == "verify":
        return cmd_verify(cfg)
    if cfg.command == "series":
        return cmd_series(cfg, args.text)
    return cmd_list(cfg)


def main(argv: Sequence[str] | None = None) -> int:
    try:
        parsed = make_config_from(argv)
        text, code = execute(parsed)
    except SystemExit as exc:  # argparse already printed the usage error
        return int(exc.code) if exc.code is not None else 0
    except (UmbralError, UsageError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    out = parsed[0].out
    if out:
        with open(out, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return code


if __name__ == "__main__":
    sys.exit(main())
