"""Command-line front end: ``cmverify <command> [options]``.

Every command prints a plain-text table by default and a JSON report with
``--json``.  Reports are deterministic: no timestamps, sorted keys, and a
fixed indentation, so repeated runs are byte-identical.

Exit codes: 0 success, 2 bad input, 3 an exact-sequence contradiction.
"""

from __future__ import annotations

import argparse
import contextlib
import json
import sys
from math import gcd
from typing import Sequence, TextIO

from . import tower as tw
from .abelian import CoefficientRing, SymbolicGroup
from .chaincomplex import (
    GradedGroupTable,
    cohomology_with_coefficients,
    homology_with_coefficients,
    lens_complex,
    suspension_homology,
)
from .exactseq import InconsistencyError
from .primes import PrimeSet
from .solenoid import (
    ASSUMPTIONS,
    COMPUTED,
    MODEL_ASSUMPTION,
    Cell,
    ClcReport,
    CohomologyTable,
    SolenoidModel,
    clc_report,
    complement_cohomology,
    local_cohomology_at_wild_point,
    quotient_pair_cohomology,
)
from .verdict import ClassificationVerdict, Condition, Outcome, classify

SCHEMA_VERSION = 1

EXIT_OK, EXIT_BAD_INPUT, EXIT_INCONSISTENT = 0, 2, 3


class BadInput(Exception):
    pass


# ---------------------------------------------------------------------------
# report fragments


def cell_json(degree: int | None, value: SymbolicGroup, provenance: str,
              trace: Sequence[str] | None = None) -> dict:
    out = {"value": value.to_json(), "provenance": provenance}
    if degree is not None:
        out["degree"] = degree
    if trace is not None:
        out["trace"] = list(trace)
    return out


def graded_json(t: GradedGroupTable, with_trace: bool) -> list[dict]:
    return [cell_json(n, g, COMPUTED, [] if with_trace else None) for n, g in enumerate(t.as_list())]


def solenoid_cell_json(degree: int, c: Cell, with_trace: bool) -> dict:
    return cell_json(degree, c.value, c.provenance, c.trace() if with_trace else None)


def table_json(t: CohomologyTable, with_trace: bool) -> list[dict]:
    return [solenoid_cell_json(n, c, with_trace) for n, c in t.cells]


def clc_json(report: ClcReport, with_trace: bool) -> list[dict]:
    return [{"degree": d.degree, "holds": d.holds, "reason": d.reason, "provenance": d.provenance,
             "evidence": solenoid_cell_json(d.degree, d.evidence, with_trace)} for d in report.degrees]


def assumptions_json() -> list[dict]:
    return [{"key": k, "statement": s, "provenance": MODEL_ASSUMPTION} for k, s in ASSUMPTIONS]


def render(doc: dict) -> str:
    return json.dumps(doc, sort_keys=True, indent=2) + "\n"


# ---------------------------------------------------------------------------
# plain-text helpers


def fmt_table(label: str, values: Sequence[SymbolicGroup], start: int = 0) -> str:
    cols = [f"{n}: {v}" for n, v in enumerate(values, start)]
    return f"{label}  " + "   ".join(cols)


def fmt_cells(t: CohomologyTable, with_trace: bool) -> list[str]:
    lines = []
    for n, c in t.cells:
        lines.append(f"  n={n}  {str(c.value):<34} [{c.provenance}]")
        if with_trace:
            lines.extend(f"        {line}" for line in c.trace())
    return lines


# ---------------------------------------------------------------------------
# commands


def _ring(text: str) -> CoefficientRing:
    try:
        return CoefficientRing.parse(text)
    except ValueError as e:
        raise BadInput(str(e)) from None


def _primes(text: str) -> PrimeSet:
    try:
        return PrimeSet.parse(text)
    except ValueError as e:
        raise BadInput(f"bad prime set {text!r}: {e}") from None


def _q(value: int) -> int:
    if value < 1:
        raise BadInput(f"--q must be >= 1, got {value}")
    return value


def _lens_tables(q: int, r: CoefficientRing):
    c = lens_complex(q)
    out = {}
    for kind, fn in (("homology", homology_with_coefficients), ("cohomology", cohomology_with_coefficients)):
        uct = fn(c, r, "uct")
        field = fn(c, r, "field") if r.is_field else None
        out[kind] = (uct, field)
    return out


def _divergence_note(q: int, r: CoefficientRing, h: GradedGroupTable) -> str | None:
    if not r.is_mod or gcd(q, r.modulus) == 1:
        return None
    return (f"degree 2 is {h[2]}: Tor(H_1, {r}) = Z_{gcd(q, r.modulus)} lands there, "
            f"so a table giving this group only in degrees 0, 1, 3 leaves out that term")


def cmd_lens(args, ctx):
    q, r = _q(args.q), _ring(args.coeff)
    tables = _lens_tables(q, r)
    result, lines = {}, [f"lens space L({q},1), coefficients {r}"]
    for kind, (uct, field) in tables.items():
        entry = {"uct": graded_json(uct, ctx.trace)}
        lines.append(fmt_table(f"{kind:<10} uct  ", uct.as_list()))
        if field is not None:
            entry["field"] = graded_json(field, ctx.trace)
            entry["paths_agree"] = render(entry["uct"]) == render(entry["field"])
            lines.append(fmt_table(f"{'':<10} field", field.as_list()))
            lines.append(f"{'':<10} paths agree: {'yes' if entry['paths_agree'] else 'NO'}")
        else:
            entry["field"] = None
            entry["paths_agree"] = None
        result[kind] = entry
    note = _divergence_note(q, r, tables["homology"][0])
    result["notes"] = [note] if note else []
    if note:
        lines.append(f"note: {note}")
    return {"q": q, "coefficients": r.syntax()}, result, lines


def cmd_suspend(args, ctx):
    q, r = _q(args.q), _ring(args.coeff)
    if r.kind == "Q":
        raise BadInput("suspension tables take Z or mod:<m> coefficients")
    base = homology_with_coefficients(lens_complex(q), r)
    susp = suspension_homology(base, r)
    result = {"lens": graded_json(base, ctx.trace), "suspension": graded_json(susp, ctx.trace)}
    lines = [f"suspension of L({q},1), coefficients {r}",
             fmt_table("lens       ", base.as_list()),
             fmt_table("suspension ", susp.as_list())]
    return {"q": q, "coefficients": r.syntax()}, result, lines


FAMILIES = {
    "local": (local_cohomology_at_wild_point, "H^n(S3/X, {{x}}; {r})"),
    "complement": (complement_cohomology, "H^n(S3 - X; {r})"),
    "pair": (quotient_pair_cohomology, "H^n(S3/X, S3 - X; {r})"),
}


def _model(args) -> tuple[SolenoidModel, CoefficientRing]:
    p, r = _primes(args.primes), _ring(args.coeff)
    if args.offset < 0:
        raise BadInput("--offset must be >= 0")
    return SolenoidModel(p, args.offset), r


def _solenoid_inputs(m: SolenoidModel, r: CoefficientRing) -> dict:
    return {"primes": m.primes.descriptor(), "coefficients": r.syntax(), "offset": m.offset}


def cmd_family(args, ctx):
    m, r = _model(args)
    fn, title = FAMILIES[args.command]
    t = fn(m, r)
    result = {"family": t.family, "cells": table_json(t, ctx.trace), "assumptions": assumptions_json()}
    lines = [title.format(r=r) + f", primes {m.primes}"] + fmt_cells(t, ctx.trace)
    return _solenoid_inputs(m, r), result, lines


def cmd_clc(args, ctx):
    m, r = _model(args)
    rep = clc_report(m, r)
    result = {"degrees": clc_json(rep, ctx.trace), "all_hold": rep.all_hold, "assumptions": assumptions_json()}
    lines = [f"clc over {r} at the wild point, primes {m.primes}"]
    for d in rep.degrees:
        lines.append(f"  degree {d.degree}: {'holds' if d.holds else 'FAILS':<6} {d.reason} [{d.provenance}]")
        if ctx.trace:
            lines.extend(f"        {line}" for line in d.evidence.trace())
    return _solenoid_inputs(m, r), result, lines


def _outcome_json(o: Outcome) -> dict:
    return {"holds": o.holds, "reason": o.reason, "provenance": o.provenance}


def _condition_json(c: Condition, with_trace: bool) -> dict:
    return {"name": c.name, "holds": c.holds, "provenance": c.provenance,
            "failing": [{"label": label, "cell": solenoid_cell_json(None, cell, with_trace)}
                        for label, cell in c.failing]}


def verdict_json(v: ClassificationVerdict, with_trace: bool) -> dict:
    out = {
        "cm3": _outcome_json(v.cm3),
        "hm3": _outcome_json(v.hm3),
        "conditions": [_condition_json(c, with_trace) for c in v.conditions],
        "extrapolated": v.extrapolated,
        "local": table_json(v.local, with_trace),
        "pair": table_json(v.pair, with_trace),
        "clc": clc_json(v.clc, with_trace),
    }
    if with_trace:
        out["trace"] = list(v.trace)
    return out


def cmd_classify(args, ctx):
    m, r = _model(args)
    v = classify(m.primes, r, m.offset)
    lines = [f"S3/X over {r}, primes {m.primes}",
             f"  cm3: {v.cm3}", f"  hm3: {v.hm3} [{v.hm3.provenance}]"]
    for c in v.conditions:
        lines.append(f"  {c.name}: {'holds' if c.holds else 'fails'} [{c.provenance}]")
        lines.extend(f"      {label} = {cell.value}" for label, cell in c.failing)
    if v.extrapolated:
        lines.append("  note: composite modulus, classified prime by prime")
    if ctx.trace:
        lines.extend(f"  | {line}" for line in v.trace)
    return _solenoid_inputs(m, r), verdict_json(v, ctx.trace), lines


def cmd_tower(args, ctx):
    base, p = _ring(args.base), _primes(args.primes)
    if args.offset < 0:
        raise BadInput("--offset must be >= 0")
    direction = tw.DIRECT if args.op == "colim" else tw.INVERSE
    t = tw.Tower.multiplication(direction, base, p, args.offset)
    fn = {"lim": tw.lim, "lim1": tw.lim_one, "colim": tw.colim}[args.op]
    value = fn(t, ctx.depth)
    trace = [f"{args.op} of {t.describe()}"]
    result = {"operation": args.op, "tower": t.describe()}
    lines = [f"{args.op} of {t.describe()} = {value}"]
    if direction == tw.INVERSE:
        ml = tw.mittag_leffler(t, ctx.depth)
        result["mittag_leffler"] = str(ml)
        trace.append(f"Mittag-Leffler: {ml}")
        lines.append(f"  Mittag-Leffler: {ml}")
    result["value"] = cell_json(None, value, COMPUTED, trace if ctx.trace else None)
    if base.kind != "Q":
        if direction == tw.INVERSE:
            o = tw.truncated_limits_oracle(t, ctx.depth)
            approx = o.lim if args.op == "lim" else o.lim_one
            result["oracle"] = {"value": cell_json(None, approx, COMPUTED), "stabilized": o.stabilized,
                                "depth": o.depth}
            lines.append(f"  truncated oracle at depth {o.depth}: {approx}"
                         f" ({'stabilized' if o.stabilized else 'not stabilized; the symbolic answer stands'})")
        else:
            approx = tw.colim(tw.realize(t, ctx.depth), ctx.depth)
            result["oracle"] = {"value": cell_json(None, approx, COMPUTED), "depth": ctx.depth,
                                "stabilized": approx.is_identified}
            lines.append(f"  truncated colimit at depth {ctx.depth}: {approx}")
    inputs = {"base": base.syntax(), "primes": p.descriptor(), "offset": args.offset}
    return inputs, result, lines


# ---------------------------------------------------------------------------
# argument parsing


def _depth(text: str) -> int:
    n = int(text)
    if n < 2:
        raise argparse.ArgumentTypeError("depth must be >= 2")
    return n


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", action="store_true", default=argparse.SUPPRESS,
                        help="emit a JSON report")
    common.add_argument("--trace", action="store_true", default=argparse.SUPPRESS,
                        help="include rule traces")
    common.add_argument("--depth", type=_depth, default=argparse.SUPPRESS,
                        help=f"truncation depth for tower oracles (default {tw.DEFAULT_DEPTH})")

    parser = argparse.ArgumentParser(prog="cmverify", parents=[common],
                                     description="(Co)homology, tower limits and the cohomology-manifold "
                                                 "classification of S3/X.")
    sub = parser.add_subparsers(dest="command", required=True, metavar="command")

    p = sub.add_parser("lens", parents=[common], help="lens space L(q,1) tables")
    p.add_argument("--q", type=int, required=True)
    p.add_argument("--coeff", default="Z", help="Z, Q or mod:<m> (default Z)")
    p.set_defaults(handler=cmd_lens)

    p = sub.add_parser("suspend", parents=[common], help="homology of the suspension of L(q,1)")
    p.add_argument("--q", type=int, required=True)
    p.add_argument("--coeff", default="Z", help="Z or mod:<m> (default Z)")
    p.set_defaults(handler=cmd_suspend)

    helps = {"local": "H^n(S3/X, {x})", "complement": "H^n(S3 - X)",
             "pair": "H^n(S3/X, S3 - X)", "clc": "local connectedness at the wild point",
             "classify": "cohomology/homology 3-manifold verdict"}
    for name, text in helps.items():
        p = sub.add_parser(name, parents=[common], help=text)
        p.add_argument("--primes", required=True, help="2,3,5 | all | all-except:2,7")
        p.add_argument("--coeff", required=True, help="Z, Q or mod:<m>")
        p.add_argument("--offset", type=int, default=0, help="multiplier index shift (default 0)")
        handler = {"clc": cmd_clc, "classify": cmd_classify}.get(name, cmd_family)
        p.set_defaults(handler=handler)

    p = sub.add_parser("tower", parents=[common], help="lim, lim^1 or colim of a multiplication tower")
    p.add_argument("op", choices=("lim", "lim1", "colim"))
    p.add_argument("--base", required=True, help="Z, Q or mod:<m>")
    p.add_argument("--primes", required=True, help="2,3,5 | all | all-except:2,7")
    p.add_argument("--offset", type=int, default=0)
    p.set_defaults(handler=cmd_tower)
    return parser


class _Context:
    def __init__(self, args):
        self.json = getattr(args, "json", False)
        self.trace = getattr(args, "trace", False)
        self.depth = getattr(args, "depth", tw.DEFAULT_DEPTH)


def run(argv: Sequence[str] | None = None, out: TextIO | None = None, err: TextIO | None = None) -> int:
    out = out or sys.stdout
    err = err or sys.stderr
    argv = list(sys.argv[1:] if argv is None else argv)
    parser = build_parser()
    try:
        with contextlib.redirect_stdout(out), contextlib.redirect_stderr(err):
            args = parser.parse_args(argv)
    except SystemExit as e:
        return EXIT_OK if e.code == 0 else EXIT_BAD_INPUT
    ctx = _Context(args)
    try:
        inputs, result, lines = args.handler(args, ctx)
    except BadInput as e:
        print(f"cmverify: error: {e}", file=err)
        return EXIT_BAD_INPUT
    except InconsistencyError as e:
        print(f"cmverify: inconsistency: {e}", file=err)
        return EXIT_INCONSISTENT
    if ctx.json:
        doc = {"schema_version": SCHEMA_VERSION, "command": argv,
               "inputs": inputs, "result": result}
        out.write(render(doc))
    else:
        out.write("\n".join(lines) + "\n")
    return EXIT_OK


def main() -> None:
    sys.exit(run())
