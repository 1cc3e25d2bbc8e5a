"""Command-line front end: ``charlier eval|compare|regionmap|zeros``.

Exit codes: 0 ok, 2 bad flags, 3 formula precondition violated,
4 incomplete zero scan, 1 anything else.
"""
from __future__ import annotations

import argparse
import json
import sys
from importlib import resources

import jsonschema
from mpmath import mp, mpf

from . import harness
from .errors import CharlierError, DomainError, IncompleteScanError
from .exact import CharlierParams, eval_recurrence
from .harness import AUTO, ORACLE, SweepSpec, fmt, fmt_point, parse_number, point_to_x, value_fields
from .literature import LITERATURE_FORMS
from .numerics import PrecisionPolicy
from .results import FormulaTag
from .router import evaluate, evaluate_formula
from .zeros import MAX_DEGREE

SCHEMA_VERSION = "1.0"
EXIT_OK, EXIT_FAIL, EXIT_USAGE, EXIT_PRECONDITION, EXIT_INCOMPLETE = 0, 1, 2, 3, 4
FORMULA_CHOICES = [ORACLE, AUTO] + [t.value for t in FormulaTag]


class UsageError(Exception):
    pass


def load_schema(command: str) -> dict:
    text = resources.files("charlier").joinpath("schemas", f"{command}.schema.json").read_text("utf-8")
    return json.loads(text)


def emit_json(doc: dict, out) -> None:
    jsonschema.validate(doc, load_schema(doc["command"]))
    out.write(json.dumps(doc, indent=2, sort_keys=True) + "\n")


def _numbers(text):
    try:
        return [parse_number(p) for p in text.split(",") if p.strip()]
    except ValueError as exc:
        raise UsageError(f"cannot parse number list {text!r}: {exc}") from None


def _ints(text):
    try:
        vals = [int(p) for p in text.split(",") if p.strip()]
    except ValueError:
        raise UsageError(f"--n expects integers, got {text!r}") from None
    if not vals:
        raise UsageError("--n is empty")
    return vals


def _range(lo, hi, count):
    count = int(count)
    if count < 1:
        raise UsageError("range count must be positive")
    if count == 1:
        return [float(lo)]
    return [float(lo) + (float(hi) - float(lo)) * i / (count - 1) for i in range(count)]


def _point_flags(args):
    pts = []
    for kind in ("x", "y", "t", "theta"):
        v = getattr(args, kind, None)
        if v is not None:
            pts.extend((kind, p) for p in _numbers(v))
    if getattr(args, "t_range", None):
        pts.extend(("t", v) for v in _range(*args.t_range))
    if getattr(args, "theta_range", None):
        pts.extend(("theta", v) for v in _range(*args.theta_range))
    if getattr(args, "y_rect", None):
        r0, r1, i0, i1, nx, ny = args.y_rect
        for yr in _range(r0, r1, nx):
            for yi in _range(i0, i1, ny):
                pts.append(("y", complex(yr, yi) if yi else yr))
    return pts


def _write_table(args, rows, columns, out):
    text = harness.rows_to_csv(rows, columns)
    if args.csv:
        with open(args.csv, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)
    if not args.json:
        out.write(text)


# ---------------------------------------------------------------------------


def cmd_eval(args, out) -> int:
    pts = _point_flags(args)
    if len(pts) != 1:
        raise UsageError("eval needs exactly one of --x/--y/--t/--theta with a single value")
    n_vals = _ints(args.n)
    if len(n_vals) != 1:
        raise UsageError("eval takes a single --n")
    n = n_vals[0]
    if n < 0:
        raise UsageError("--n must be non-negative")
    kind, value = pts[0]
    params = CharlierParams(args.a, PrecisionPolicy(working_bits=args.precision_bits))
    if kind in ("y", "t", "theta") and n < 1:
        raise UsageError(f"--{kind} needs n >= 1")
    x = point_to_x(params, n, kind, value)
    formula = args.formula or ORACLE
    doc = {"schema_version": SCHEMA_VERSION, "command": "eval", "a": fmt(args.a), "n": n,
           "x": fmt_point(x), "formula": formula}
    if formula == ORACLE:
        if n > MAX_DEGREE and not args.allow_slow:
            raise UsageError(f"oracle limited to n <= {MAX_DEGREE} without --allow-slow")
        value_lc = eval_recurrence(params, n, x)
        doc.update(formula_tag=ORACLE, error_order="exact")
    else:
        res = evaluate(params, n, x) if formula == AUTO else evaluate_formula(params, n, x, formula)
        value_lc = res.value
        doc.update(formula_tag=res.formula_tag.value, error_order=res.error_order.value)
        if formula == AUTO:
            d = res.details["decision"]
            doc["zone"] = d.rationale
            doc["alternates"] = [t.value for t in d.alternates]
            doc["disagreements"] = {f"{p}|{q}": fmt(v) for (p, q), v in res.details["disagreements"].items()}
            if res.details.get("note"):
                doc["note"] = res.details["note"]
    doc["value"] = value_fields(value_lc)
    if args.json:
        emit_json(doc, out)
        return EXIT_OK
    v = doc["value"]
    out.write(f"formula: {doc['formula_tag']} ({doc['error_order']})\n")
    if "zone" in doc:
        out.write(f"zone: {doc['zone']}; alternates: {','.join(doc['alternates']) or '-'}\n")
        for k, dv in doc["disagreements"].items():
            out.write(f"disagreement {k}: {dv}\n")
    out.write(f"log10|C|: {v['log10_abs']}\nphase/pi: {v['phase_over_pi']}\n")
    if v["re"] != "":
        plain = v["re"] if v["im"] in ("0", "-0") else f"{v['re']}{'' if v['im'].startswith('-') else '+'}{v['im']}i"
        out.write(f"value: {plain}\n")
    return EXIT_OK


def cmd_compare(args, out) -> int:
    n_list = _ints(args.n)
    pts = _point_flags(args)
    if args.against in ("bo-wong-right", "bo-wong-left"):
        pts.extend(("s", s) for s in _numbers(args.s or "0"))
    if not pts:
        raise UsageError("compare needs a non-empty point set")
    formulas = tuple(f.strip() for f in (args.formula or AUTO).split(",") if f.strip())
    try:
        spec = SweepSpec(args.a, tuple(n_list), tuple(pts), formulas, args.against,
                         args.precision_bits, args.allow_slow)
    except DomainError as exc:
        raise UsageError(str(exc)) from None
    rows = harness.compare_rows(spec, workers=args.workers)
    _write_table(args, rows, harness.COMPARE_COLUMNS, out)
    if args.json:
        emit_json({"schema_version": SCHEMA_VERSION, "command": "compare", "a": fmt(args.a),
                   "n_list": n_list, "against": args.against, "rows": rows}, out)
    return EXIT_OK


def cmd_regionmap(args, out) -> int:
    n_vals = _ints(args.n)
    if len(n_vals) != 1:
        raise UsageError("regionmap takes a single --n")
    if args.nx * args.ny > harness.POINT_CAP or args.nx < 1 or args.ny < 1:
        raise UsageError(f"resolution must be positive with nx*ny <= {harness.POINT_CAP}")
    try:
        rows = harness.regionmap_rows(args.a, n_vals[0], args.re_range, args.im_range, args.nx, args.ny,
                                      disagreement=args.disagreement,
                                      precision_bits=args.precision_bits, workers=args.workers)
    except DomainError as exc:
        raise UsageError(str(exc)) from None
    _write_table(args, rows, harness.REGIONMAP_COLUMNS, out)
    if args.json:
        emit_json({"schema_version": SCHEMA_VERSION, "command": "regionmap", "a": fmt(args.a),
                   "n": n_vals[0], "rows": rows}, out)
    return EXIT_OK


def cmd_zeros(args, out) -> int:
    n_vals = _ints(args.n)
    if len(n_vals) != 1 or n_vals[0] < 1:
        raise UsageError("zeros needs a single --n >= 1")
    n = n_vals[0]
    if n > MAX_DEGREE and not args.allow_slow:
        raise UsageError(f"zero scan limited to n <= {MAX_DEGREE} without --allow-slow")
    try:
        rows, reports = harness.zero_rows(args.a, n, predictions=args.predictions,
                                          allow_slow=args.allow_slow)
    except IncompleteScanError as exc:
        sys.stderr.write(f"incomplete scan: found {len(exc.found)} of {n} zeros\n")
        return EXIT_INCOMPLETE
    density = harness.density_rows(reports, n, bins=args.bins) if args.density else None
    if args.density:
        _write_table(args, density, harness.DENSITY_COLUMNS, out)
    else:
        _write_table(args, rows, harness.ZERO_COLUMNS, out)
    if args.json:
        doc = {"schema_version": SCHEMA_VERSION, "command": "zeros", "a": fmt(args.a), "n": n,
               "rows": rows}
        if density is not None:
            doc["density"] = density
        emit_json(doc, out)
    return EXIT_OK


# ---------------------------------------------------------------------------


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def _common(p):
    p.add_argument("--a", type=float, required=True, help="Poisson parameter a > 0")
    p.add_argument("--n", required=True, help="degree, or comma list of degrees")
    p.add_argument("--precision-bits", type=int, default=256)
    p.add_argument("--json", action="store_true", help="emit one JSON document on stdout")
    p.add_argument("--csv", metavar="PATH", help="write the table to PATH")
    p.add_argument("--workers", type=int, default=1)
    p.add_argument("--allow-slow", action="store_true")


def _points(p):
    for kind in ("x", "y", "t", "theta"):
        p.add_argument(f"--{kind}", help="number or comma list; complex as re+imi")


def build_parser() -> argparse.ArgumentParser:
    ap = _Parser(prog="charlier", description="Charlier polynomial asymptotics workbench")
    sub = ap.add_subparsers(dest="command", required=True, parser_class=_Parser)

    pe = sub.add_parser("eval", help="evaluate one point")
    _common(pe)
    _points(pe)
    pe.add_argument("--formula", choices=FORMULA_CHOICES)

    pc = sub.add_parser("compare", help="error table against the exact oracle")
    _common(pc)
    _points(pc)
    pc.add_argument("--formula", help="comma list of formula tags, 'auto' or 'oracle'")
    pc.add_argument("--against", choices=sorted(LITERATURE_FORMS))
    pc.add_argument("--s", help="scaling parameter(s) for the edge literature forms")
    pc.add_argument("--t-range", nargs=3, metavar=("LO", "HI", "COUNT"))
    pc.add_argument("--theta-range", nargs=3, metavar=("LO", "HI", "COUNT"))
    pc.add_argument("--y-rect", nargs=6, metavar=("RE0", "RE1", "IM0", "IM1", "NX", "NY"))

    pr = sub.add_parser("regionmap", help="zone map over a y-rectangle")
    _common(pr)
    pr.add_argument("--re-range", nargs=2, type=float, default=[-2.0, 3.0], metavar=("LO", "HI"))
    pr.add_argument("--im-range", nargs=2, type=float, default=[-1.5, 1.5], metavar=("LO", "HI"))
    pr.add_argument("--nx", type=int, default=200)
    pr.add_argument("--ny", type=int, default=200)
    pr.add_argument("--disagreement", action="store_true",
                    help="evaluate alternates and report the largest pairwise disagreement")

    pz = sub.add_parser("zeros", help="zero atlas")
    _common(pz)
    pz.add_argument("--predictions", action="store_true")
    pz.add_argument("--density", action="store_true")
    pz.add_argument("--bins", type=int, default=10)
    return ap


COMMANDS = {"eval": cmd_eval, "compare": cmd_compare, "regionmap": cmd_regionmap, "zeros": cmd_zeros}


def main(argv=None, out=None) -> int:
    out = out or sys.stdout
    try:
        args = build_parser().parse_args(argv)
        if args.precision_bits < 53:
            raise UsageError("--precision-bits must be at least 53")
        if args.workers < 1:
            raise UsageError("--workers must be positive")
        mp.prec = args.precision_bits
        return COMMANDS[args.command](args, out)
    except UsageError as exc:
        sys.stderr.write(f"charlier: error: {exc}\n")
        return EXIT_USAGE
    except DomainError as exc:
        code = EXIT_USAGE if "parameter a" in str(exc) else EXIT_PRECONDITION
        sys.stderr.write(f"charlier: {type(exc).__name__}: {exc}\n")
        return code
    except CharlierError as exc:
        sys.stderr.write(f"charlier: {type(exc).__name__}: {exc}\n")
        return EXIT_PRECONDITION


if __name__ == "__main__":
    raise SystemExit(main())
