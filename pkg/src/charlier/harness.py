"""Sweeps behind the command-line tool: error tables, region maps, zero atlases.

Every routine returns plain rows (lists of dicts with string-friendly values)
in a fixed order, so CSV and JSON writers stay trivial and deterministic.
"""
from __future__ import annotations

import csv
import io
import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field

import mpmath
from mpmath import mp, mpc, mpf

from .errors import CharlierError, DomainError, PrecisionExhaustedError
from .exact import CharlierParams, eval_recurrence
from .literature import LITERATURE_FORMS, bo_wong_left_point, bo_wong_right_point
from .numerics import LogComplex, PrecisionPolicy, to_mp
from .results import ErrorOrder, FormulaTag
from .router import classify, evaluate, evaluate_formula
from .zeros import MAX_DEGREE, attach_predictions, find_zeros, full_scan_bounds, zero_density

__all__ = [
    "COMPARE_COLUMNS",
    "POINT_CAP",
    "POINT_KINDS",
    "REGIONMAP_COLUMNS",
    "SweepSpec",
    "ZERO_COLUMNS",
    "compare_rows",
    "fmt",
    "parse_number",
    "point_to_x",
    "regionmap_rows",
    "rows_to_csv",
    "value_fields",
    "zero_rows",
]

POINT_CAP = 10 ** 6
POINT_KINDS = ("x", "y", "t", "theta", "s")
ORACLE = "oracle"
AUTO = "auto"


def parse_number(text: str):
    """Parse ``"1.5"``, ``"-2"``, ``"3+2i"``, ``"0.5-1e-3i"`` or ``"2i"``."""
    s = text.strip().replace(" ", "")
    if not s:
        raise ValueError("empty number")
    if s.endswith("i"):
        z = complex(s[:-1] + "j")
        return z if z.imag != 0 else z.real
    return float(s)


def fmt(v) -> str:
    """Fixed formatting for CSV/JSON numbers; blank for missing values."""
    if v is None:
        return ""
    v = float(v)
    if math.isnan(v):
        return "nan"
    if math.isinf(v):
        return "inf" if v > 0 else "-inf"
    return format(v, ".15g")


def fmt_point(v) -> str:
    v = to_mp(v)
    if isinstance(v, mpc):
        im = float(v.imag)
        return f"{fmt(v.real)}{'+' if im >= 0 else '-'}{fmt(abs(im))}i"
    return fmt(v)


def value_fields(value: LogComplex) -> dict:
    """log10 magnitude, phase/pi and (when it fits in a double) the plain value."""
    if value.is_zero:
        return {"log10_abs": "-inf", "phase_over_pi": "0", "re": "0", "im": "0"}
    l10 = float(value.log10_mod)
    ph = value.phase / mp.pi
    # rounding noise from complex intermediate steps; far below 15 printed digits
    tol = mpf(2) ** (-mp.prec // 2)
    if abs(ph) < tol:
        ph = 0
    elif abs(abs(ph) - 1) < tol:
        ph = 1
    out = {"log10_abs": fmt(l10), "phase_over_pi": fmt(ph), "re": "", "im": ""}
    if abs(l10) < 300:
        z = value.to_python()
        out["re"], out["im"] = fmt(z.real), fmt(z.imag)
    return out


@dataclass(frozen=True)
class SweepSpec:
    a: float
    n_list: tuple
    points: tuple                      # ((kind, value), ...)
    formulas: tuple = (AUTO,)
    against: str | None = None
    precision_bits: int = 256
    allow_slow: bool = False
    output: str = "csv"
    extra: dict = field(default_factory=dict, compare=False)

    def __post_init__(self):
        if not self.n_list:
            raise DomainError("n list must not be empty")
        if list(self.n_list) != sorted(self.n_list):
            raise DomainError("n list must be sorted ascending")
        if any(int(n) != n or n < 0 for n in self.n_list):
            raise DomainError("degrees must be non-negative integers")
        if not self.points:
            raise DomainError("point set must not be empty")
        if len(self.points) * len(self.n_list) > POINT_CAP:
            raise DomainError(f"sweep exceeds {POINT_CAP} points")
        for kind, _ in self.points:
            if kind not in POINT_KINDS:
                raise DomainError(f"unknown point kind {kind!r}")
        for f in self.formulas:
            if f not in (AUTO, ORACLE) and f not in {t.value for t in FormulaTag}:
                raise DomainError(f"unknown formula {f!r}")
        if self.against is not None and self.against not in LITERATURE_FORMS:
            raise DomainError(f"unknown literature form {self.against!r}")
        if max(self.n_list) > MAX_DEGREE and not self.allow_slow:
            raise DomainError(f"oracle limited to n <= {MAX_DEGREE} without --allow-slow")


def point_to_x(params: CharlierParams, n: int, kind: str, value, against=None):
    """Map a point given in any supported coordinate to x."""
    v = to_mp(value)
    if kind == "x":
        return v
    if kind == "y":
        return v * n
    if kind == "t":
        return n + mpmath.sqrt(n) * v
    if kind == "theta":
        return n + mpmath.sqrt(n) * 2 * mpmath.sqrt(params.a_mp) * mpmath.cos(v)
    if kind == "s":
        if against == "bo-wong-left":
            return bo_wong_left_point(params, n, v)
        return bo_wong_right_point(params, n, v)
    raise DomainError(f"unknown point kind {kind!r}")


COMPARE_COLUMNS = ["n", "point_kind", "point", "x", "formula", "error_order", "p",
                   "oracle_log10_abs", "oracle_phase_over_pi", "formula_log10_abs",
                   "formula_phase_over_pi", "rel_err", "rel_err_scaled", "against",
                   "against_log10_abs", "against_rel_err", "against_vs_formula", "flag"]


def _default_formula_for(against):
    return {"bo-wong-0": FormulaTag.ORIGIN.value, "bo-wong-right": FormulaTag.TURN_RIGHT.value,
            "bo-wong-left": FormulaTag.TURN_LEFT.value}.get(against, AUTO)


def _compare_task(job):
    a, bits, n, kind, value, formulas, against = job
    mp.prec = bits
    params = CharlierParams(a, PrecisionPolicy(working_bits=bits))
    x = point_to_x(params, n, kind, value, against)
    base = {"n": str(n), "point_kind": kind, "point": fmt_point(value), "x": fmt_point(x)}
    flag = []
    try:
        oracle = eval_recurrence(params, n, x)
    except PrecisionExhaustedError as exc:
        oracle = None
        flag.append(f"oracle: {exc}")
    lit = None
    if against is not None:
        try:
            if against == "bo-wong-0":
                lit = LITERATURE_FORMS[against](params, n, x / n)
            else:
                lit = LITERATURE_FORMS[against](params, n, value)
        except CharlierError as exc:
            flag.append(f"{against}: {exc}")
    rows = []
    for f in formulas:
        if f == AUTO and against is not None:
            f = _default_formula_for(against)
        row = dict(base, formula=f, flag="")
        row_flag = list(flag)
        value_f = None
        p = None
        try:
            if f == ORACLE:
                value_f, order = oracle, None
            elif f == AUTO:
                res = evaluate(params, n, x, with_alternates=False)
                value_f, order = res.value, res.error_order
                row["formula"] = f"auto:{res.formula_tag.value}"
            else:
                res = evaluate_formula(params, n, x, f)
                value_f, order = res.value, res.error_order
            if order is not None:
                order = ErrorOrder(order)
                row["error_order"] = order.value
                p = order.power
                row["p"] = fmt(p)
        except CharlierError as exc:
            row_flag.append(f"{f}: {type(exc).__name__}: {exc}")
        if oracle is not None:
            row.update({"oracle_log10_abs": value_fields(oracle)["log10_abs"],
                        "oracle_phase_over_pi": value_fields(oracle)["phase_over_pi"]})
        if value_f is not None:
            vf = value_fields(value_f)
            row["formula_log10_abs"] = vf["log10_abs"]
            row["formula_phase_over_pi"] = vf["phase_over_pi"]
            if oracle is not None and not oracle.is_zero:
                err = value_f.relative_error(oracle)
                row["rel_err"] = fmt(err)
                if p is not None:
                    row["rel_err_scaled"] = fmt(err * mpf(n) ** p)
        if against is not None:
            row["against"] = against
            if lit is not None:
                row["against_log10_abs"] = value_fields(lit)["log10_abs"]
                if oracle is not None and not oracle.is_zero:
                    row["against_rel_err"] = fmt(lit.relative_error(oracle))
                if value_f is not None and not value_f.is_zero:
                    row["against_vs_formula"] = fmt(lit.relative_error(value_f))
        row["flag"] = "; ".join(row_flag)
        rows.append({c: row.get(c, "") for c in COMPARE_COLUMNS})
    return rows


def _run(task, jobs, workers):
    if workers and workers > 1 and len(jobs) > 1:
        # processes, not threads: mpmath keeps its precision in global state
        with ProcessPoolExecutor(max_workers=workers) as pool:
            results = list(pool.map(task, jobs))
    else:
        results = [task(j) for j in jobs]
    return [row for chunk in results for row in chunk]


def compare_rows(spec: SweepSpec, workers: int = 1):
    """Oracle vs formula table, one row per (n, point, formula) in input order."""
    jobs = [(spec.a, spec.precision_bits, int(n), kind, value, tuple(spec.formulas), spec.against)
            for n in spec.n_list for kind, value in spec.points]
    return _run(_compare_task, jobs, workers)


REGIONMAP_COLUMNS = ["y_re", "y_im", "t_re", "t_im", "zone", "primary", "alternates",
                     "max_disagreement"]


def _linspace(lo, hi, count):
    if count == 1:
        return [lo]
    return [lo + (hi - lo) * i / (count - 1) for i in range(count)]


def _regionmap_task(job):
    a, bits, n, row_values, disagreement = job
    mp.prec = bits
    params = CharlierParams(a, PrecisionPolicy(working_bits=bits))
    out = []
    for yr, yi in row_values:
        y = mpf(yr) if yi == 0 else mpc(yr, yi)
        x = y * n
        d = classify(params, n, x)
        t = d.coordinates[1]
        row = {"y_re": fmt(yr), "y_im": fmt(yi), "t_re": fmt(mpmath.re(t)), "t_im": fmt(mpmath.im(t)),
               "zone": d.rationale, "primary": d.primary_formula.value,
               "alternates": "|".join(tag.value for tag in d.alternates), "max_disagreement": ""}
        if disagreement and d.alternates:
            res = evaluate(params, n, x)
            dis = [v for v in res.details["disagreements"].values()]
            if dis:
                row["max_disagreement"] = fmt(max(dis))
        out.append(row)
    return out


def regionmap_rows(a: float, n: int, re_range, im_range, nx: int, ny: int, *,
                   disagreement: bool = False, precision_bits: int = 256, workers: int = 1):
    """Zone map over a rectangle in the y-plane, rows ordered by (y_re, y_im)."""
    if nx < 1 or ny < 1:
        raise DomainError("grid resolution must be positive")
    if nx * ny > POINT_CAP:
        raise DomainError(f"grid of {nx * ny} cells exceeds the cap of {POINT_CAP}")
    CharlierParams(a)
    res = _linspace(float(re_range[0]), float(re_range[1]), nx)
    ims = _linspace(float(im_range[0]), float(im_range[1]), ny)
    jobs = [(a, precision_bits, int(n), [(yr, yi) for yi in ims], disagreement) for yr in res]
    return _run(_regionmap_task, jobs, workers)


ZERO_COLUMNS = ["k", "x_empirical", "y_empirical", "x_predicted", "prediction_source", "abs_gap"]
DENSITY_COLUMNS = ["y_lo", "y_hi", "count", "density"]


def zero_rows(a: float, n: int, *, predictions: bool = False, allow_slow: bool = False):
    """Zero atlas rows; raises IncompleteScanError if fewer than n zeros are found."""
    if int(n) != n or n < 1:
        raise DomainError("the zero atlas needs n >= 1")
    params = CharlierParams(a)
    lo, hi = full_scan_bounds(params, n)
    reports = find_zeros(params, n, lo, hi, allow_slow=allow_slow)
    if predictions:
        reports = attach_predictions(params, n, reports)
    rows = [{"k": str(r.k), "x_empirical": fmt(r.x_empirical), "y_empirical": fmt(r.x_empirical / n),
             "x_predicted": fmt(r.x_predicted), "prediction_source": r.prediction_source or "",
             "abs_gap": fmt(r.abs_gap)} for r in reports]
    return rows, reports


def density_rows(reports, n, bins=10):
    return [{"y_lo": fmt(lo), "y_hi": fmt(hi), "count": str(c), "density": fmt(d)}
            for lo, hi, c, d in zero_density(reports, n, bins=bins)]


def rows_to_csv(rows, columns) -> str:
    buf = io.StringIO()
    w = csv.DictWriter(buf, fieldnames=columns, lineterminator="\r\n")
    w.writeheader()
    for r in rows:
        w.writerow(r)
    return buf.getvalue()
