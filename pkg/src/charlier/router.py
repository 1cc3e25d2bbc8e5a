"""Pick the asymptotic formula(s) that apply at a point and compare overlaps.

Zones are decided from y = x/n and t = sqrt(n)(y - 1).  The thresholds are
engineering choices; they live in RouterConfig so they can be overridden.
"""
from __future__ import annotations

from dataclasses import dataclass

import mpmath
from mpmath import mpc, mpf

from .errors import CharlierError, DomainError
from .exact import CharlierParams
from .intermediate import band_cosine_formula, intermediate_formula
from .numerics import to_mp
from .outer import dist_to_unit_segment, interior_oscillatory_formula, origin_gamma_formula, outer_formula
from .results import ApproxResult, FormulaTag
from .turning import (airy_formula_left, airy_formula_left_complex, airy_formula_right,
                      dominance_holds, left_validity_radius)

__all__ = ["RegionDecision", "RouterConfig", "ZONES", "classify", "evaluate", "evaluate_formula"]

ZONES = ("outer_zone", "origin_zone", "interior_zone", "intermediate_zone",
         "band_zone", "right_edge", "left_edge")


@dataclass(frozen=True)
class RouterConfig:
    collar_factor: float = 0.75      # edge collar = collar_factor * sqrt(a)
    segment_gap: float = 0.2         # dist(y, [0,1]) above which y counts as off the segment
    origin_radius: float = 0.8       # |y| below which the Gamma-ratio form is preferred
    outer_gap: float = 0.5           # |y - 1| above which the outer form is preferred
    near_exponent: float = 0.2       # local forms are used for |t| <= n**near_exponent
    interior_lo: float = 0.1
    interior_hi: float = 0.9
    band_margin: float = 0.25        # band form needs |t| < 2 sqrt(a) - band_margin*sqrt(a)
    n_min: int = 8

    def t_switch(self, n) -> mpf:
        return mpf(n) ** mpf(self.near_exponent)


@dataclass(frozen=True)
class RegionDecision:
    primary_formula: FormulaTag
    alternates: tuple
    coordinates: tuple
    rationale: str


def _geometry(params, n, x):
    x = to_mp(x)
    y = x / n
    t = mpmath.sqrt(n) * (y - 1)
    real = not isinstance(x, mpc)
    return x, y, t, real


def _preconditions(params, n, y, t, real, cfg):
    """Formula tags whose preconditions hold at the point."""
    a = params.a_mp
    sa = mpmath.sqrt(a)
    c = 2 * sa
    collar = cfg.collar_factor * sa
    big_t = cfg.t_switch(n)
    ok = []
    if not (real and 0 <= y <= 1):
        ok.append(FormulaTag.OUTER)
    if abs(t) > big_t / 2 and y != 1:
        ok.append(FormulaTag.ORIGIN)
    if real and cfg.interior_lo < y < 1 and (y < cfg.interior_hi or t < -c - collar):
        ok.append(FormulaTag.INTERIOR)
    if not (real and t <= c) and abs(t) <= max(2 * big_t, c + 2 * collar):
        ok.append(FormulaTag.INTERMEDIATE)
    if real and abs(t) < c - cfg.band_margin * sa:
        ok.append(FormulaTag.BAND)
    if abs(t - c) <= 2 * collar and not (real and t <= -c):
        ok.append(FormulaTag.TURN_RIGHT)
    if real and abs(t + c) <= left_validity_radius(a):
        ok.append(FormulaTag.TURN_LEFT)
    elif not real and abs(t + c) <= 2 * collar and dominance_holds(params, t):
        ok.append(FormulaTag.TURN_LEFT)
    return ok


def classify(params: CharlierParams, n: int, x, config: RouterConfig | None = None) -> RegionDecision:
    """Zone and formula choice at x; alternates are every other formula whose
    preconditions hold there."""
    cfg = config or RouterConfig()
    if int(n) != n or n < cfg.n_min:
        raise DomainError(f"router needs n >= {cfg.n_min}")
    n = int(n)
    x, y, t, real = _geometry(params, n, x)
    if not (mpmath.isfinite(mpmath.re(x)) and mpmath.isfinite(mpmath.im(x))):
        raise DomainError("x must be finite")
    a = params.a_mp
    sa = mpmath.sqrt(a)
    c = 2 * sa
    collar = cfg.collar_factor * sa
    near = abs(t) <= cfg.t_switch(n)
    dist = dist_to_unit_segment(y)

    if dist > cfg.segment_gap and abs(y) < cfg.origin_radius:
        primary, zone = FormulaTag.ORIGIN, "origin_zone"
    elif dist > cfg.segment_gap and abs(y - 1) > cfg.outer_gap:
        primary, zone = FormulaTag.OUTER, "outer_zone"
    elif abs(t - c) <= collar:
        primary, zone = FormulaTag.TURN_RIGHT, "right_edge"
    elif abs(t + c) <= collar:
        zone = "left_edge"
        if real or dominance_holds(params, t):
            primary = FormulaTag.TURN_LEFT
        else:
            primary = FormulaTag.INTERMEDIATE
    elif real and -c < t < c:
        primary, zone = FormulaTag.BAND, "band_zone"
    elif real and t < -c:
        # the intermediate form is undefined on its cut, so the real left side
        # is split between the oscillatory and Gamma-ratio forms
        if y > cfg.interior_lo:
            primary, zone = FormulaTag.INTERIOR, "interior_zone"
        else:
            primary, zone = FormulaTag.ORIGIN, "origin_zone"
    elif near:
        primary, zone = FormulaTag.INTERMEDIATE, "intermediate_zone"
    elif real:
        primary, zone = FormulaTag.OUTER, "outer_zone"
    else:
        primary, zone = FormulaTag.ORIGIN, "origin_zone"

    satisfiable = _preconditions(params, n, y, t, real, cfg)
    if primary not in satisfiable:  # pragma: no cover - guarded by construction
        raise AssertionError(f"primary {primary} violates its own preconditions")
    alternates = tuple(tag for tag in satisfiable if tag != primary)
    return RegionDecision(primary, alternates, (y, t), zone)


def evaluate_formula(params: CharlierParams, n: int, x, tag) -> ApproxResult:
    """Evaluate one formula at x, converting x to the variable it expects."""
    tag = FormulaTag(tag)
    x, y, t, real = _geometry(params, n, x)
    if tag is FormulaTag.OUTER:
        return outer_formula(params, n, y)
    if tag is FormulaTag.ORIGIN:
        return origin_gamma_formula(params, n, y)
    if tag is FormulaTag.INTERIOR:
        return interior_oscillatory_formula(params, n, y)
    if tag is FormulaTag.INTERMEDIATE:
        return intermediate_formula(params, n, t)
    if tag is FormulaTag.BAND:
        if not real:
            raise DomainError("band form needs real x")
        c = 2 * mpmath.sqrt(params.a_mp)
        if not -c < t < c:
            raise DomainError("band form needs -2 sqrt(a) < t < 2 sqrt(a)")
        return band_cosine_formula(params, n, mpmath.acos(t / c))
    if tag is FormulaTag.TURN_RIGHT:
        return airy_formula_right(params, n, t)
    if tag is FormulaTag.TURN_LEFT:
        if real:
            return airy_formula_left(params, n, t)
        return airy_formula_left_complex(params, n, t)
    raise DomainError(f"unknown formula tag {tag!r}")


def evaluate(params: CharlierParams, n: int, x, config: RouterConfig | None = None,
             with_alternates: bool = True) -> ApproxResult:
    """Primary formula value plus alternates and their pairwise disagreements."""
    decision = classify(params, n, x, config)
    values = {}
    errors = {}
    tags = [decision.primary_formula] + (list(decision.alternates) if with_alternates else [])
    for tag in tags:
        try:
            values[tag] = evaluate_formula(params, n, x, tag)
        except CharlierError as exc:
            errors[tag] = f"{type(exc).__name__}: {exc}"
    disagreements = {}
    keys = list(values)
    for i, p in enumerate(keys):
        for q in keys[i + 1:]:
            vp, vq = values[p].value, values[q].value
            if vp.is_zero and vq.is_zero:
                rel = mpf(0)
            elif vq.is_zero:
                rel = mpf("inf")
            else:
                rel = vp.relative_error(vq)
            disagreements[(p.value, q.value)] = rel
    primary = decision.primary_formula
    note = None
    if primary in values:
        chosen = values[primary]
    else:
        fallback = next((t for t in decision.alternates if t in values), None)
        if fallback is None:
            raise DomainError(f"no formula could be evaluated: {errors}")
        chosen = values[fallback]
        note = f"primary {primary.value} failed ({errors[primary]}); fell back to {fallback.value}"
    details = dict(chosen.details)
    details.update({"decision": decision, "alternates": {k.value: v for k, v in values.items()},
                    "alternate_errors": {k.value: v for k, v in errors.items()},
                    "disagreements": disagreements, "note": note})
    return ApproxResult(chosen.value, chosen.formula_tag, chosen.error_orders, details)
