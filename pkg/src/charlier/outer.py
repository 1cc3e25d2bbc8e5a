"""Non-oscillatory asymptotics away from y = 1.

The product ladder C_n = w_1 ... w_n, the closed outer form for y off [0, 1],
the Gamma-ratio form that stays valid across the origin, and the leading
oscillatory form for real y inside (0, 1).
"""
from __future__ import annotations

from dataclasses import dataclass

import mpmath
from mpmath import mp, mpc, mpf

from .errors import BranchError, DomainError, LadderBreakdownError
from .exact import CharlierParams
from .numerics import LogComplex, SignedLogValue, to_mp
from .results import ApproxResult, ErrorOrder, FormulaTag
from .special import is_gamma_pole, log_gamma_ratio

__all__ = [
    "WkLadder",
    "dist_to_unit_segment",
    "interior_oscillatory_formula",
    "ladder_bound_constants",
    "origin_gamma_formula",
    "outer_formula",
    "wk_ladder",
]


def dist_to_unit_segment(y) -> mpf:
    """Euclidean distance from a complex y to the segment [0, 1]."""
    y = to_mp(y)
    re = mpmath.re(y)
    im = mpmath.im(y)
    if re < 0:
        return mpmath.hypot(re, im)
    if re > 1:
        return mpmath.hypot(re - 1, im)
    return abs(im)


def ladder_bound_constants(params: CharlierParams, r):
    """(M0, M1, N) bounding |delta_k| <= M0/n and |eps_k| <= M1/n^2 for n > N."""
    a = params.a_mp
    r = mpf(r)
    if r <= 0:
        raise DomainError("bound constants need dist(y, [0,1]) > 0")
    m0 = abs(1 - a) / r + 3 * a / r ** 2 + a / r ** 3
    m1 = a * (1 + r + 2 * r * m0) / r ** 3
    return m0, m1, 2 * m0


@dataclass(frozen=True)
class WkLadder:
    x: object
    w: tuple
    delta: tuple
    eps: tuple
    bound_constants: tuple | None

    def log_product(self) -> LogComplex:
        out = LogComplex.one()
        for wk in self.w:
            out = out * LogComplex.from_complex(wk)
        return out


def wk_ladder(params: CharlierParams, n: int, x) -> WkLadder:
    """Ratios w_k = C_k / C_{k-1} for k = 1..n together with delta_k, eps_k."""
    a = params.a_mp
    x = to_mp(x)
    w, delta, eps = [], [], []
    prev = None
    for k in range(1, n + 1):
        if k == 1:
            wk = x - a
        else:
            wk = x - (k - 1 + a) - a * (k - 1) / prev
        if wk == 0:
            raise LadderBreakdownError(f"w_{k} vanishes at x = {x}")
        d = x - k
        if d != 0:
            dk = wk / d - 1
            ek = dk - (1 - a) / d + a * k / d ** 2
        else:
            dk = ek = mpf("nan")
        w.append(wk)
        delta.append(dk)
        eps.append(ek)
        prev = wk
    bounds = None
    if n >= 1:
        r = dist_to_unit_segment(x / n)
        if r > 0:
            bounds = ladder_bound_constants(params, r)
    return WkLadder(x, tuple(w), tuple(delta), tuple(eps), bounds)


def _on_unit_segment(y) -> bool:
    return mpmath.im(y) == 0 and 0 <= mpmath.re(y) <= 1


def outer_formula(params: CharlierParams, n: int, y) -> ApproxResult:
    """Closed form valid for y off [0, 1], principal branches throughout."""
    y = to_mp(y)
    if _on_unit_segment(y):
        raise BranchError("outer form is undefined for y in [0, 1]")
    a = params.a_mp
    with mp.workprec(mp.prec + 20):
        yc = mpc(y)
        ratio_log = mpmath.log(yc / (yc - 1))
        lg = (n * mpmath.log(n) + ratio_log / 2 - a / (yc - 1)
              + n * (yc * ratio_log - 1) + n * mpmath.log(yc - 1))
        value = LogComplex.from_log(lg)
    return ApproxResult(value, FormulaTag.OUTER, (ErrorOrder.INV_N,))


def origin_gamma_formula(params: CharlierParams, n: int, y) -> ApproxResult:
    """(-1)^n e^{a/(1-y)} Gamma(n - ny)/Gamma(-ny), switching to
    e^{a/(1-y)} Gamma(x+1)/Gamma(1+x-n) near the positive real axis."""
    y = to_mp(y)
    if y == 1:
        raise DomainError("the Gamma-ratio form excludes y = 1")
    a = params.a_mp
    with mp.workprec(mp.prec + 20):
        x = n * y
        phi0 = LogComplex.from_log(a / (1 - y))
        use_identity = (mpmath.re(x) >= 0 and abs(mpmath.im(x)) < 1)
        if not use_identity and is_gamma_pole(n - x) and is_gamma_pole(-x):
            use_identity = True
        if use_identity:
            ratio = log_gamma_ratio(x + 1, 1 + x - n)
        else:
            ratio = log_gamma_ratio(n - x, -x)
            if n % 2:
                ratio = -ratio
        value = phi0 * ratio
    return ApproxResult(value, FormulaTag.ORIGIN, (ErrorOrder.INV_N, ErrorOrder.EXP_SMALL),
                        {"path": "identity" if use_identity else "direct"})


def interior_oscillatory_formula(params: CharlierParams, n: int, y) -> ApproxResult:
    """Leading oscillatory term for real y in (0, 1)."""
    y = to_mp(y)
    if isinstance(y, mpc) or not 0 < y < 1:
        raise DomainError("interior form needs real y in (0, 1)")
    a = params.a_mp
    with mp.workprec(mp.prec + 20):
        s = mpmath.sinpi(n * y)
        if s == 0:
            return ApproxResult(LogComplex.zero(), FormulaTag.INTERIOR, (ErrorOrder.INV_N,))
        ratio_log = mpmath.log(y / (1 - y))
        log_mag = (mpmath.log(2) + n * mpmath.log(n) + ratio_log / 2 - a / (y - 1)
                   + n * (y * ratio_log - 1) + n * mpmath.log(1 - y) + mpmath.log(abs(s)))
        sign = (-1 if n % 2 else 1) * (-1 if s > 0 else 1)
        value = SignedLogValue(sign, log_mag).to_log_complex()
    return ApproxResult(value, FormulaTag.INTERIOR, (ErrorOrder.INV_N,))
