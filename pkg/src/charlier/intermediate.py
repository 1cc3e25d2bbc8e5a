"""Asymptotics near y = 1 away from the turning points t = +-2 sqrt(a).

Local variable: x = n (1 + t / sqrt(n)).  The square root sqrt(t^2 - 4a) is
taken as sqrt(t - 2 sqrt a) * sqrt(t + 2 sqrt a) with principal factors, which
puts its only cut on [-2 sqrt a, 2 sqrt a] and makes it behave like t at
infinity.
"""
from __future__ import annotations

from dataclasses import dataclass

import mpmath
from mpmath import mp, mpc, mpf

from .errors import BranchError, DomainError
from .exact import CharlierParams
from .numerics import LogComplex, to_mp
from .results import ApproxResult, ErrorOrder, FormulaTag
from .special import loggamma_branch

__all__ = [
    "IntermediatePhase",
    "band_cosine_formula",
    "intermediate_formula",
    "intermediate_phase",
    "log_leading_constant",
    "log_inv_sqrt_weight",
    "sqrt_disc",
    "x_from_t",
]


def sqrt_disc(a, t):
    """sqrt(t^2 - 4a) with cut [-2 sqrt a, 2 sqrt a], ~ t at infinity."""
    c = 2 * mpmath.sqrt(mpf(a))
    t = to_mp(t)
    return mpmath.sqrt(mpc(t) - c) * mpmath.sqrt(mpc(t) + c)


@dataclass(frozen=True)
class IntermediatePhase:
    t: object
    sqrt_disc: object
    log_factor: object


def intermediate_phase(params: CharlierParams, t) -> IntermediatePhase:
    t = to_mp(t)
    sd = sqrt_disc(params.a, t)
    lf = mpmath.log((t - sd) / (2 * mpmath.sqrt(params.a_mp)))
    return IntermediatePhase(t, sd, lf)


def x_from_t(n, t):
    return n + mpmath.sqrt(n) * to_mp(t)


def log_leading_constant(params: CharlierParams, n: int):
    """log of (2a)^{n/2} Gamma((n+1)/2) / Gamma(1/2) * 2^{-3/4} pi^{-1/4} e^{a/2}."""
    a = params.a_mp
    return (n * mpmath.log(2 * a) / 2 + mpmath.loggamma(mpf(n + 1) / 2) - mpmath.log(mp.pi) / 2
            - 3 * mpmath.log(2) / 4 - mpmath.log(mp.pi) / 4 + a / 2)


def log_inv_sqrt_weight(params: CharlierParams, x):
    """log of (Gamma(x+1) / a^x)^{1/2}, continuous in x off the negative axis."""
    x = to_mp(x)
    return (loggamma_branch(x + 1) - x * mpmath.log(params.a_mp)) / 2


def _on_left_cut(params, t) -> bool:
    t = to_mp(t)
    return mpmath.im(t) == 0 and mpmath.re(t) <= 2 * mpmath.sqrt(params.a_mp)


def intermediate_formula(params: CharlierParams, n: int, t) -> ApproxResult:
    """Leading-order form for t off (-inf, 2 sqrt a]."""
    t = to_mp(t)
    if _on_left_cut(params, t):
        raise BranchError("intermediate form excludes real t <= 2 sqrt(a)")
    a = params.a_mp
    with mp.workprec(mp.prec + 20):
        ph = intermediate_phase(params, t)
        c = 2 * mpmath.sqrt(a)
        sd = ph.sqrt_disc
        quarter_log = (mpmath.log(mpc(t) - c) + mpmath.log(mpc(t) + c)) / 4
        x = x_from_t(n, t)
        lg = (log_leading_constant(params, n) + log_inv_sqrt_weight(params, x)
              + mpmath.sqrt(n) * (t * ph.log_factor + sd) - quarter_log + t * sd / 4)
        value = LogComplex.from_log(lg)
    return ApproxResult(value, FormulaTag.INTERMEDIATE, (ErrorOrder.INV_SQRT_N,))


def _recessive_exponent(params: CharlierParams, n: int, t):
    """Exponent of the companion solution (sqrt_disc with the opposite sign).

    Its coefficient is zero in the matched representation; the real part of
    the exponent difference only tells which of the two would dominate.
    """
    ph = intermediate_phase(params, t)
    sd = -ph.sqrt_disc
    lf = mpmath.log((ph.t - sd) / (2 * mpmath.sqrt(params.a_mp)))
    return mpmath.sqrt(n) * (ph.t * lf + sd) - ph.t * sd / 4


def band_cosine_formula(params: CharlierParams, n: int, theta) -> ApproxResult:
    """Oscillatory form inside the band, t = 2 sqrt(a) cos(theta)."""
    theta = to_mp(theta)
    if isinstance(theta, mpc) or not 0 < theta < mp.pi:
        raise DomainError("band form needs real theta in (0, pi)")
    a = params.a_mp
    with mp.workprec(mp.prec + 20):
        s, c = mpmath.sin(theta), mpmath.cos(theta)
        t = 2 * mpmath.sqrt(a) * c
        x = x_from_t(n, t)
        if x <= -1:
            raise DomainError("band form needs x > -1")
        arg = 2 * mpmath.sqrt(a * n) * (s - theta * c) + a * s * c - mp.pi / 4
        cosv = mpmath.cos(arg)
        if cosv == 0:
            return ApproxResult(LogComplex.zero(), FormulaTag.BAND, (ErrorOrder.INV_SQRT_N,))
        log_mag = (mpmath.log(2) + log_leading_constant(params, n)
                   + (mpmath.loggamma(x + 1) - x * mpmath.log(a)) / 2
                   - mpmath.log(4 * a - t * t) / 4 + mpmath.log(abs(cosv)))
        value = LogComplex(log_mag, 0 if cosv > 0 else mp.pi)
    return ApproxResult(value, FormulaTag.BAND, (ErrorOrder.INV_SQRT_N,), {"t": t, "x": x})
