"""Earlier leading-order forms from the literature, used as cross-checks.

Each form is written for C_n(x) / n!; the functions here return C_n(x)
itself (the n! is restored in log space).  The edge forms are tied to a
specific scaling of x in terms of a free real parameter s.
"""
from __future__ import annotations

import mpmath
from mpmath import mp, mpf

from .errors import DomainError
from .exact import CharlierParams
from .numerics import LogComplex, to_mp
from .special import OMEGA2, airy_eval, airy_rotated

__all__ = [
    "LITERATURE_FORMS",
    "bo_wong_interior",
    "bo_wong_left",
    "bo_wong_left_point",
    "bo_wong_right",
    "bo_wong_right_point",
]


def _log_nfact(n):
    return mpmath.loggamma(n + 1)


def bo_wong_interior(params: CharlierParams, n: int, y) -> LogComplex:
    """Oscillatory form for real y in (0, 1) with both ny and n(1-y) large."""
    y = to_mp(y)
    if isinstance(y, mpmath.mpc) or not 0 < y < 1:
        raise DomainError("interior literature form needs real y in (0, 1)")
    a = params.a_mp
    with mp.workprec(mp.prec + 20):
        sv = mpmath.sinpi(n * (1 - y))
        if sv == 0:
            return LogComplex.zero()
        lg = (_log_nfact(n) + mpmath.log(y / (1 - y)) / 2 + a / (1 - y)
              + n * y * mpmath.log(y) + n * (1 - y) * mpmath.log(1 - y)
              + mpmath.log(abs(sv)) + mpmath.log(2 / (n * mp.pi)) / 2)
        return LogComplex(lg, 0 if sv > 0 else mp.pi)


def bo_wong_right_point(params: CharlierParams, n: int, s):
    """x = n y with y = 1 + 2 sqrt(a)/sqrt(n) + s/n^{5/6} + a/n."""
    a = params.a_mp
    return n + 2 * mpmath.sqrt(a * n) + mpf(s) * mpmath.root(n, 6) + a


def bo_wong_left_point(params: CharlierParams, n: int, s):
    """x = n - 2 sqrt(a n) + s n^{1/6} + a."""
    a = params.a_mp
    return n - 2 * mpmath.sqrt(a * n) + mpf(s) * mpmath.root(n, 6) + a


def _edge_log_prefactor(a, n, x):
    return (_log_nfact(n) + 3 * a / 2 + (x - n) / 2 * mpmath.log(n / a)
            - mpmath.log(a * n) / 6)


def bo_wong_right(params: CharlierParams, n: int, s) -> LogComplex:
    """Airy form at the right scaling point for parameter s."""
    a = params.a_mp
    with mp.workprec(mp.prec + 20):
        x = bo_wong_right_point(params, n, s)
        ai = airy_eval(mpf(s) * a ** (-mpf(1) / 6)).ai
        if ai == 0:
            return LogComplex.zero()
        lg = _edge_log_prefactor(a, n, x) + mpmath.log(abs(ai))
        return LogComplex(lg, 0 if ai > 0 else mp.pi)


def bo_wong_left(params: CharlierParams, n: int, s) -> LogComplex:
    """Two-wave form at the left scaling point for parameter s."""
    a = params.a_mp
    with mp.workprec(mp.prec + 20):
        x = bo_wong_left_point(params, n, s)
        sigma = mpf(s) * a ** (-mpf(1) / 6)
        # exp(i pi/3) sigma = omega^2 * (-sigma)
        rot = airy_rotated(-sigma, OMEGA2).to_complex()
        wave = 2 * mpmath.re(mpmath.expjpi(x + mpf(1) / 3) * rot)
        if n % 2:
            wave = -wave
        if wave == 0:
            return LogComplex.zero()
        lg = _edge_log_prefactor(a, n, x) + mpmath.log(abs(wave))
        return LogComplex(lg, 0 if wave > 0 else mp.pi)


LITERATURE_FORMS = {
    "bo-wong-0": bo_wong_interior,
    "bo-wong-right": bo_wong_right,
    "bo-wong-left": bo_wong_left,
}
