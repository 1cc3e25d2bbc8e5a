"""Airy functions and log-Gamma.

Airy: Maclaurin series inside ``SERIES_RADIUS`` with guard bits to absorb the
cancellation, Poincare expansions outside, truncated at the smallest term.
Rotated arguments s*omega, s*omega**2 are reduced to the real axis through
Ai(s*omega) = exp(i*pi/3) * (Ai(s) - i*Bi(s)) / 2 and its conjugate.

log-Gamma: Stirling series above a precision-dependent shift threshold,
recurrence lifting below it, reflection for Re z < 0.
"""
from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

import mpmath
from mpmath import mp, mpc, mpf

from .errors import DomainError, IndeterminateError, PoleError
from .numerics import LogComplex, to_mp

__all__ = [
    "AiryPair",
    "OMEGA",
    "OMEGA2",
    "RotatedAiryValue",
    "SERIES_RADIUS",
    "airy_ai_complex",
    "airy_ai_zero",
    "airy_eval",
    "airy_eval_asymptotic",
    "airy_eval_series",
    "airy_rotated",
    "is_gamma_pole",
    "log_gamma",
    "log_gamma_ratio",
    "loggamma_branch",
    "shift_threshold",
]

SERIES_RADIUS = 9
OMEGA = "omega"
OMEGA2 = "omega2"


@dataclass(frozen=True)
class AiryPair:
    ai: mpf
    ai_prime: mpf
    bi: mpf
    bi_prime: mpf

    @property
    def wronskian(self):
        return self.ai * self.bi_prime - self.ai_prime * self.bi


@dataclass(frozen=True)
class RotatedAiryValue:
    value: LogComplex
    rotation: str


# ---------------------------------------------------------------------------
# Airy on the real line
# ---------------------------------------------------------------------------


def airy_eval_series(z) -> AiryPair:
    z = mpf(z)
    prec = mp.prec
    # terms peak near exp(2/3 |z|^{3/2}); two such factors can cancel
    guard = 20 + int(2 * (2.0 / 3.0) * abs(float(z)) ** 1.5 / 0.69) + 1
    with mp.workprec(prec + guard):
        z3 = z ** 3
        c1 = mpf(3) ** (mpf(-2) / 3) / mpmath.gamma(mpf(2) / 3)
        c2 = mpf(3) ** (mpf(-1) / 3) / mpmath.gamma(mpf(1) / 3)
        # f = sum z^{3k}/D_k,  D_{k+1} = D_k (3k+2)(3k+3)
        # g = sum z^{3k+1}/E_k, E_{k+1} = E_k (3k+3)(3k+4)
        f = fp = g = gp = mpf(0)
        tf = mpf(1)  # z^{3k} / D_k
        tg = mpf(1)  # z^{3k} / E_k
        tol = mpmath.ldexp(1, -(prec + guard))
        k = 0
        while True:
            f += tf
            g += tg * z
            gp += (3 * k + 1) * tg
            if k > 0:
                fp += 3 * k * tf_prev_deriv
            tf_prev_deriv = tf * z * z / ((3 * k + 2) * (3 * k + 3))  # z^{3k+2}/D_{k+1}
            tf = tf * z3 / ((3 * k + 2) * (3 * k + 3))
            tg = tg * z3 / ((3 * k + 3) * (3 * k + 4))
            k += 1
            if k > 3 and abs(tf) + abs(tg) * (1 + abs(z)) < tol * (abs(f) + abs(g) + 1) \
                    and abs(tf_prev_deriv) * 3 * k < tol * (abs(fp) + 1):
                fp += 3 * k * tf_prev_deriv
                break
        s3 = mpmath.sqrt(3)
        ai = c1 * f - c2 * g
        aip = c1 * fp - c2 * gp
        bi = s3 * (c1 * f + c2 * g)
        bip = s3 * (c1 * fp + c2 * gp)
    return AiryPair(+ai, +aip, +bi, +bip)


def _uv_coeffs(kmax):
    u = [mpf(1)]
    v = [mpf(1)]
    for k in range(1, kmax + 1):
        u.append(u[-1] * (6 * k - 5) * (6 * k - 3) * (6 * k - 1) / ((2 * k - 1) * 216 * k))
        v.append(-mpf(6 * k + 1) / (6 * k - 1) * u[-1])
    return u, v


def _truncated_sums(zeta, alternating, parity=None):
    """Optimally truncated sums of u_k/zeta^k and v_k/zeta^k.

    ``parity`` selects the even (0) or odd (1) subsequence with alternating
    signs on the subsequence index, as used by the oscillatory forms.
    """
    kmax = max(4, int(2 * float(zeta)) + 2)
    u, v = _uv_coeffs(kmax)
    su = sv = mpf(0)
    last_u = last_v = mpf("inf")
    for k in range(kmax + 1):
        if parity is not None:
            if k % 2 != parity:
                continue
            sign = -1 if (k // 2) % 2 else 1
        else:
            sign = -1 if (alternating and k % 2) else 1
        tu = u[k] / zeta ** k
        tv = v[k] / zeta ** k
        if abs(tu) > last_u and abs(tv) > last_v:
            break
        su += sign * tu
        sv += sign * tv
        last_u, last_v = abs(tu), abs(tv)
        if abs(tu) + abs(tv) < mp.eps * (abs(su) + abs(sv)):
            break
    return su, sv


def airy_eval_asymptotic(z) -> AiryPair:
    z = mpf(z)
    if z == 0:
        raise DomainError("asymptotic Airy expansion needs z != 0")
    with mp.workprec(mp.prec + 20):
        x = abs(z)
        zeta = mpf(2) / 3 * x ** mpf(1.5)
        q = x ** mpf(0.25)
        rpi = mpmath.sqrt(mp.pi)
        if z > 0:
            su_a, sv_a = _truncated_sums(zeta, True)
            su_b, sv_b = _truncated_sums(zeta, False)
            e = mpmath.exp(-zeta)
            ai = e / (2 * rpi * q) * su_a
            aip = -q * e / (2 * rpi) * sv_a
            bi = 1 / (e * rpi * q) * su_b
            bip = q / (e * rpi) * sv_b
        else:
            ue, ve = _truncated_sums(zeta, False, parity=0)
            uo, vo = _truncated_sums(zeta, False, parity=1)
            c = mpmath.cos(zeta - mp.pi / 4)
            s = mpmath.sin(zeta - mp.pi / 4)
            ai = (c * ue + s * uo) / (rpi * q)
            aip = q / rpi * (s * ve - c * vo)
            bi = (-s * ue + c * uo) / (rpi * q)
            bip = q / rpi * (c * ve + s * vo)
    return AiryPair(+ai, +aip, +bi, +bip)


def airy_eval(z) -> AiryPair:
    """Ai, Ai', Bi, Bi' at a finite real z."""
    z = mpf(z)
    if not mpmath.isfinite(z):
        raise DomainError("airy_eval needs a finite argument")
    if abs(z) <= SERIES_RADIUS:
        return airy_eval_series(z)
    return airy_eval_asymptotic(z)


def airy_rotated(s, rotation=OMEGA) -> LogComplex:
    """Ai(s*omega) or Ai(s*omega**2) for real s, as a LogComplex."""
    s = mpf(s)
    p = airy_eval(s)
    if rotation == OMEGA:
        half = mpc(p.ai, -p.bi) / 2
        return LogComplex.from_complex(half) * LogComplex(0, mp.pi / 3)
    if rotation == OMEGA2:
        half = mpc(p.ai, p.bi) / 2
        return LogComplex.from_complex(half) * LogComplex(0, -mp.pi / 3)
    raise DomainError(f"rotation must be {OMEGA!r} or {OMEGA2!r}")


def airy_ai_complex(z) -> LogComplex:
    """Ai at a general complex argument (off the real line and the two rays)."""
    z = to_mp(z)
    if isinstance(z, mpf):
        return LogComplex.from_complex(airy_eval(z).ai)
    return LogComplex.from_complex(mpmath.airyai(z))


@lru_cache(maxsize=4096)
def _airy_zero_cached(j, prec):
    with mp.workprec(prec):
        t = 3 * mp.pi / 8 * (4 * j - 1)
        guess = -(t ** (mpf(2) / 3)) * (1 + mpf(5) / 48 / t ** 2 - mpf(5) / 36 / t ** 4)
        # bracket the zero around the guess, then bisect / Newton
        step = mpf("0.5") / mpmath.sqrt(abs(guess) + 1)
        lo, hi = guess - step, guess + step
        flo, fhi = airy_eval(lo).ai, airy_eval(hi).ai
        while flo * fhi > 0:
            step *= 2
            lo, hi = guess - step, guess + step
            flo, fhi = airy_eval(lo).ai, airy_eval(hi).ai
        x = guess
        for _ in range(200):
            p = airy_eval(x)
            if p.ai == 0:
                return x
            if (p.ai > 0) == (flo > 0):
                lo, flo = x, p.ai
            else:
                hi = x
            nx = x - p.ai / p.ai_prime
            if not (lo < nx < hi):
                nx = (lo + hi) / 2
            if abs(nx - x) <= 8 * mp.eps * abs(x):
                return nx
            x = nx
        return x


def airy_ai_zero(j: int) -> mpf:
    """j-th zero (j >= 1) of Ai, counted from the origin; all are negative."""
    if int(j) != j or j < 1:
        raise DomainError("Airy zero index must be a positive integer")
    return +_airy_zero_cached(int(j), mp.prec)


# ---------------------------------------------------------------------------
# log-Gamma
# ---------------------------------------------------------------------------


def shift_threshold(bits=None) -> float:
    """Re z above which the Stirling series alone reaches ``bits`` of accuracy."""
    bits = mp.prec if bits is None else bits
    return max(10.0, bits * 0.6931471805599453 / (2 * 3.141592653589793) + 2)


def is_gamma_pole(z) -> bool:
    z = to_mp(z)
    if isinstance(z, mpc):
        return False
    return z <= 0 and z == mpmath.floor(z)


@lru_cache(maxsize=64)
def _stirling_coeffs(kmax, prec):
    with mp.workprec(prec):
        return tuple(mpmath.bernoulli(2 * k) / (2 * k * (2 * k - 1)) for k in range(1, kmax + 1))


def _stirling(z):
    """Principal log Gamma(z) for Re z above the shift threshold."""
    kmax = int(3.2 * abs(z)) + 2
    coeffs = _stirling_coeffs(min(kmax, 400), mp.prec)
    s = (z - mpf(0.5)) * mpmath.log(z) - z + mpmath.log(2 * mp.pi) / 2
    zinv2 = 1 / (z * z)
    p = 1 / z
    last = mpf("inf")
    for c in coeffs:
        term = c * p
        if abs(term) > last:
            break
        s += term
        last = abs(term)
        if last < mp.eps * abs(s):
            break
        p *= zinv2
    return s


def loggamma_branch(z):
    """Principal log Gamma(z), continuous off the negative real axis.

    On the negative real axis the value is the limit from above.
    """
    z = to_mp(z)
    if is_gamma_pole(z):
        raise PoleError(f"Gamma has a pole at {z}")
    prec = mp.prec
    with mp.workprec(prec + 20 + int(abs(z)).bit_length()):
        thr = shift_threshold(prec)
        m = 0
        if z.real < thr:
            m = int(mpmath.ceil(thr - z.real))
        s = _stirling(z + m)
        if m:
            if isinstance(z, mpf) and z > 0:
                prod = mpf(1)
                for k in range(m):
                    prod *= z + k
                s -= mpmath.log(prod)
            else:
                for k in range(m):
                    w = z + k
                    if isinstance(w, mpf) and w < 0:
                        s -= mpc(mpmath.log(-w), mp.pi)
                    else:
                        s -= mpmath.log(w)
    return +s


def log_gamma(z) -> LogComplex:
    """log Gamma(z) as a LogComplex (phase reduced mod 2 pi)."""
    z = to_mp(z)
    if is_gamma_pole(z):
        raise PoleError(f"Gamma has a pole at {z}")
    if z.real >= 0:
        return LogComplex.from_log(loggamma_branch(z))
    # reflection: Gamma(z) = pi / (sin(pi z) Gamma(1 - z))
    with mp.workprec(mp.prec + 20):
        sin_part = LogComplex.from_complex(mpmath.sinpi(z))
        other = LogComplex.from_log(loggamma_branch(1 - z))
        return LogComplex.from_complex(mp.pi) / sin_part / other


def log_gamma_ratio(num, den) -> LogComplex:
    """log(Gamma(num)/Gamma(den)) with explicit pole bookkeeping.

    A pole in ``den`` alone gives an exact zero, a pole in ``num`` alone an
    infinite result; poles in both raise IndeterminateError.
    """
    pn, pd = is_gamma_pole(num), is_gamma_pole(den)
    if pn and pd:
        raise IndeterminateError("both Gamma arguments sit at poles")
    if pd:
        return LogComplex.zero()
    if pn:
        return LogComplex.infinity()
    return log_gamma(num) / log_gamma(den)
