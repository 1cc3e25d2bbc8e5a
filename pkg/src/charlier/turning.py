"""Airy-type approximations at the turning points t = +2 sqrt(a) and t = -2 sqrt(a).

The right map eta(t) solves (2/3) eta^{3/2} = R(t) with
R(t) = t Log((t + s)/(2 sqrt a)) - s,  s = sqrt(t^2 - 4a).
Writing t = 2 sqrt(a) (1 + v) gives (3/2) R = v^{3/2} S(v) with S analytic at
v = 0, so eta = v S(v)^{2/3} is a power series; its coefficients are built
once per (a, precision) and reused.  Away from the turning point eta comes
from the closed form, with the cube-root branch fixed by continuation along
the ray from 2 sqrt(a).

The left map is the mirror image: eta~(t) = eta(-t), Phi~(t) = -Phi(-t),
A0~(t) = A0(-t).
"""
from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

import mpmath
from mpmath import mp, mpc, mpf

from .errors import AmbiguousDominanceError, BranchError, DomainError, OutOfNeighborhoodError
from .exact import CharlierParams
from .intermediate import log_inv_sqrt_weight, sqrt_disc, x_from_t
from .numerics import LogComplex, to_mp
from .results import ApproxResult, ErrorOrder, FormulaTag
from .special import airy_ai_complex, airy_eval

__all__ = [
    "TurningMapLeft",
    "TurningMapRight",
    "airy_formula_left",
    "airy_formula_left_bi_dominant",
    "airy_formula_left_complex",
    "airy_formula_left_two_term",
    "airy_formula_right",
    "dominance_holds",
    "left_validity_radius",
    "log_airy_constant",
    "map_left",
    "map_right",
    "map_right_direct",
    "map_right_series",
    "series_switch_radius",
]


def series_switch_radius(a) -> mpf:
    return mpf("0.25") * mpmath.sqrt(mpf(a))


def left_validity_radius(a) -> mpf:
    return mpf("0.75") * mpmath.sqrt(mpf(a))


@dataclass(frozen=True)
class TurningMapRight:
    t: object
    eta: object
    phi: object
    a0: object
    path: str = "direct"


@dataclass(frozen=True)
class TurningMapLeft:
    t: object
    eta_tilde: object
    phi_tilde: object
    a0_tilde: object
    path: str = "direct"


def _clean(z):
    """Drop a zero imaginary part so real inputs give mpf outputs."""
    if isinstance(z, mpc) and z.imag == 0:
        return z.real
    return z


# ---------------------------------------------------------------------------
# series coefficients of E(v) = eta / v
# ---------------------------------------------------------------------------


def _series_order(prec):
    # |v| <= 1/8 at the switch radius and the coefficients shrink roughly like 2^-k
    return int(prec * 0.6931471805599453 / 2.0) + 12


@lru_cache(maxsize=32)
def _eta_coeffs(a_key, prec):
    """Coefficients e_k with eta = v * sum e_k v^k, t = 2 sqrt(a)(1 + v)."""
    with mp.workprec(prec + 30):
        a = mpf(a_key)
        order = _series_order(prec)
        # F(v) = 2F1(1/2, 1/2; 3/2; -v/2)
        f = [mpf(1)]
        for k in range(1, order + 1):
            f.append(f[-1] * (k - mpf(0.5)) ** 2 / ((k + mpf(0.5)) * k) * mpf(-0.5))
        s = [3 * mpmath.sqrt(2 * a) * f[k] / (k + mpf(1.5)) for k in range(order + 1)]
        # E = S^{2/3} via the power-series power recurrence
        alpha = mpf(2) / 3
        p = [sk / s[0] for sk in s]
        q = [mpf(1)]
        for k in range(1, order + 1):
            acc = mpf(0)
            for j in range(1, k + 1):
                acc += ((alpha + 1) * j - k) * p[j] * q[k - j]
            q.append(acc / k)
        lead = s[0] ** alpha
        return tuple(lead * qk for qk in q)


def _horner(coeffs, v):
    acc = mpf(0) * v
    for c in reversed(coeffs):
        acc = acc * v + c
    return acc


def map_right_series(params: CharlierParams, t) -> TurningMapRight:
    """Series evaluation, meant for |t - 2 sqrt a| within the switch radius."""
    a = params.a_mp
    t = to_mp(t)
    c = 2 * mpmath.sqrt(a)
    h = t - c
    v = h / c
    e_over_v = _horner(_eta_coeffs(str(a), mp.prec), v)  # eta / v
    eta_over_h = e_over_v / c
    eta = eta_over_h * h
    root = mpmath.sqrt(h + 2 * c)
    phi = -t * root / (4 * mpmath.sqrt(eta_over_h))
    a0 = ((h + 2 * c) / (4 * a * eta_over_h)) ** mpf(-0.25)
    return TurningMapRight(t, _clean(eta), _clean(phi), _clean(a0), "series")


def _r_right(a, t):
    sd = sqrt_disc(a, t)
    return t * mpmath.log((t + sd) / (2 * mpmath.sqrt(a))) - sd, sd


def _nearest_cube_root(target_sq, prev):
    """Cube roots of target_sq; return the one nearest prev."""
    base = mpmath.cbrt(target_sq) if mpmath.im(target_sq) == 0 and mpmath.re(target_sq) >= 0 \
        else mpmath.root(target_sq, 3)
    best = None
    for k in range(3):
        cand = base * mpmath.expjpi(mpf(2 * k) / 3)
        if best is None or abs(cand - prev) < abs(best - prev):
            best = cand
    return best


def map_right_direct(params: CharlierParams, t) -> TurningMapRight:
    """Closed-form evaluation; loses accuracy very close to the turning point."""
    a = params.a_mp
    t = to_mp(t)
    c = 2 * mpmath.sqrt(a)
    if mpmath.im(t) == 0:
        t = mpmath.re(t)
        if t <= -c:
            raise BranchError("right map excludes real t <= -2 sqrt(a)")
        if t == c:
            return map_right_series(params, t)
        if t > c:
            r, sd = _r_right(a, t)
            r = mpmath.re(r)
            sd = mpmath.re(sd)
            eta = (mpf(1.5) * r) ** (mpf(2) / 3)
            phi = -t * sd / (4 * mpmath.sqrt(eta))
            a0 = ((t * t - 4 * a) / (4 * a * eta)) ** mpf(-0.25)
            return TurningMapRight(t, eta, phi, a0, "direct")
        theta = mpmath.acos(t / c)
        st = mpmath.sin(theta)
        meta = (mpf(1.5) * c * (st - theta * t / c)) ** (mpf(2) / 3)
        w = mpmath.sqrt(4 * a - t * t)
        phi = -t * w / (4 * mpmath.sqrt(meta))
        a0 = ((4 * a - t * t) / (4 * a * meta)) ** mpf(-0.25)
        return TurningMapRight(t, -meta, phi, a0, "direct")
    # complex t: continue the cube root along the ray from the turning point
    h = t - c
    rad = series_switch_radius(a)
    direction = h / abs(h)
    start = c + direction * rad / 2
    eta = map_right_series(params, start).eta
    steps = 32 + int(16 * abs(h) / rad)
    s0 = rad / 2
    for i in range(1, steps + 1):
        pt = c + direction * (s0 + (abs(h) - s0) * mpf(i) / steps)
        r, _ = _r_right(a, pt)
        eta = _nearest_cube_root((mpf(1.5) * r) ** 2, eta)
    r, sd = _r_right(a, t)
    phi = -t * sd * eta / (6 * r)
    q = (t * t - 4 * a) / (4 * a * eta)
    a0 = mpmath.exp(-mpmath.log(q) / 4)
    return TurningMapRight(t, eta, phi, a0, "direct")


def map_right(params: CharlierParams, t) -> TurningMapRight:
    """eta, Phi, A0 for the right turning point; series inside the switch radius."""
    a = params.a_mp
    t = to_mp(t)
    c = 2 * mpmath.sqrt(a)
    if mpmath.im(t) == 0 and mpmath.re(t) <= -c:
        raise BranchError("right map excludes real t <= -2 sqrt(a)")
    with mp.workprec(mp.prec + 20):
        if abs(t - c) <= series_switch_radius(a):
            m = map_right_series(params, t)
        else:
            m = map_right_direct(params, t)
    return TurningMapRight(m.t, _round(m.eta), _round(m.phi), _round(m.a0), m.path)


def _round(z):
    return +z


def map_left(params: CharlierParams, t) -> TurningMapLeft:
    """Mirror of map_right: eta~(t) = eta(-t), Phi~(t) = -Phi(-t), A0~(t) = A0(-t)."""
    t = to_mp(t)
    c = 2 * mpmath.sqrt(params.a_mp)
    if mpmath.im(t) == 0 and mpmath.re(t) >= c:
        raise BranchError("left map excludes real t >= 2 sqrt(a)")
    m = map_right(params, -t)
    return TurningMapLeft(t, m.eta, -m.phi, m.a0, m.path)


# ---------------------------------------------------------------------------
# Airy-type formulas
# ---------------------------------------------------------------------------


def log_airy_constant(params: CharlierParams, n: int):
    """log of (2a)^{n/2} Gamma((n+1)/2)/Gamma(1/2) (pi/(2a))^{1/4} e^{a/2}."""
    a = params.a_mp
    return (n * mpmath.log(2 * a) / 2 + mpmath.loggamma(mpf(n + 1) / 2)
            - mpmath.log(mp.pi) / 2 + mpmath.log(mp.pi / (2 * a)) / 4 + a / 2)


def _prefactor(params, n, x, amp):
    """log of C * x^{1/12} * w(x)^{-1/2} * amp (without the (-1)^n of the left constant)."""
    return (log_airy_constant(params, n) + mpmath.log(mpc(x)) / 12
            + log_inv_sqrt_weight(params, x) + mpmath.log(mpc(amp)))


def airy_formula_right(params: CharlierParams, n: int, t) -> ApproxResult:
    """Uniform Airy form around t = 2 sqrt(a)."""
    t = to_mp(t)
    with mp.workprec(mp.prec + 20):
        m = map_right(params, t)
        arg = mpmath.cbrt(n) * m.eta + m.phi / mpmath.root(n, 6)
        x = x_from_t(n, t)
        pre = LogComplex.from_log(_prefactor(params, n, x, m.a0))
        arg = _clean(mpc(arg))
        if isinstance(arg, mpf):
            ai = LogComplex.from_complex(airy_eval(arg).ai)
        else:
            ai = airy_ai_complex(arg)
        value = pre * ai
    return ApproxResult(value, FormulaTag.TURN_RIGHT, (ErrorOrder.AIRY,),
                        {"airy_arg": arg, "map_path": m.path})


def _left_pieces(params, n, t):
    m = map_left(params, t)
    theta = mpmath.cbrt(n) * m.eta_tilde + m.phi_tilde / mpmath.root(n, 6)
    x = x_from_t(n, t)
    pre = LogComplex.from_log(_prefactor(params, n, x, m.a0_tilde))
    if n % 2:
        pre = -pre
    return m, _clean(mpc(theta)), x, pre


def airy_formula_left(params: CharlierParams, n: int, t) -> ApproxResult:
    """Real-line Airy form around t = -2 sqrt(a): cos(x pi) Ai - sin(x pi) Bi."""
    t = to_mp(t)
    if isinstance(t, mpc):
        raise DomainError("real-line left form needs real t; use airy_formula_left_complex")
    a = params.a_mp
    if abs(t + 2 * mpmath.sqrt(a)) > left_validity_radius(a):
        raise OutOfNeighborhoodError(
            "t is outside the left turning-point neighbourhood; use the band or interior forms")
    with mp.workprec(mp.prec + 20):
        m, theta, x, pre = _left_pieces(params, n, t)
        p = airy_eval(theta)
        bracket = mpmath.cospi(x) * p.ai - mpmath.sinpi(x) * p.bi
        value = pre * LogComplex.from_complex(bracket)
    return ApproxResult(value, FormulaTag.TURN_LEFT, (ErrorOrder.AIRY,),
                        {"airy_arg": theta, "x": x, "ai": p.ai, "bi": p.bi,
                         "map_path": m.path})


def airy_formula_left_bi_dominant(params: CharlierParams, n: int, t) -> ApproxResult:
    """Left form for real t < -2 sqrt(a) keeping only the growing Bi term.

    There Theta is large and positive, Ai(Theta) is negligible, and the value
    reduces to Bi(Theta) cos(x pi + pi/2).  No neighbourhood check: this is the
    reduction used to match the interior oscillatory form further left.
    """
    t = to_mp(t)
    a = params.a_mp
    if isinstance(t, mpc) or t >= -2 * mpmath.sqrt(a):
        raise DomainError("Bi-dominant reduction needs real t < -2 sqrt(a)")
    with mp.workprec(mp.prec + 20):
        m, theta, x, pre = _left_pieces(params, n, t)
        bi = airy_eval(theta).bi
        value = pre * LogComplex.from_complex(-mpmath.sinpi(x) * bi)
    return ApproxResult(value, FormulaTag.TURN_LEFT, (ErrorOrder.AIRY,),
                        {"airy_arg": theta, "x": x, "reduction": "bi_dominant"})


def dominance_holds(params: CharlierParams, t) -> bool:
    """One-sided left form applies when |Im h| > |h|^{3/2}, h = t + 2 sqrt(a)."""
    h = to_mp(t) + 2 * mpmath.sqrt(params.a_mp)
    return abs(mpmath.im(h)) > abs(h) ** mpf(1.5)


def _one_sided_terms(params, n, t):
    m, theta, x, pre = _left_pieces(params, n, t)
    w = mpmath.expjpi(mpf(2) / 3)
    upper = mpmath.exp(-1j * (x * mp.pi + mp.pi / 3)) * mpmath.airyai(w * theta)
    lower = mpmath.exp(1j * (x * mp.pi + mp.pi / 3)) * mpmath.airyai(w * w * theta)
    return m, theta, x, pre, upper, lower


def airy_formula_left_two_term(params: CharlierParams, n: int, t) -> ApproxResult:
    """Both exponential terms of the left form; equals the real-line form on the axis."""
    t = to_mp(t)
    with mp.workprec(mp.prec + 20):
        m, theta, x, pre, upper, lower = _one_sided_terms(params, n, t)
        value = pre * LogComplex.from_complex(upper + lower)
    return ApproxResult(value, FormulaTag.TURN_LEFT, (ErrorOrder.AIRY,),
                        {"airy_arg": theta, "x": x, "form": "two_term"})


def airy_formula_left_complex(params: CharlierParams, n: int, t) -> ApproxResult:
    """One-sided left form for complex t where one exponential dominates."""
    t = to_mp(t)
    if not dominance_holds(params, t):
        raise AmbiguousDominanceError(
            "neither term dominates; use the real-line form or the two-term form")
    with mp.workprec(mp.prec + 20):
        m, theta, x, pre, upper, lower = _one_sided_terms(params, n, t)
        term = upper if mpmath.im(t) > 0 else lower
        value = pre * LogComplex.from_complex(term)
    return ApproxResult(value, FormulaTag.TURN_LEFT, (ErrorOrder.AIRY,),
                        {"airy_arg": theta, "x": x, "form": "one_sided"})
