"""Reference values of monic Charlier polynomials.

Two independent routes: the three-term recurrence and the explicit finite
sum.  Both run at a working precision that is doubled until two successive
levels agree to the policy's target, so cancellation in the oscillatory zone
is handled by precision rather than by a cleverer algorithm.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field

import gmpy2
import mpmath
from mpmath import mp, mpc, mpf

from .errors import CapabilityError, DomainError, PrecisionExhaustedError, TailInsufficientError
from .numerics import LogComplex, PrecisionPolicy, to_mp

__all__ = [
    "CharlierParams",
    "EvalPoint",
    "SUM_CAP",
    "adaptive",
    "eval_explicit_sum",
    "eval_recurrence",
    "exact_sign",
    "orthogonality_check",
]

SUM_CAP = 200


@dataclass(frozen=True)
class CharlierParams:
    a: float
    precision: PrecisionPolicy = field(default_factory=PrecisionPolicy)

    def __post_init__(self):
        a = self.a
        if isinstance(a, (complex, mpc)) or not a > 0 or not mpmath.isfinite(a):
            raise DomainError(f"parameter a must be a positive real, got {a!r}")

    @property
    def a_mp(self) -> mpf:
        return mpf(self.a)


@dataclass(frozen=True)
class EvalPoint:
    n: int
    x: object

    def __post_init__(self):
        if int(self.n) != self.n or self.n < 0:
            raise DomainError(f"degree must be a non-negative integer, got {self.n!r}")
        object.__setattr__(self, "n", int(self.n))

    @property
    def x_mp(self):
        return to_mp(self.x)

    @property
    def y(self):
        if self.n < 1:
            raise DomainError("y = x/n needs n >= 1")
        return self.x_mp / self.n

    @property
    def t(self):
        return mpmath.sqrt(self.n) * (self.y - 1)

    @classmethod
    def from_y(cls, n, y):
        return cls(n, to_mp(y) * n)

    @classmethod
    def from_t(cls, n, t):
        return cls(n, n * (1 + to_mp(t) / mpmath.sqrt(n)))

    @classmethod
    def from_theta(cls, n, a, theta):
        t = 2 * mpmath.sqrt(mpf(a)) * mpmath.cos(mpf(theta))
        return cls.from_t(n, t)


def adaptive(compute, policy: PrecisionPolicy) -> LogComplex:
    """Run ``compute()`` at doubling precisions until two levels agree."""
    bits = policy.working_bits
    with mp.workprec(bits):
        prev = compute()
    while True:
        bits *= 2
        if bits > policy.hard_cap_bits:
            raise PrecisionExhaustedError(
                f"no agreement to {policy.target_rel_err:g} below {policy.hard_cap_bits} bits")
        with mp.workprec(bits):
            cur = compute()
            if cur.is_zero and prev.is_zero:
                return cur
            if not cur.is_zero and not prev.is_zero:
                if prev.relative_error(cur) <= policy.target_rel_err:
                    return cur
        prev = cur


def _check_degree(n):
    if int(n) != n or n < 0:
        raise DomainError(f"degree must be a non-negative integer, got {n!r}")
    return int(n)


def _recurrence_raw(a, n, x):
    """C_n(x) by forward recurrence at the ambient precision (mpf/mpc have unbounded exponents)."""
    a = mpf(a)
    x = to_mp(x)
    prev, cur = mpf(0), mpf(1) + 0 * x
    for k in range(n):
        prev, cur = cur, (x - k - a) * cur - a * k * prev
    return cur


def _dyadic(v):
    """(m, e) with v = m * 2**e exactly; v must be a float, int or mpf."""
    if isinstance(v, int):
        return v, 0
    v = mpf(v) if not isinstance(v, mpf) else v
    if v == 0:
        return 0, 0
    sign, man, exp, _ = v._mpf_   # man_exp drops the sign
    return (-int(man) if sign else int(man)), int(exp)


def exact_sign(a, n: int, x) -> int:
    """Exact sign of C_n(x) for dyadic-rational a and x (floats, ints, mpf).

    With D = 2**E clearing both denominators, c_k = D**k C_k obeys an integer
    recurrence, so the sign involves no rounding at all.
    """
    n = _check_degree(n)
    ma, ea = _dyadic(a)
    mx, ex = _dyadic(x)
    e = min(ea, ex, 0)
    big_d = gmpy2.mpz(1) << (-e)
    big_a = gmpy2.mpz(ma) << (ea - e)
    big_x = gmpy2.mpz(mx) << (ex - e)
    ad = big_a * big_d
    base = big_x - big_a
    prev, cur = gmpy2.mpz(0), gmpy2.mpz(1)
    for k in range(n):
        prev, cur = cur, (base - k * big_d) * cur - (ad * k) * prev
    return (cur > 0) - (cur < 0)


def eval_recurrence(params: CharlierParams, n: int, x) -> LogComplex:
    """Monic C_n(x) from the three-term recurrence with adaptive precision."""
    n = _check_degree(n)
    return adaptive(lambda: LogComplex.from_complex(_recurrence_raw(params.a, n, x)),
                    params.precision)


def _explicit_raw(a, n, x):
    a = mpf(a)
    x = to_mp(x)
    total = mpf(0)
    binom_n = mpf(1)   # binom(n, k)
    falling = mpf(1)   # x (x-1) ... (x-k+1)
    for k in range(n + 1):
        total += binom_n * falling * (-a) ** (n - k)
        binom_n = binom_n * (n - k) / (k + 1)
        falling = falling * (x - k)
    return total


def eval_explicit_sum(params: CharlierParams, n: int, x, sum_cap: int = SUM_CAP) -> LogComplex:
    """Monic C_n(x) from the explicit binomial sum; only for n <= sum_cap."""
    n = _check_degree(n)
    if n > sum_cap:
        raise CapabilityError(f"explicit sum limited to n <= {sum_cap}; use eval_recurrence")

    def compute():
        # terms can exceed the result by many orders; carry the excess as guard bits
        x_mp = to_mp(x)
        scale = (abs(x_mp) + mpf(params.a) + n + 1) ** n
        guard = int(mpmath.log(scale, 2)) + 32
        with mp.workprec(mp.prec + guard):
            v = _explicit_raw(params.a, n, x_mp)
        return LogComplex.from_complex(v)

    return adaptive(compute, params.precision)


def _tail_ok(a, n, m, k_max, scale_log):
    """Bound sum_{k > k_max} (k+a)^{n+m} a^k / k! against 1e-30 * scale."""
    k = k_max + 1
    ratio = math.exp((n + m) / (k + a)) * a / (k + 1)
    if ratio >= 1:
        return False
    log_tau = (n + m) * math.log(k + a) + k * math.log(a) - math.lgamma(k + 1)
    log_tail = log_tau - math.log(1 - ratio)
    return log_tail < scale_log + math.log(1e-30)


def orthogonality_check(params: CharlierParams, n: int, m: int, k_max: int):
    """Relative deviation of the truncated weighted inner product from its exact value."""
    n, m = _check_degree(n), _check_degree(m)
    if n > 30 or m > 30:
        raise DomainError("orthogonality check supports degrees up to 30")
    a = float(params.a)
    scale_log = a + n * math.log(a) + math.lgamma(n + 1)
    if not _tail_ok(a, n, m, k_max, scale_log):
        suggestion = max(k_max + 1, 2 * (n + m) + int(2 * a) + 2)
        while not _tail_ok(a, n, m, suggestion, scale_log):
            suggestion = int(suggestion * 1.25) + 1
        raise TailInsufficientError(
            f"k_max={k_max} leaves a tail above 1e-30 of the normalisation", suggestion)
    with mp.workprec(max(params.precision.working_bits, 128)):
        am = mpf(params.a)
        s = mpf(0)
        weight = mpf(1)
        for k in range(k_max + 1):
            s += _recurrence_raw(am, n, k) * _recurrence_raw(am, m, k) * weight
            weight = weight * am / (k + 1)
        scale = mpmath.exp(am) * am ** n * mpmath.factorial(n)
        if n == m:
            return abs(s / scale - 1)
        return abs(s) / scale
