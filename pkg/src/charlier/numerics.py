"""Overflow-proof scalar types.

Values of Charlier polynomials reach magnitudes like n**n, so everything the
package returns is carried as a logarithm of the modulus plus a sign or a
phase.  Arithmetic runs on mpmath at the ambient ``mp.prec``; operations that
exponentiate a stored logarithm add guard bits proportional to the size of
that logarithm so the round trip keeps full working precision.
"""
from __future__ import annotations

from dataclasses import dataclass

import mpmath
from mpmath import mp, mpc, mpf

from .errors import DomainError

__all__ = [
    "DEFAULT_WORKING_BITS",
    "HARD_CAP_BITS",
    "LogComplex",
    "PrecisionPolicy",
    "SignedLogValue",
    "lc_from_polar_of_log",
    "normalize_phase",
    "slv_add",
    "to_mp",
]

DEFAULT_WORKING_BITS = 256
HARD_CAP_BITS = 16384


@dataclass(frozen=True)
class PrecisionPolicy:
    working_bits: int = DEFAULT_WORKING_BITS
    target_rel_err: float = 1e-50
    hard_cap_bits: int = HARD_CAP_BITS

    def __post_init__(self):
        if int(self.working_bits) != self.working_bits or self.working_bits < 64:
            raise DomainError(f"working_bits must be an integer >= 64, got {self.working_bits}")
        if not self.target_rel_err > 0:
            raise DomainError("target_rel_err must be positive")
        if self.hard_cap_bits < self.working_bits:
            raise DomainError("hard_cap_bits below working_bits")

    def escalated(self) -> "PrecisionPolicy":
        """Return the policy with working precision doubled."""
        return PrecisionPolicy(2 * self.working_bits, self.target_rel_err, self.hard_cap_bits)


def to_mp(z):
    """Convert a number (or a ``"re+imi"``-free numeric) to mpf, or mpc when non-real."""
    if isinstance(z, (mpf, mpc)):
        if isinstance(z, mpc) and z.imag == 0:
            return z.real
        return z
    if isinstance(z, complex):
        if z.imag == 0:
            return mpf(z.real)
        return mpc(z.real, z.imag)
    return mpf(z)


def _guard_bits(*logs) -> int:
    big = 1
    for v in logs:
        if mpmath.isfinite(v):
            big = max(big, int(abs(v)) + 1)
    return 12 + big.bit_length()


def normalize_phase(phase):
    """Reduce a phase into (-pi, pi]; an exact -pi maps to +pi."""
    phase = mpf(phase)
    if not mpmath.isfinite(phase):
        raise DomainError("phase must be finite")
    two_pi = 2 * mp.pi
    if -mp.pi < phase <= mp.pi:
        return phase
    with mp.workprec(mp.prec + _guard_bits(phase)):
        reduced = phase - two_pi * mpmath.floor((phase + mp.pi) / two_pi)
    reduced = +reduced
    if reduced > mp.pi:
        reduced = reduced - two_pi
    # ties (within rounding of the reduction) go to +pi
    tol = 4 * mp.eps * max(1, abs(phase))
    if reduced <= -mp.pi + tol or abs(reduced - mp.pi) <= tol:
        reduced = +mp.pi
    return reduced


# ---------------------------------------------------------------------------
# Signed logarithm of a real number
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class SignedLogValue:
    sign: int
    log_abs: mpf = mpf(0)

    def __post_init__(self):
        if self.sign not in (-1, 0, 1):
            raise DomainError(f"sign must be -1, 0 or +1, got {self.sign}")
        if self.sign == 0:
            object.__setattr__(self, "log_abs", mpf(0))
        else:
            la = self.log_abs if isinstance(self.log_abs, mpf) else mpf(self.log_abs)
            if not mpmath.isfinite(la):
                raise DomainError("log_abs must be finite for a non-zero value")
            object.__setattr__(self, "log_abs", la)

    @classmethod
    def from_real(cls, v) -> "SignedLogValue":
        v = mpf(v)
        if v == 0:
            return cls(0)
        with mp.workprec(mp.prec + 64):
            # first pass only to size the guard
            rough = mpmath.log(abs(v))
        with mp.workprec(mp.prec + _guard_bits(rough)):
            return cls(1 if v > 0 else -1, mpmath.log(abs(v)))

    def to_real(self) -> mpf:
        if self.sign == 0:
            return mpf(0)
        with mp.workprec(mp.prec + _guard_bits(self.log_abs)):
            v = mpmath.exp(self.log_abs)
        return +(v if self.sign > 0 else -v)

    @property
    def is_zero(self) -> bool:
        return self.sign == 0

    def __neg__(self):
        return SignedLogValue(-self.sign, self.log_abs)

    def __add__(self, other):
        return slv_add(self, other)

    def __sub__(self, other):
        return slv_add(self, -other)

    def __mul__(self, other):
        if self.sign == 0 or other.sign == 0:
            return SignedLogValue(0)
        with mp.workprec(mp.prec + _guard_bits(self.log_abs, other.log_abs)):
            return SignedLogValue(self.sign * other.sign, self.log_abs + other.log_abs)

    def __truediv__(self, other):
        if other.sign == 0:
            raise ZeroDivisionError("division by a zero SignedLogValue")
        if self.sign == 0:
            return SignedLogValue(0)
        with mp.workprec(mp.prec + _guard_bits(self.log_abs, other.log_abs)):
            return SignedLogValue(self.sign * other.sign, self.log_abs - other.log_abs)

    def __pow__(self, p):
        if self.sign == 0:
            if p > 0:
                return SignedLogValue(0)
            raise ZeroDivisionError("zero to a non-positive power")
        if self.sign < 0:
            if int(p) != p:
                raise DomainError("negative value raised to a non-integer power")
            sign = -1 if int(p) % 2 else 1
        else:
            sign = 1
        with mp.workprec(mp.prec + _guard_bits(self.log_abs * p)):
            return SignedLogValue(sign, self.log_abs * p)

    def to_log_complex(self) -> "LogComplex":
        if self.sign == 0:
            return LogComplex.zero()
        return LogComplex(self.log_abs, 0 if self.sign > 0 else mp.pi)


def slv_add(x: SignedLogValue, y: SignedLogValue) -> SignedLogValue:
    """Sum of two signed-log values by log-sum-exp anchored at the larger magnitude."""
    if x.sign == 0:
        return y
    if y.sign == 0:
        return x
    if y.log_abs > x.log_abs:
        x, y = y, x
    with mp.workprec(mp.prec + _guard_bits(x.log_abs)):
        diff = y.log_abs - x.log_abs
        if x.sign == y.sign:
            return SignedLogValue(x.sign, x.log_abs + mpmath.log1p(mpmath.exp(diff)))
        # opposite signs: |x| >= |y|
        if -diff <= 8 * mp.eps * max(1, abs(x.log_abs)):
            return SignedLogValue(0)
        return SignedLogValue(x.sign, x.log_abs + mpmath.log(-mpmath.expm1(diff)))


# ---------------------------------------------------------------------------
# Complex numbers as (log-modulus, phase)
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class LogComplex:
    """exp(log_mod + i*phase).  ``log_mod = -inf`` is exact zero, ``+inf`` a pole."""

    log_mod: mpf
    phase: mpf = mpf(0)

    def __post_init__(self):
        lm = self.log_mod if isinstance(self.log_mod, mpf) else mpf(self.log_mod)
        if mpmath.isnan(lm):
            raise DomainError("log_mod is NaN")
        if mpmath.isinf(lm):
            ph = mpf(0)
        else:
            ph = normalize_phase(self.phase)
        object.__setattr__(self, "log_mod", lm)
        object.__setattr__(self, "phase", ph)

    # constructors -------------------------------------------------------
    @classmethod
    def zero(cls) -> "LogComplex":
        return cls(mpf("-inf"), 0)

    @classmethod
    def infinity(cls) -> "LogComplex":
        return cls(mpf("inf"), 0)

    @classmethod
    def one(cls) -> "LogComplex":
        return cls(mpf(0), 0)

    @classmethod
    def from_complex(cls, z) -> "LogComplex":
        z = to_mp(z)
        if z == 0:
            return cls.zero()
        if isinstance(z, mpf):
            return cls(mpmath.log(abs(z)), 0 if z > 0 else mp.pi)
        return cls(mpmath.log(abs(z)), mpmath.arg(z))

    @classmethod
    def from_log(cls, L) -> "LogComplex":
        """From a complex logarithm ``L`` (any branch)."""
        L = to_mp(L)
        if isinstance(L, mpf):
            return cls(L, 0)
        return cls(L.real, L.imag)

    # predicates ---------------------------------------------------------
    @property
    def is_zero(self) -> bool:
        return self.log_mod == mpf("-inf")

    @property
    def is_infinite(self) -> bool:
        return self.log_mod == mpf("inf")

    @property
    def log10_mod(self) -> mpf:
        return self.log_mod / mpmath.log(10)

    def is_real(self, tol=None) -> bool:
        if self.is_zero:
            return True
        tol = 1e-9 if tol is None else tol
        return abs(self.phase) <= tol or mp.pi - abs(self.phase) <= tol

    # arithmetic ---------------------------------------------------------
    def __mul__(self, other):
        if not isinstance(other, LogComplex):
            other = LogComplex.from_complex(other)
        if (self.is_zero and other.is_infinite) or (self.is_infinite and other.is_zero):
            raise DomainError("0 * inf in log space")
        if self.is_zero or other.is_zero:
            return LogComplex.zero()
        if self.is_infinite or other.is_infinite:
            return LogComplex.infinity()
        return LogComplex(self.log_mod + other.log_mod, self.phase + other.phase)

    __rmul__ = __mul__

    def __truediv__(self, other):
        if not isinstance(other, LogComplex):
            other = LogComplex.from_complex(other)
        if other.is_zero:
            raise ZeroDivisionError("division by zero LogComplex")
        if other.is_infinite:
            if self.is_infinite:
                raise DomainError("inf / inf in log space")
            return LogComplex.zero()
        if self.is_zero or self.is_infinite:
            return self
        return LogComplex(self.log_mod - other.log_mod, self.phase - other.phase)

    def __pow__(self, k):
        if int(k) != k:
            raise DomainError("only integer powers are branch-free")
        k = int(k)
        if self.is_zero:
            if k > 0:
                return self
            raise ZeroDivisionError("zero to a non-positive power")
        return LogComplex(self.log_mod * k, self.phase * k)

    def __neg__(self):
        if self.is_zero or self.is_infinite:
            return self
        return LogComplex(self.log_mod, self.phase + mp.pi)

    def __add__(self, other):
        if not isinstance(other, LogComplex):
            other = LogComplex.from_complex(other)
        if self.is_zero:
            return other
        if other.is_zero:
            return self
        big, small = (self, other) if self.log_mod >= other.log_mod else (other, self)
        # cancellation is judged at the ambient precision the operands carry
        tiny = 8 * mp.eps
        with mp.workprec(mp.prec + _guard_bits(big.log_mod)):
            rel = mpmath.exp(mpc(small.log_mod - big.log_mod, small.phase - big.phase))
            s = 1 + rel
            if abs(s) <= tiny:
                return LogComplex.zero()
            return LogComplex(big.log_mod + mpmath.log(abs(s)), big.phase + mpmath.arg(s))

    def __sub__(self, other):
        if not isinstance(other, LogComplex):
            other = LogComplex.from_complex(other)
        return self + (-other)

    def conjugate(self) -> "LogComplex":
        return LogComplex(self.log_mod, -self.phase)

    def scale_log(self, delta) -> "LogComplex":
        """Multiply by exp(delta) for real or complex ``delta``."""
        return self * LogComplex.from_log(delta)

    # conversions --------------------------------------------------------
    def to_complex(self):
        if self.is_zero:
            return mpc(0)
        if self.is_infinite:
            raise OverflowError("LogComplex pole has no finite value")
        # the phase may carry more bits than the ambient precision (or fewer)
        tie = mpf(2) ** (8 - mp.prec)
        with mp.workprec(mp.prec + _guard_bits(self.log_mod)):
            if abs(self.phase) <= tie:
                z = mpmath.exp(self.log_mod)
            elif mp.pi - abs(self.phase) <= tie:
                z = -mpmath.exp(self.log_mod)
            else:
                z = mpmath.exp(mpc(self.log_mod, self.phase))
        return +z

    def to_python(self) -> complex:
        """Value as a Python complex; only meaningful when the magnitude fits a double."""
        z = self.to_complex()
        return complex(float(z.real), float(z.imag))

    def to_signed_log(self, tol=None) -> SignedLogValue:
        if self.is_zero:
            return SignedLogValue(0)
        tol = 1e-9 if tol is None else tol
        if abs(self.phase) <= tol:
            return SignedLogValue(1, self.log_mod)
        if mp.pi - abs(self.phase) <= tol:
            return SignedLogValue(-1, self.log_mod)
        raise DomainError(f"phase {mpmath.nstr(self.phase, 8)} is not real")

    def relative_error(self, reference: "LogComplex"):
        """|self/reference - 1| without forming either value."""
        if reference.is_zero:
            return mpf(0) if self.is_zero else mpf("inf")
        if self.is_zero:
            return mpf(1)
        d = mpc(self.log_mod - reference.log_mod,
                normalize_phase(self.phase - reference.phase))
        return abs(mpmath.expm1(d))

    def __repr__(self):
        return (f"LogComplex(log_mod={mpmath.nstr(self.log_mod, 12)}, "
                f"phase={mpmath.nstr(self.phase, 12)})")


def lc_from_polar_of_log(re_log_part, im_phase_part) -> LogComplex:
    """exp(re_log_part + i*im_phase_part) as a LogComplex."""
    re_log_part, im_phase_part = mpf(re_log_part), mpf(im_phase_part)
    if not (mpmath.isfinite(re_log_part) and mpmath.isfinite(im_phase_part)):
        raise DomainError("lc_from_polar_of_log needs finite inputs")
    return LogComplex(re_log_part, im_phase_part)
