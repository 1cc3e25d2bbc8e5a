import math
import random

import mpmath
import pytest
from hypothesis import given, strategies as st
from mpmath import mp, mpf, mpc

from charlier.errors import DomainError
from charlier.numerics import (LogComplex, PrecisionPolicy, SignedLogValue, lc_from_polar_of_log,
                               normalize_phase, slv_add)

finite = st.floats(min_value=-1e6, max_value=1e6, allow_nan=False, allow_infinity=False)
nonzero = st.floats(min_value=-1e30, max_value=1e30, allow_nan=False).filter(lambda v: abs(v) > 1e-30)
phases = st.floats(min_value=-50, max_value=50, allow_nan=False)


def test_slv_add_small_integers():
    r = slv_add(SignedLogValue(1, mpmath.log(2)), SignedLogValue(1, mpmath.log(3)))
    assert r.sign == 1
    assert abs(r.log_abs - mpmath.log(5)) < mpf(10) ** -70


def test_slv_add_cancels_to_zero():
    L = mpf("12.345")
    r = slv_add(SignedLogValue(1, L), SignedLogValue(-1, L))
    assert r.sign == 0 and r.log_abs == 0


def test_slv_add_dominated():
    r = slv_add(SignedLogValue(1, 1000), SignedLogValue(1, 0))
    expected = 1000 + mpmath.log1p(mpmath.exp(-1000))
    assert r.sign == 1
    assert abs(r.log_abs - expected) < mpf(10) ** -70


def test_zero_is_canonical():
    assert SignedLogValue(0, 17).log_abs == 0


def test_huge_logs_do_not_overflow():
    big = SignedLogValue(-1, mpf(10) ** 6)
    prod = big * big * big
    assert prod.sign == -1 and prod.log_abs == 3 * mpf(10) ** 6
    q = prod / big
    assert q.sign == 1 and q.log_abs == 2 * mpf(10) ** 6
    assert (big ** 3).log_abs == 3 * mpf(10) ** 6


def test_same_sign_add_keeps_sign():
    r = slv_add(SignedLogValue(-1, 5), SignedLogValue(-1, -300))
    assert r.sign == -1


@given(nonzero)
def test_real_round_trip(v):
    pol = PrecisionPolicy()
    back = SignedLogValue.from_real(v).to_real()
    assert abs(back - v) <= abs(mpf(v)) * mpf(2) ** (1 - pol.working_bits)


@given(st.tuples(nonzero, nonzero, nonzero))
def test_slv_add_associative(vals):
    a, b, c = (SignedLogValue.from_real(v) for v in vals)
    left = slv_add(slv_add(a, b), c).to_real()
    right = slv_add(a, slv_add(b, c)).to_real()
    # 4 ulps measured against the largest operand: cancellation can make the
    # sum itself arbitrarily small
    scale = max(abs(mpf(v)) for v in vals)
    assert abs(left - right) <= 4 * scale * mpf(2) ** (1 - mp.prec)


def test_lc_from_polar_examples():
    one = lc_from_polar_of_log(0, 0)
    assert one.log_mod == 0 and one.phase == 0
    r = lc_from_polar_of_log(0, 3 * mp.pi)
    assert r.log_mod == 0 and r.phase == mp.pi
    r = lc_from_polar_of_log(mpmath.log(2), mp.pi / 2)
    assert r.log_mod == mpmath.log(2) and r.phase == mp.pi / 2


def test_lc_from_polar_rejects_non_finite():
    with pytest.raises(DomainError):
        lc_from_polar_of_log(mpf("inf"), 0)
    with pytest.raises(DomainError):
        lc_from_polar_of_log(0, mpf("nan"))


def test_phase_ties_go_to_plus_pi():
    assert normalize_phase(-mp.pi) == mp.pi
    assert normalize_phase(mp.pi) == mp.pi
    assert normalize_phase(5 * mp.pi) == mp.pi


@given(phases)
def test_phase_range(p):
    q = normalize_phase(p)
    assert -mp.pi < q <= mp.pi
    k = (mpf(p) - q) / (2 * mp.pi)
    assert abs(k - mpmath.nint(k)) < mpf(10) ** -60


@given(finite, phases, finite, phases)
def test_lc_mul_commutes_and_normalises(l1, p1, l2, p2):
    x, y = LogComplex(l1, p1), LogComplex(l2, p2)
    xy, yx = x * y, y * x
    assert xy.log_mod == yx.log_mod
    assert abs(xy.phase - yx.phase) < mpf(10) ** -60 or abs(abs(xy.phase - yx.phase) - 2 * mp.pi) < mpf(10) ** -60
    assert -mp.pi < xy.phase <= mp.pi


@given(st.complex_numbers(max_magnitude=1e50, allow_nan=False, allow_infinity=False),
       st.complex_numbers(max_magnitude=1e50, allow_nan=False, allow_infinity=False))
def test_lc_arithmetic_matches_direct(z1, z2):
    a, b = LogComplex.from_complex(z1), LogComplex.from_complex(z2)
    za, zb = mpc(z1), mpc(z2)
    if za != 0 and zb != 0:
        assert abs((a * b).to_complex() - za * zb) <= abs(za * zb) * mpf(10) ** -60
        assert abs((a / b).to_complex() - za / zb) <= abs(za / zb) * mpf(10) ** -60
    s = (a + b).to_complex()
    assert abs(s - (za + zb)) <= (abs(za) + abs(zb)) * mpf(10) ** -60


def test_lc_to_signed_log_requires_real_phase():
    assert LogComplex(2, mp.pi).to_signed_log().sign == -1
    assert LogComplex(2, 0).to_signed_log().sign == 1
    with pytest.raises(DomainError):
        LogComplex(2, 1).to_signed_log()


def test_lc_zero_and_pole():
    z = LogComplex.zero()
    assert z.is_zero and (z * LogComplex(5, 1)).is_zero
    assert LogComplex.infinity().is_infinite
    assert (LogComplex.one() + LogComplex(0, mp.pi)).is_zero


def test_lc_huge_values_stay_finite():
    # 1000^1000 * (1+i)^1000 never leaves log space
    v = LogComplex(1000 * mpmath.log(1000), 0) * LogComplex.from_complex(1 + 1j) ** 1000
    assert v.log_mod == 1000 * mpmath.log(1000) + 500 * mpmath.log(2)
    assert abs(v.phase - normalize_phase(1000 * mp.pi / 4)) < mpf(10) ** -60


def test_precision_policy():
    pol = PrecisionPolicy()
    assert pol.working_bits == 256
    up = pol.escalated()
    assert up.working_bits > pol.working_bits
    with pytest.raises(DomainError):
        PrecisionPolicy(working_bits=32)
    with pytest.raises(DomainError):
        PrecisionPolicy(target_rel_err=0)
