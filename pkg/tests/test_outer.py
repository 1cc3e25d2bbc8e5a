import random

import mpmath
import pytest
from mpmath import mp, mpc, mpf

from charlier.errors import BranchError, DomainError, LadderBreakdownError
from charlier.exact import CharlierParams, eval_recurrence
from charlier.outer import (dist_to_unit_segment, interior_oscillatory_formula, ladder_bound_constants,
                            origin_gamma_formula, outer_formula, wk_ladder)
from charlier.results import ErrorOrder, FormulaTag
from charlier.special import log_gamma_ratio

P1 = CharlierParams(1)


def err(res, n, x, params=P1):
    return res.value.relative_error(eval_recurrence(params, n, x))


def test_distance_to_segment():
    assert dist_to_unit_segment(2) == 1
    assert dist_to_unit_segment(-0.5) == 0.5
    assert dist_to_unit_segment(mpc(0.5, 0.3)) == mpf(0.3)
    assert abs(dist_to_unit_segment(mpc(2, 1)) - mpmath.sqrt(2)) < mpf(10) ** -70


def test_ladder_first_rung_and_exactness():
    lad = wk_ladder(P1, 100, 200)
    assert lad.w[0] == 200 - 1
    assert abs(lad.log_product().relative_error(eval_recurrence(P1, 100, 200))) < mpf(10) ** -60


def test_ladder_bounds_at_y2():
    n = 100
    lad = wk_ladder(P1, n, 2 * n)
    m0, m1, big_n = lad.bound_constants
    assert (m0, m1, big_n) == ladder_bound_constants(P1, 1)
    assert all(abs(d) <= m0 / n for d in lad.delta)
    assert n > big_n
    assert all(abs(e) <= m1 / n ** 2 for e in lad.eps)


def test_ladder_exactness_random():
    rng = random.Random(5)
    for _ in range(50):
        n = rng.randint(5, 300)
        while True:
            y = mpc(rng.uniform(-2, 3), rng.uniform(-1.5, 1.5))
            if dist_to_unit_segment(y) > 0.3:
                break
        lad = wk_ladder(P1, n, y * n)
        assert lad.log_product().relative_error(eval_recurrence(P1, n, y * n)) < mpf(10) ** -50


def test_ladder_bounds_random():
    rng = random.Random(9)
    for _ in range(15):
        a = rng.choice([0.5, 1.0, 2.0])
        n = rng.choice([200, 400])
        p = CharlierParams(a)
        y = mpc(rng.uniform(-2, 3), rng.uniform(-1.5, 1.5))
        if dist_to_unit_segment(y) < 0.5:
            continue
        lad = wk_ladder(p, n, y * n)
        m0, m1, big_n = lad.bound_constants
        if n <= big_n:
            continue
        assert max(abs(d) for d in lad.delta) <= m0 / n
        assert max(abs(e) for e in lad.eps) <= m1 / n ** 2


def test_ladder_breakdown():
    with pytest.raises(LadderBreakdownError):
        wk_ladder(P1, 5, 1)


def test_outer_at_y2_is_order_one_over_n():
    n = 200
    res = outer_formula(P1, n, 2)
    assert res.formula_tag is FormulaTag.OUTER and res.error_order is ErrorOrder.INV_N
    c = err(res, n, 2 * n) * n
    assert c < 0.1   # measured C ~ 0.04


@pytest.mark.parametrize("y", [1.5, 3, -0.25, -4])
def test_outer_is_real_on_real_axis(y):
    v = outer_formula(P1, 64, y).value
    assert v.phase in (0, mp.pi)


def test_outer_error_halves_with_n():
    errs = [err(outer_formula(P1, n, 2), n, 2 * n) for n in (128, 256, 512)]
    for e1, e2 in zip(errs, errs[1:]):
        assert 1.7 <= e1 / e2 <= 2.3


@pytest.mark.parametrize("y", [0, 0.5, 1])
def test_outer_rejects_segment(y):
    with pytest.raises(BranchError):
        outer_formula(P1, 10, y)


def test_origin_is_exact_zero_at_small_integers():
    # n a power of two keeps y = x/n exact
    for x in (0, 1, 7, 127):
        assert origin_gamma_formula(P1, 128, mpf(x) / 128).value.is_zero


def test_origin_at_negative_half():
    n = 300
    e = err(origin_gamma_formula(P1, n, -0.5), n, -150)
    assert e * n < 1


def test_origin_prefactor_at_origin():
    # dividing out (-1)^n Gamma(n - x)/Gamma(-x) leaves exp(a / (1 - y)) -> e^a
    n, x = 40, mpf("0.5")
    res = origin_gamma_formula(CharlierParams(2), n, x / n).value
    ratio = (res / log_gamma_ratio(n - x, -x)).to_complex()
    assert abs(ratio - mpmath.exp(2 / (1 - x / n))) < mpf(10) ** -50


def test_origin_identity_path_agrees_with_direct_path():
    # just off the real axis the direct path is used, on it the identity path
    n = 60
    on = origin_gamma_formula(P1, n, mpf(-0.3))
    off = origin_gamma_formula(P1, n, mpc(-0.3, 1e-30))
    assert on.details["path"] != off.details["path"] or on.details["path"] == "direct"
    assert on.value.relative_error(off.value) < 1e-20


def first_order_coefficient(a, y):
    """lim n * rel_err of the Gamma-ratio form.

    From C_n = e^a sum_j (-a)^j/j! (-1)^n Gamma(n-x-j)/Gamma(-x-j): the
    j-th term carries prod_{i<=j} (x+i)/(n-x-i), so with z = a y/(1-y) the
    correction is E[j(j+1)]/(2 n y (1-y)) under Poisson(z) weights.
    """
    z = a * y / (1 - y)
    return abs(z * (z + 2)) / (2 * abs(y * (1 - y)))


@pytest.mark.parametrize("y", [mpc(0.5, 0.5), mpf(-0.5), mpc(-1, 0.7)])
def test_origin_error_matches_first_order_coefficient(y):
    n = 400
    kappa = first_order_coefficient(1, y)
    assert abs(err(origin_gamma_formula(P1, n, y), n, y * n) * n - kappa) <= 0.1 * kappa


def test_interior_zero_at_integers():
    assert interior_oscillatory_formula(P1, 400, mpf(200) / 400).value.is_zero


def test_interior_domain():
    for y in (0, 1, 1.5, mpc(0.5, 0.1)):
        with pytest.raises(DomainError):
            interior_oscillatory_formula(P1, 10, y)


def test_interior_accuracy_at_strong_points():
    n = 400
    kappa = first_order_coefficient(1, mpf(0.5))   # = 6
    for x in (mpf(199.5), mpf(200.25), mpf(201.6)):
        assert abs(mpmath.sinpi(x)) >= 0.5
        assert err(interior_oscillatory_formula(P1, n, x / n), n, x) * n <= 1.1 * kappa


def test_interior_agrees_with_origin():
    n = 500
    y = mpf("0.4") + mpf("0.5") / n
    a = interior_oscillatory_formula(P1, n, y).value
    b = origin_gamma_formula(P1, n, y).value
    assert a.relative_error(b) <= 5 / n
