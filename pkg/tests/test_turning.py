import random

import mpmath
import pytest
from mpmath import mp, mpc, mpf

from charlier.errors import AmbiguousDominanceError, BranchError, DomainError, OutOfNeighborhoodError
from charlier.exact import CharlierParams, eval_recurrence
from charlier.intermediate import intermediate_formula, x_from_t
from charlier.turning import (airy_formula_left, airy_formula_left_complex, airy_formula_left_two_term,
                              airy_formula_right, dominance_holds, left_validity_radius, map_left,
                              map_right, map_right_direct, map_right_series, series_switch_radius)

P1 = CharlierParams(1)


def rhs_right(a, t):
    s = mpmath.sqrt(mpc(t) - 2 * mpmath.sqrt(a)) * mpmath.sqrt(mpc(t) + 2 * mpmath.sqrt(a))
    return t * mpmath.log((t + s) / (2 * mpmath.sqrt(a))) - s, s


def rhs_left(a, t):
    s = mpmath.sqrt(mpc(t) - 2 * mpmath.sqrt(a)) * mpmath.sqrt(mpc(t) + 2 * mpmath.sqrt(a))
    return t * mpmath.log((-t + s) / (2 * mpmath.sqrt(a))) + s, s


@pytest.mark.parametrize("a", [0.5, 1, 3])
def test_right_map_at_turning_point(a):
    m = map_right(CharlierParams(a), 2 * mpmath.sqrt(mpf(a)))
    assert abs(m.eta) < mpf(10) ** -60
    assert abs(m.phi + mpf(a) ** (mpf(5) / 6)) < mpf(10) ** -50
    assert abs(m.a0 - mpf(a) ** (mpf(1) / 12)) < mpf(10) ** -50


def test_right_map_at_four_against_root_oracle():
    target = 4 * mpmath.log(2 + mpmath.sqrt(3)) - 2 * mpmath.sqrt(3)
    eta = mpmath.findroot(lambda e: mpf(2) / 3 * e ** mpf(1.5) - target, 2)
    assert abs(map_right(P1, 4).eta - eta) < mpf(10) ** -60
    assert abs(eta - mpf("1.9417")) < 1e-4


@pytest.mark.parametrize("a", [0.5, 1, 4])
def test_series_direct_stitch(a):
    p = CharlierParams(a)
    c = 2 * mpmath.sqrt(mpf(a))
    r = series_switch_radius(a)
    for ang in (0, 0.7, 1.9, 2.8, -1.2, mp.pi):
        t = c + r * mpmath.expj(ang)
        if ang in (0, mp.pi):
            t = mpmath.re(t)
        s, d = map_right_series(p, t), map_right_direct(p, t)
        for f in ("eta", "phi", "a0"):
            u, v = getattr(s, f), getattr(d, f)
            assert abs(u - v) <= 1e-10 * max(1, abs(v))


def _sample_points(rng, a, count):
    c = 2 * mpmath.sqrt(mpf(a))
    pts = []
    while len(pts) < count:
        r = rng.choice([0.05, 0.2, 0.6, 1.5, 3.0]) * rng.random()
        t = c + r * mpmath.expj(rng.uniform(-3.1, 3.1))
        if abs(mpmath.im(t)) < 1e-3 and mpmath.re(t) <= -c:
            continue
        pts.append(t)
    return pts


@pytest.mark.parametrize("a", [0.5, 2])
def test_right_map_identities(a):
    p = CharlierParams(a)
    rng = random.Random(int(a * 10))
    for t in _sample_points(rng, a, 100):
        m = map_right(p, t)
        R, s = rhs_right(a, t)
        scale = max(1, abs(R) ** 2)
        assert abs(mpf(4) / 9 * m.eta ** 3 - R ** 2) <= 1e-30 * scale
        assert abs(m.eta * m.phi ** 2 - t ** 2 * s ** 2 / 16) <= 1e-30 * max(1, abs(t ** 2 * s ** 2))
        if abs(m.eta) > 1e-20:
            assert abs(m.a0 ** 4 * (t * t - 4 * a) / (4 * a * m.eta) - 1) <= 1e-30


def test_right_map_real_positive_right_of_point():
    for t in (2.1, 3, 7):
        m = map_right(P1, t)
        assert mpmath.im(m.eta) == 0 and m.eta > 0


def test_right_map_excludes_left_cut():
    with pytest.raises(BranchError):
        map_right(P1, -3)


@pytest.mark.parametrize("a", [0.5, 1, 3])
def test_left_map_at_turning_point(a):
    m = map_left(CharlierParams(a), -2 * mpmath.sqrt(mpf(a)))
    assert abs(m.eta_tilde) < mpf(10) ** -60
    assert abs(m.phi_tilde - mpf(a) ** (mpf(5) / 6)) < mpf(10) ** -50
    assert abs(m.a0_tilde - mpf(a) ** (mpf(1) / 12)) < mpf(10) ** -50


def test_left_map_mirrors_right_map():
    target = -4 * mpmath.log(-(-4) / 2 + mpmath.sqrt(3)) * -1 + (-2 * mpmath.sqrt(3))
    m = map_left(P1, -4)
    assert abs(m.eta_tilde - map_right(P1, 4).eta) < mpf(10) ** -60
    R, _ = rhs_left(1, mpf(-4))
    assert abs(mpf(2) / 3 * m.eta_tilde ** mpf(1.5) - R) < mpf(10) ** -50


def test_left_map_slope():
    h = mpf(10) ** -12
    for a in (0.5, 1, 2):
        p = CharlierParams(a)
        c = 2 * mpmath.sqrt(mpf(a))
        slope = (map_left(p, -c + h).eta_tilde - map_left(p, -c - h).eta_tilde) / (2 * h)
        assert abs(slope + mpf(a) ** (-mpf(1) / 6)) < 1e-9


def test_left_map_identities_and_positivity():
    rng = random.Random(4)
    a = 1
    for _ in range(100):
        t = -2 + rng.uniform(0.01, 2.5) * mpmath.expj(rng.uniform(-3.1, 3.1))
        if abs(mpmath.im(t)) < 1e-3 and mpmath.re(t) >= 2:
            continue
        m = map_left(P1, t)
        R, s = rhs_left(a, t)
        assert abs(mpf(4) / 9 * m.eta_tilde ** 3 - R ** 2) <= 1e-30 * max(1, abs(R) ** 2)
        assert abs(m.eta_tilde * m.phi_tilde ** 2 - t ** 2 * s ** 2 / 16) <= 1e-30 * max(1, abs(t * s) ** 2)
    for t in (-2.1, -3, -6):
        m = map_left(P1, t)
        assert m.eta_tilde > 0 and m.a0_tilde > 0 and mpmath.im(m.a0_tilde) == 0


def test_maps_smooth_across_turning_points():
    h = mpf("0.001")
    for mapper, c, fields in ((map_right, 2, ("eta", "phi", "a0")),
                              (map_left, -2, ("eta_tilde", "phi_tilde", "a0_tilde"))):
        ts = [c + k * h for k in range(-300, 301)]
        vals = [mapper(P1, t) for t in ts]
        for f in fields:
            seq = [getattr(v, f) for v in vals]
            d1 = [seq[i + 1] - seq[i] for i in range(len(seq) - 1)]
            d2 = [abs(d1[i + 1] - d1[i]) for i in range(len(d1) - 1)]
            assert max(d2) < 10 * h * h


def test_airy_right_at_turning_point_uses_shift_only():
    n = 4096
    res = airy_formula_right(P1, n, 2)
    assert abs(res.details["airy_arg"] + mpmath.root(n, 6) ** -1) < mpf(10) ** -40


def test_airy_right_accuracy():
    n = 4096
    e = airy_formula_right(P1, n, 2).value.relative_error(eval_recurrence(P1, n, x_from_t(n, 2)))
    assert e * 64 < 0.4     # measured 0.285


def test_airy_right_matches_intermediate_beyond_point():
    n = 10 ** 4
    a = airy_formula_right(P1, n, 3).value
    b = intermediate_formula(P1, n, 3).value
    assert a.relative_error(b) <= 3 * 2 * n ** -0.5


def test_airy_right_intermediate_ratio_tends_to_one():
    d = [airy_formula_right(P1, n, 3).value.relative_error(intermediate_formula(P1, n, 3).value)
         for n in (10 ** 3, 10 ** 4, 10 ** 5)]
    assert d[0] > d[1] > d[2]


def test_airy_right_complex_t():
    n = 2048
    t = mpc(2.3, 0.4)
    e = airy_formula_right(P1, n, t).value.relative_error(eval_recurrence(P1, n, x_from_t(n, t)))
    assert e <= 3 * n ** -0.5


def test_airy_left_integer_x_is_pure_ai():
    n = 4096
    t = mpf(-128) / 64          # x = 4096 - 128 = 3968, an integer
    res = airy_formula_left(P1, n, t)
    assert res.details["x"] == 3968
    ratio = res.value.to_complex()
    # sin(x pi) vanishes so the Bi term must not contribute
    from charlier.turning import _left_pieces
    _, theta, _, pre = _left_pieces(P1, n, t)
    pure = pre.to_complex() * mpmath.airyai(theta)
    assert abs(ratio / pure - 1) < 1e-30


def test_airy_left_accuracy():
    n = 4096
    x = mpf(n) - 128 + mpf("0.3")
    t = (x - n) / 64
    e = airy_formula_left(P1, n, t).value.relative_error(eval_recurrence(P1, n, x))
    assert e <= 3 * n ** -0.5


def test_airy_left_neighbourhood_and_domain():
    with pytest.raises(OutOfNeighborhoodError):
        airy_formula_left(P1, 100, -2 - left_validity_radius(1) - 0.01)
    with pytest.raises(DomainError):
        airy_formula_left(P1, 100, mpc(-2, 0.1))


def test_left_complex_conjugate_symmetry():
    n = 2048
    t = mpc(-2, 0.15)
    u = airy_formula_left_complex(P1, n, t).value
    v = airy_formula_left_complex(P1, n, mpmath.conj(t)).value
    assert v.relative_error(u.conjugate()) < 1e-30


def test_left_complex_needs_dominance():
    t = mpc(-1.5, 0.01)
    assert not dominance_holds(P1, t)
    with pytest.raises(AmbiguousDominanceError):
        airy_formula_left_complex(P1, 100, t)


def test_left_complex_accuracy():
    n = 2048
    t = mpc(-2, 0.15)
    e = airy_formula_left_complex(P1, n, t).value.relative_error(eval_recurrence(P1, n, x_from_t(n, t)))
    assert e <= 3 * n ** -0.5


def test_two_term_form_recovers_real_form_on_axis():
    n = 2048
    t = mpf(-1.9)
    real = airy_formula_left(P1, n, t).value
    for eps in (mpf(10) ** -8, mpf(10) ** -16, mpf(10) ** -30):
        two = airy_formula_left_two_term(P1, n, mpc(t, eps)).value
        assert two.relative_error(real) < 1e-6 * max(1, eps * 1e10)
