import mpmath
import pytest
from mpmath import mpf

from charlier.errors import DomainError
from charlier.exact import CharlierParams, eval_recurrence
from charlier.literature import (LITERATURE_FORMS, bo_wong_interior, bo_wong_left, bo_wong_left_point,
                                 bo_wong_right, bo_wong_right_point)
from charlier.outer import interior_oscillatory_formula, origin_gamma_formula
from charlier.turning import airy_formula_left, airy_formula_right

P1 = CharlierParams(1)
N = 10 ** 4


def t_of(n, x):
    return (x - n) / mpmath.sqrt(n)


def test_scaling_points():
    assert bo_wong_right_point(P1, N, 0) == N + 200 + 1
    assert bo_wong_left_point(P1, N, 0) == N - 200 + 1
    assert bo_wong_right_point(P1, 64, 1) == 64 + 16 + 2 + 1
    assert set(LITERATURE_FORMS) == {"bo-wong-0", "bo-wong-right", "bo-wong-left"}


def test_right_edge_form_matches_turning_form():
    x = bo_wong_right_point(P1, N, 0)
    ours = airy_formula_right(P1, N, t_of(N, x)).value
    assert bo_wong_right(P1, N, 0).relative_error(ours) <= 0.02


def test_left_edge_form_matches_turning_form():
    x = bo_wong_left_point(P1, N, 0)
    ours = airy_formula_left(P1, N, t_of(N, x)).value
    assert bo_wong_left(P1, N, 0).relative_error(ours) <= 0.02


def test_edge_forms_track_the_oracle():
    for form, point in ((bo_wong_right, bo_wong_right_point), (bo_wong_left, bo_wong_left_point)):
        for s in (-1, 0, 1):
            x = point(P1, 4096, s)
            e = form(P1, 4096, s).relative_error(eval_recurrence(P1, 4096, x))
            assert e <= 0.1, (form.__name__, s, e)


def test_right_form_at_large_a():
    p = CharlierParams(3)
    x = bo_wong_right_point(p, N, 0)
    ours = airy_formula_right(p, N, t_of(N, x)).value
    assert bo_wong_right(p, N, 0).relative_error(ours) <= 0.05


def test_interior_form_domain_and_zero():
    with pytest.raises(DomainError):
        bo_wong_interior(P1, 100, 1.5)
    with pytest.raises(DomainError):
        bo_wong_interior(P1, 100, mpmath.mpc(0.5, 0.1))
    assert bo_wong_interior(P1, 100, mpf(3) / 4).is_zero


@pytest.mark.parametrize("n", [1000, 2000, 4000])
def test_interior_form_matches_gamma_form_to_first_order(n):
    y = (mpf("0.4") * n + mpf("0.5")) / n
    bw = bo_wong_interior(P1, n, y)
    assert n * bw.relative_error(origin_gamma_formula(P1, n, y).value) <= 5
    assert n * bw.relative_error(interior_oscillatory_formula(P1, n, y).value) <= 5
