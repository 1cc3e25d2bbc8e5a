"""Zeros of C_n: empirical location by sign changes, plus asymptotic predictions.

Scanning and bisection run on a vectorised double-precision recurrence that
is rescaled every step.  Every final bracket is then re-checked with the
multiprecision recurrence, and re-bisected there if double precision got the
sign wrong.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field

import mpmath
import numpy as np
from mpmath import mp, mpf

from .errors import DomainError, IncompleteScanError, OutOfNeighborhoodError
from .exact import CharlierParams, exact_sign
from .turning import map_right
from .special import airy_ai_zero

__all__ = [
    "ZeroReport",
    "attach_predictions",
    "find_zeros",
    "interlaces",
    "full_scan_bounds",
    "predict_band_zeros",
    "predict_edge_zeros",
    "predict_small_zeros",
    "refine_zero",
    "zero_density",
]

MAX_DEGREE = 2000
SOURCES = ("corollary_integer", "band_cosine", "airy_edge")


@dataclass(frozen=True)
class ZeroReport:
    k: int
    x_empirical: float
    x_predicted: float | None = None
    prediction_source: str | None = None
    abs_gap: float | None = None
    bracket: tuple | None = field(default=None, compare=False, repr=False)


def full_scan_bounds(params: CharlierParams, n: int):
    """An interval certain to contain every zero (all zeros are positive and
    bounded by a Gershgorin estimate of the Jacobi matrix)."""
    a = float(params.a)
    return 0.0, n - 1 + a + 2 * math.sqrt(a * n) + 1.0


def _float_signs(a, n, xs):
    xs = np.asarray(xs, dtype=float)
    prev = np.zeros_like(xs)
    cur = np.ones_like(xs)
    for k in range(n):
        prev, cur = cur, (xs - k - a) * cur - a * k * prev
        scale = np.maximum(np.abs(cur), np.abs(prev))
        big = (scale > 1e150) | ((scale < 1e-150) & (scale > 0))
        if big.any():
            prev[big] /= scale[big]
            cur[big] /= scale[big]
    return np.sign(cur)


def _bisect_float(a, n, lo, hi, slo, tol_rel):
    lo = lo.copy()
    hi = hi.copy()
    for _ in range(80):
        width = hi - lo
        active = width > tol_rel * np.maximum(1.0, np.abs(lo))
        if not active.any():
            break
        mid = 0.5 * (lo + hi)
        smid = _float_signs(a, n, mid)
        lo = np.where(active & (smid == slo), mid, lo)
        hi = np.where(active & (smid != slo), mid, hi)
    return lo, hi


def _bisect_exact(a, n, lo, hi, width):
    """Shrink a verified sign-change bracket to ``width`` using exact signs.

    Endpoints are mpf values at a precision wide enough to hold every
    dyadic midpoint exactly.
    """
    # keep incoming mpf endpoints exact; mpf() would round them to mp.prec
    lo = lo if isinstance(lo, mpf) else mpf(float(lo))
    hi = hi if isinstance(hi, mpf) else mpf(float(hi))
    slo = exact_sign(a, n, lo)
    if slo == 0:
        return lo, lo
    with mp.workprec(64):
        bits = 64 + int(mpmath.log(abs(hi) + 1, 2)) + max(0, int(-mpmath.log(width, 2)))
    with mp.workprec(bits):
        while hi - lo > width:
            mid = (lo + hi) / 2
            sm = exact_sign(a, n, mid)
            if sm == 0:
                return mid, mid
            if sm == slo:
                lo = mid
            else:
                hi = mid
    return lo, hi


def find_zeros(params: CharlierParams, n: int, lo: float, hi: float, *,
               spacing: float = 0.25, tol_rel: float = 1e-12, allow_slow: bool = False):
    """All sign changes of C_n on [lo, hi], bisected to width <= tol_rel*max(1,|x|)."""
    if int(n) != n or n < 1:
        raise DomainError("find_zeros needs a degree n >= 1")
    n = int(n)
    if n > MAX_DEGREE and not allow_slow:
        raise DomainError(f"find_zeros is limited to n <= {MAX_DEGREE} unless allow_slow")
    lo, hi = float(lo), float(hi)
    if not lo < hi:
        raise DomainError("scan interval must have lo < hi")
    a = float(params.a)
    full = lo <= 0 and hi >= full_scan_bounds(params, n)[1] - 1.0
    h = spacing
    while True:
        # stagger by half a step: at integers C_n is tiny by cancellation and
        # the double-precision sign there is unreliable
        m = int(math.ceil((hi - lo) / h)) + 1
        grid = lo - h / 2 + h * np.arange(m + 1)
        signs = np.array([exact_sign(a, n, float(g)) for g in grid]) if m < 64 \
            else _float_signs(a, n, grid)
        idx = [i for i in range(m) if signs[i] * signs[i + 1] < 0]
        exact = [i for i in range(m + 1) if signs[i] == 0]
        if not full or len(idx) + len(exact) >= n or h < 1e-3:
            break
        h /= 2
    blo, bhi = _bisect_float(a, n, grid[idx], grid[[i + 1 for i in idx]],
                             signs[idx], tol_rel)

    brackets = []
    for i in exact:
        if exact_sign(a, n, float(grid[i])) == 0:
            brackets.append((mpf(float(grid[i])), mpf(float(grid[i]))))
    for j, i in enumerate(idx):
        x0, x1 = float(blo[j]), float(bhi[j])
        s0, s1 = exact_sign(a, n, x0), exact_sign(a, n, x1)
        if s0 * s1 < 0:
            brackets.append((mpf(x0), mpf(x1)))
        elif s0 == 0 or s1 == 0:
            x = x0 if s0 == 0 else x1
            brackets.append((mpf(x), mpf(x)))
        else:
            # double precision misjudged a sign; redo this bracket exactly
            g0, g1 = float(grid[i]), float(grid[i + 1])
            if exact_sign(a, n, g0) * exact_sign(a, n, g1) < 0:
                width = tol_rel * max(1.0, abs(g0))
                k = round((g0 + g1) / 2)
                if g0 < k < g1:
                    # zeros left of the band sit exponentially close to integers
                    k0, k1 = mpf(k) - mpf(width) / 2, mpf(k) + mpf(width) / 2
                    if exact_sign(a, n, k0) * exact_sign(a, n, k1) < 0:
                        brackets.append((k0, k1))
                        continue
                brackets.append(_bisect_exact(a, n, g0, g1, width))
    brackets.sort()
    reports = []
    for b0, b1 in brackets:
        if b1 < lo or b0 > hi:
            continue
        if reports and b0 <= reports[-1].bracket[1]:
            continue
        reports.append(ZeroReport(len(reports) + 1, float((b0 + b1) / 2), bracket=(b0, b1)))
    if full and len(reports) < n:
        raise IncompleteScanError(f"found {len(reports)} of {n} zeros", reports)
    return reports


def refine_zero(params: CharlierParams, n: int, report: ZeroReport, width) -> ZeroReport:
    """Shrink a report's bracket to ``width`` with exact signs."""
    b0, b1 = report.bracket
    if b0 == b1:
        return report
    lo, hi = _bisect_exact(float(params.a), n, b0, b1, mpf(width))
    with mp.workprec(8192):
        mid = (lo + hi) / 2
    return ZeroReport(report.k, float(mid), report.x_predicted, report.prediction_source,
                      report.abs_gap, (lo, hi))


def interlaces(params: CharlierParams, outer, inner, *, min_width=mpf(2) ** -4000) -> bool:
    """Strict interlacing check between zero sets of degrees n (outer) and n-1 (inner).

    Brackets are shrunk with exact signs until every pair that must be ordered
    is separated, so exponentially close zeros are still compared correctly.
    """
    if len(outer) != len(inner) + 1:
        return False
    a = float(params.a)
    n_out = len(outer)
    n_in = len(inner)
    ob = [list(r.bracket) for r in outer]
    ib = [list(r.bracket) for r in inner]
    # required order: ob[0] < ib[0] < ob[1] < ib[1] < ... < ob[n_in]
    seq = []
    for k in range(n_in):
        seq.append((ob, k, n_out))
        seq.append((ib, k, n_in))
    seq.append((ob, n_in, n_out))
    for i in range(len(seq) - 1):
        left_list, lk, ldeg = seq[i]
        right_list, rk, rdeg = seq[i + 1]
        while not left_list[lk][1] < right_list[rk][0]:
            if left_list[lk][0] >= right_list[rk][1]:
                return False
            with mp.workprec(8192):
                lw = left_list[lk][1] - left_list[lk][0]
                rw = right_list[rk][1] - right_list[rk][0]
            if max(lw, rw) <= min_width:
                return False
            if lw >= rw:
                left_list[lk] = list(_bisect_exact(a, ldeg, left_list[lk][0], left_list[lk][1], lw / 4))
            else:
                right_list[rk] = list(_bisect_exact(a, rdeg, right_list[rk][0], right_list[rk][1], rw / 4))
    return True


# ---------------------------------------------------------------------------
# predictions
# ---------------------------------------------------------------------------


def predict_small_zeros(params: CharlierParams, n: int, k_max: int):
    """The k-th smallest zero sits within an exponentially small distance of k - 1."""
    if k_max < 0:
        raise DomainError("k_max must be non-negative")
    return [float(k) for k in range(int(k_max))]


def _band_phase(a, n, theta):
    return (2 * mpmath.sqrt(a * n) * (mpmath.sin(theta) - theta * mpmath.cos(theta))
            + a * mpmath.sin(theta) * mpmath.cos(theta) - mp.pi / 4)


def predict_band_zeros(params: CharlierParams, n: int):
    """Zeros of the band cosine form: phase = pi/2 + m pi, returned as increasing x."""
    a = params.a_mp
    with mp.workprec(96):
        top = _band_phase(a, n, mp.pi)
        out = []
        m = 0
        while True:
            target = mp.pi / 2 + m * mp.pi
            if target >= top:
                break
            if target > _band_phase(a, n, mpf(0)):
                f = lambda th: _band_phase(a, n, th) - target
                th = mpmath.findroot(f, (mpf(0), mp.pi), solver="anderson")
                t = 2 * mpmath.sqrt(a) * mpmath.cos(th)
                out.append(float(n + mpmath.sqrt(n) * t))
            m += 1
    return sorted(out)


def edge_validity_radius(a):
    return math.sqrt(float(a))


def predict_edge_zeros(params: CharlierParams, n: int, j_max: int, *, strict: bool = True):
    """Largest zeros from Airy zeros: solve n^{1/3} eta(t) + n^{-1/6} Phi(t) = iota_j.

    Returned in decreasing order (j = 1 is the largest zero).  A root outside
    |t - 2 sqrt a| <= sqrt a raises OutOfNeighborhoodError, or ends the list
    when ``strict`` is false.
    """
    a = params.a_mp
    out = []
    with mp.workprec(96):
        c = 2 * mpmath.sqrt(a)
        rad = mpf(edge_validity_radius(params.a))
        n13 = mpmath.cbrt(n)
        n16 = mpmath.root(n, 6)

        def g(t, target):
            m = map_right(params, t)
            return n13 * m.eta + m.phi / n16 - target

        for j in range(1, int(j_max) + 1):
            iota = airy_ai_zero(j)
            lo, hi = c - rad, c + rad
            if g(lo, iota) > 0 or g(hi, iota) < 0:
                if strict:
                    raise OutOfNeighborhoodError(
                        f"edge zero {j} lies outside the turning-point neighbourhood")
                break
            for _ in range(80):
                mid = (lo + hi) / 2
                if g(mid, iota) > 0:
                    hi = mid
                else:
                    lo = mid
            t = (lo + hi) / 2
            out.append(float(n + mpmath.sqrt(n) * t))
    return out


def attach_predictions(params: CharlierParams, n: int, reports):
    """Pair each empirical zero with the prediction for its region."""
    a = float(params.a)
    c = 2 * math.sqrt(a)
    root_n = math.sqrt(n)
    band = predict_band_zeros(params, n)
    edge = predict_edge_zeros(params, n, n, strict=False)
    out = []
    total = len(reports)
    for r in reports:
        t = (r.x_empirical - n) / root_n
        j = total - r.k + 1
        pred = src = None
        if abs(t - c) <= math.sqrt(a) and j <= len(edge):
            pred, src = edge[j - 1], "airy_edge"
        elif -c + 0.75 * math.sqrt(a) < t < c and band:
            pred = min(band, key=lambda b: abs(b - r.x_empirical))
            src = "band_cosine"
        elif t <= -c + 0.75 * math.sqrt(a):
            pred, src = float(r.k - 1), "corollary_integer"
        gap = None if pred is None else abs(r.x_empirical - pred)
        out.append(ZeroReport(r.k, r.x_empirical, pred, src, gap, r.bracket))
    return out


def zero_density(zeros, n: int, bins: int = 10, y_range=(0.0, 1.0)):
    """Histogram of y = x/n normalised so that density 1 means one zero per unit x."""
    ys = np.asarray([z.x_empirical if isinstance(z, ZeroReport) else z for z in zeros]) / n
    counts, edges = np.histogram(ys, bins=bins, range=y_range)
    width = edges[1] - edges[0]
    return [(float(edges[i]), float(edges[i + 1]), int(counts[i]), float(counts[i] / (n * width)))
            for i in range(bins)]
