"""Adaptive Gauss-Kronrod quadrature and bracketing bisection."""

from __future__ import annotations

import itertools
import math

import numpy as np


class QuadratureError(RuntimeError):
    pass


class BisectionError(RuntimeError):
    pass


# 7-point Gauss / 15-point Kronrod nodes and weights on [-1, 1]
_XGK = np.array([
    0.991455371120812639206854697526329,
    0.949107912342758524526189684047851,
    0.864864423359769072789712788640926,
    0.741531185599394439863864773280788,
    0.586087235467691130294144845693013,
    0.405845151377397166906606412076961,
    0.207784955007898467600689403773245,
    0.000000000000000000000000000000000,
])
_WGK = np.array([
    0.022935322010529224963732008058970,
    0.063092092629978553290700663189204,
    0.104790010322250183839876322541518,
    0.140653259715525918745189590510238,
    0.169004726639267902826583426598550,
    0.190350578064785409913256402421014,
    0.204432940075298892414161999234649,
    0.209482141084727828012999174891714,
])
_WG = np.array([
    0.129484966168869693270611432679082,
    0.279705391489276667901467771423780,
    0.381830050505118944950369775488975,
    0.417959183673469387755102040816327,
])

_NODES = np.concatenate([-_XGK[:-1], _XGK[::-1]])
_KRONROD = np.concatenate([_WGK[:-1], _WGK[::-1]])
# Gauss nodes are the odd-indexed Kronrod nodes (1, 3, 5, 7 from each end)
_GAUSS = np.zeros(15)
_GAUSS[[1, 3, 5, 7, 9, 11, 13]] = np.concatenate([_WG, _WG[-2::-1]])


def _gk15(f, a: float, b: float):
    half = 0.5 * (b - a)
    mid = 0.5 * (a + b)
    fx = f(mid + half * _NODES)
    kronrod = half * float(fx @ _KRONROD)
    gauss = half * float(fx @ _GAUSS)
    return kronrod, abs(kronrod - gauss)


def adaptive_gk15(f, a: float, b: float, rtol: float = 1e-10, atol: float = 1e-14,
                  max_panels: int = 2000) -> tuple[float, float]:
    """Integrate a vectorised ``f`` over [a, b] by global adaptive GK15.

    The panel with the largest error estimate is bisected until the summed
    estimate is below ``max(atol, rtol * |integral|)``.

    Returns
    -------
    (value, error_estimate)

    Raises
    ------
    QuadratureError
        if the tolerance is not met within ``max_panels`` panels or the
        integrand is not finite.
    """
    if a == b:
        return 0.0, 0.0
    value, err = _gk15(f, a, b)
    panels = [(-err, a, b, value, err)]
    total, total_err = value, err
    for iteration in itertools.count(1):
        if not (math.isfinite(total) and math.isfinite(total_err)):
            raise QuadratureError("integrand is not finite on the interval")
        done = total_err <= max(atol, rtol * abs(total))
        if done or len(panels) >= max_panels or iteration % 64 == 0:
            # the running sums lose accuracy once a large early error estimate
            # has been subtracted, so resynchronise before any decision
            total = math.fsum(p[3] for p in panels)
            total_err = math.fsum(p[4] for p in panels)
            if total_err <= max(atol, rtol * abs(total)):
                break
            if len(panels) >= max_panels:
                raise QuadratureError(
                    f"no convergence after {max_panels} panels (error {total_err:.3e})")
        # list kept sorted by descending error; panel counts stay small
        _, lo, hi, v, e = panels.pop(0)
        mid = 0.5 * (lo + hi)
        if not lo < mid < hi:
            raise QuadratureError("interval cannot be subdivided further")
        v1, e1 = _gk15(f, lo, mid)
        v2, e2 = _gk15(f, mid, hi)
        total += v1 + v2 - v
        total_err += e1 + e2 - e
        for item in ((-e1, lo, mid, v1, e1), (-e2, mid, hi, v2, e2)):
            _insort(panels, item)
    # re-sum to avoid drift from the incremental updates
    total = math.fsum(p[3] for p in panels)
    total_err = math.fsum(p[4] for p in panels)
    return total, total_err


def _insort(panels, item):
    lo, hi = 0, len(panels)
    while lo < hi:
        mid = (lo + hi) // 2
        if panels[mid][0] < item[0]:
            lo = mid + 1
        else:
            hi = mid
    panels.insert(lo, item)


def bisect_increasing(g, target: float, upper: float, xtol: float = 1e-12,
                      max_iter: int = 200) -> float:
    """Solve g(x) = target for an increasing ``g`` on [0, upper) with g(0) <= target.

    The upper bracket is ``upper * (1 - 2**-j)`` for j = 1, 2, ... until it
    exceeds the target; ``g(upper)`` may be infinite. Bisection then runs to
    ``|hi - lo| <= xtol`` or until the bracket cannot be split in floating point.
    """
    lo = 0.0
    if g(lo) >= target:
        return lo
    hi = None
    for j in range(1, 60):
        cand = upper * (1.0 - 2.0 ** -j)
        if g(cand) > target:
            hi = cand
            break
        lo = cand
    if hi is None:
        hi = upper
    for _ in range(max_iter):
        mid = 0.5 * (lo + hi)
        if hi - lo <= xtol or not lo < mid < hi:
            return mid
        if g(mid) > target:
            hi = mid
        else:
            lo = mid
    raise BisectionError(f"bisection did not reach |dx| <= {xtol} in {max_iter} iterations")
