import math

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from weylwalk.numerics import QuadratureError, adaptive_gk15, bisect_increasing


@pytest.mark.parametrize("f, a, b, exact", [
    (np.cos, 0.0, 1.0, math.sin(1.0)),
    (lambda x: x ** 7, -1.0, 2.0, (2.0 ** 8 - 1.0) / 8),
    (lambda x: 1.0 / (1e-4 + x ** 2), -1.0, 1.0, 2 * math.atan(100.0) * 100.0),
    (np.sqrt, 0.0, 1.0, 2.0 / 3.0),
])
@pytest.mark.filterwarnings("ignore::RuntimeWarning")
def test_adaptive_gk15(f, a, b, exact):
    value, err = adaptive_gk15(f, a, b, rtol=1e-12)
    assert abs(value - exact) <= 1e-11 * abs(exact)
    assert err <= 1e-11 * abs(exact)


def test_empty_interval():
    assert adaptive_gk15(np.exp, 1.0, 1.0) == (0.0, 0.0)


@pytest.mark.filterwarnings("ignore::RuntimeWarning")
def test_nonfinite_integrand_raises():
    with pytest.raises(QuadratureError):
        adaptive_gk15(lambda x: 1.0 / x, -1.0, 1.0, max_panels=50)


@given(st.floats(min_value=0.0, max_value=15.0))
def test_bisection_against_atanh(target):
    # beyond about 19 the root rounds to 1.0 in double precision
    x = bisect_increasing(np.arctanh, target, 1.0, xtol=1e-15)
    assert x < 1.0
    assert abs(x - math.tanh(target)) <= 2e-15


def test_bisection_at_origin():
    assert bisect_increasing(lambda x: x, 0.0, 1.0) == 0.0


@pytest.mark.parametrize("delta", [1e-1, 1e-3, 1e-6])
def test_double_pole_near_endpoint(delta):
    # a large first error estimate must not leave rounding residue in the running sums
    a, q = 0.5, 2.0 / 3.0
    b = math.sqrt(a / q) * (1 - delta)
    exact = b / (2 * a * (a - q * b * b)) + math.atanh(b * math.sqrt(q / a)) / (2 * a * math.sqrt(a * q))
    value, _ = adaptive_gk15(lambda s: 1.0 / (a - q * s * s) ** 2, 0.0, b)
    assert value == pytest.approx(exact, rel=1e-9)
