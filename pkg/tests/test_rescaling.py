import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from scipy.integrate import quad

from weylwalk import rescaling
from weylwalk.geometry import REGIONS, Region, in_H, n_of
from weylwalk.rescaling import (
    OnShellPoint, RayProfile, dmap, dmap_inverse, f_prime, f_prime_z_axis, is_null,
    r_max, radial_invert, sample_on_shell,
)

unit = st.tuples(*[st.floats(-1, 1)] * 3).map(np.array).filter(lambda v: np.linalg.norm(v) > 0.1)


def test_origin():
    assert f_prime(np.zeros(3)) == 1.0


def test_z_axis_closed_form():
    assert np.isclose(f_prime(np.array([0, 0, 0.5])), 1.4746530721670275, rtol=1e-13)
    assert np.isclose(f_prime_z_axis(0.5), 1 + 0.5 * np.arctanh(0.5) + 0.2, rtol=1e-15)
    for r in np.linspace(0.01, 0.999, 25):
        assert np.isclose(f_prime(np.array([0, 0, r])), f_prime_z_axis(r), rtol=1e-10)


def test_x_axis_against_quadpack():
    tail, _ = quad(lambda s: 1 / (1 + (0.5 - s * s) ** 2), 0, 0.5, epsabs=0, epsrel=1e-13)
    expected = 1 + 0.5 * (np.arctanh(0.5) + tail)
    assert np.isclose(f_prime(np.array([0.5, 0, 0])), expected, rtol=1e-12)
    assert np.isclose(expected, 1.4872076292864547, rtol=1e-14)


def test_generic_point_frozen():
    assert np.isclose(f_prime(np.array([0.3, 0.2, -0.1])), 1.3121182352421665, rtol=1e-12)


def test_outside_h_is_rejected():
    with pytest.raises(ValueError):
        f_prime(np.array([0.5, 0.6, 0.5]))
    with pytest.raises(ValueError):
        f_prime(np.array([1.0, 0.0, 0.0]))


@pytest.mark.parametrize("u, expected", [
    ([0, 0, 1], 1.0),
    ([1, 0, 1], 1.0),
    ([np.sqrt(0.2), np.sqrt(0.6), np.sqrt(0.2)], np.sqrt(0.625)),
    ([1, 1, 1], np.sqrt(0.75)),
])
def test_r_max(u, expected):
    u = np.asarray(u, dtype=float)
    assert np.isclose(r_max(u / np.linalg.norm(u)), expected, rtol=1e-14)


@settings(max_examples=60, deadline=None)
@given(unit)
def test_profile_is_increasing_along_rays(u):
    ray = RayProfile.along(u)
    rs = np.linspace(0, ray.r_max, 40, endpoint=False)
    rho = np.array([ray.rho(r) for r in rs])
    assert (np.diff(rho) > 0).all()


def test_divergence_is_logarithmic():
    # f' blows up like atanh(r): the value at r_max (1 - 1e-6) is about 9, not 1e3
    ray = RayProfile.along(np.array([0.0, 0.0, 1.0]))
    r = 1 - 1e-6
    assert np.isclose(ray.rho(r), r * f_prime_z_axis(r), rtol=1e-10)
    assert 8 < ray.rho(r) < 10
    assert ray.f_prime(1.0) == np.inf


def test_divergence_on_sigma_prime_ray_is_a_pole():
    # where cos 2phi = 0 the integrand has a double pole at r_max, so r f' grows like 1 / delta
    ray = RayProfile.along(np.array([1.0, 1.0, 1.0]))
    assert ray.r_max == pytest.approx(np.sqrt(0.75))
    rho = ray.rho(ray.r_max * (1 - 1e-6))
    assert 6e5 < rho < 7e5


@settings(max_examples=60, deadline=None)
@given(unit, st.floats(0.0, 0.99))
def test_radial_invert_round_trip(u, frac):
    u = u / np.linalg.norm(u)
    ray = RayProfile.along(u)
    r = frac * ray.r_max
    assert abs(radial_invert(ray.rho(r), u) - r) <= 1e-10


def test_radial_invert_examples():
    assert radial_invert(0.0, np.array([1.0, 0, 0])) == 0.0
    assert abs(radial_invert(1e6, np.array([0, 0, 1.0])) - 1) <= 1e-9
    # brentq on the closed-form z-axis profile
    assert np.isclose(radial_invert(2.0, np.array([0, 0, 1.0])), 0.8139956394840138, rtol=1e-14)
    with pytest.raises(ValueError):
        radial_invert(-1.0, np.array([0, 0, 1.0]))


def test_dmap_examples():
    assert np.array_equal(dmap(OnShellPoint([0, 0, 0], 1, Region.B0)), np.zeros(4))
    x = OnShellPoint([0.2, 0, 0], 1, Region.B0)
    s = np.sin(0.2)
    expected = f_prime(np.array([s, 0, 0])) * np.array([s, s, 0, 0])
    assert np.allclose(dmap(x), expected, rtol=1e-14)


@pytest.mark.parametrize("region", REGIONS)
def test_dmap_round_trip(region, rng):
    for x in sample_on_shell(region, 40, rng, rho_max=np.inf, n_max=1.0):
        p = dmap(x)
        assert is_null(p, tol=1e-10)
        y = dmap_inverse(p, region)
        assert y.branch == x.branch and y.region is region
        assert np.linalg.norm(y.k - x.k) < 1e-8


def test_dmap_inverse_of_origin_is_region_centre():
    for region in REGIONS:
        y = dmap_inverse(np.zeros(4), region)
        assert np.allclose(n_of(y.k), 0, atol=1e-12)


def test_dmap_inverse_rejects_massive_vectors():
    with pytest.raises(ValueError):
        dmap_inverse(np.array([1.0, 0.1, 0, 0]), Region.B0)


def test_on_shell_point_validation():
    with pytest.raises(ValueError):
        OnShellPoint([0, 0, 0], 0, Region.B0)
    x = OnShellPoint([0.3, 0, 0], -1, "b0")
    assert x.region is Region.B0 and np.isclose(x.omega, -0.3)


def test_sample_on_shell_bounds(rng):
    for x in sample_on_shell(Region.B2, 20, rng, rho_max=3.0):
        assert np.linalg.norm(dmap(x)[1:]) <= 3.0
        assert in_H(n_of(x.k))
