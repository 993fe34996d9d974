import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from scipy.optimize import brentq

from weylwalk import symmetry, walk
from weylwalk.geometry import REGIONS, Region, n_of
from weylwalk.lattice import BASIS, LatticeVector, PeriodicGrid
from weylwalk.rescaling import OnShellPoint, dmap, f_prime, f_prime_z_axis, sample_on_shell
from weylwalk.symmetry import (
    boost, compose, deformed_apply, frame_change_apply, identity_frame, lorentz_frame,
    region_permutation, rotation, spinor_pair, translation_phase, vector_rep,
)
from weylwalk.verify import random_spinor_transform

I2 = np.eye(2)
Z = np.array([0.0, 0.0, 1.0])
X = np.array([1.0, 0.0, 0.0])
rapidity = st.floats(-2.0, 2.0)


def test_boost_and_rotation_examples():
    assert np.allclose(boost(Z, 0.0), I2)
    assert np.allclose(rotation(Z, 2 * np.pi), -I2)
    assert np.isclose(np.linalg.det(boost(X, 0.9)), 1.0)
    with pytest.raises(ValueError):
        boost([1, 1, 0], 0.1)


@given(rapidity, rapidity)
def test_boosts_along_one_axis_add(a, b):
    assert np.abs(boost(Z, a) @ boost(Z, b) - boost(Z, a + b)).max() < 1e-12


@given(rapidity)
def test_vector_rep_of_z_boost_is_the_textbook_matrix(eta):
    expected = np.eye(4)
    expected[0, 0] = expected[3, 3] = np.cosh(eta)
    expected[0, 3] = expected[3, 0] = np.sinh(eta)
    assert np.abs(vector_rep(boost(Z, eta)) - expected).max() < 1e-12 * np.cosh(eta)


def test_vector_rep_of_rotation_rotates():
    L = vector_rep(rotation(Z, np.pi / 2))
    assert np.allclose(L @ [1, 1, 0, 0], [1, 0, 1, 0], atol=1e-15)


def test_vector_rep_is_a_homomorphism(rng):
    assert np.allclose(vector_rep(I2), np.eye(4))
    for _ in range(20):
        a, b = random_spinor_transform(rng, 1.0), random_spinor_transform(rng, 1.0)
        assert np.abs(vector_rep(a @ b) - vector_rep(a) @ vector_rep(b)).max() < 1e-10
        assert symmetry.is_lorentz(vector_rep(a))


def test_spinor_pair_examples(rng):
    M, Mt = spinor_pair(I2, "right")
    assert np.allclose(M, I2) and np.allclose(Mt, I2)
    R = rotation(np.array([0.6, 0.0, 0.8]), 1.1)
    M, Mt = spinor_pair(R, "right")
    assert np.allclose(M, Mt) and np.allclose(M.conj().T @ M, I2)
    B = boost(Z, 0.8)
    M, Mt = spinor_pair(B, "left")
    assert np.allclose(M, B) and np.allclose(Mt, np.linalg.inv(B.conj().T))
    with pytest.raises(ValueError):
        spinor_pair(B, "up")


@pytest.mark.parametrize("chirality", ["right", "left"])
def test_changeref_residual_on_null_vectors(chirality, rng):
    for _ in range(100):
        lam = random_spinor_transform(rng, 1.5)
        p = rng.normal(size=4)
        p[0] = np.linalg.norm(p[1:]) * rng.choice([-1, 1])
        assert symmetry.changeref_residual(lam, p, chirality) <= 1e-10 * np.linalg.norm(p)


def test_deformed_identity(rng):
    for region in REGIONS:
        x = sample_on_shell(region, 1, rng)[0]
        y = deformed_apply(I2, x)
        assert np.linalg.norm(y.k - x.k) < 1e-10 and y.branch == x.branch


@pytest.mark.parametrize("kz, eta", [(0.2, 0.5), (0.5, -0.7), (0.05, 1.2)])
def test_z_boost_on_the_z_axis(kz, eta):
    x = OnShellPoint([0, 0, kz], 1, Region.B0)
    y = deformed_apply(boost(Z, eta), x)
    r = np.sin(kz)
    target = np.exp(eta) * r * f_prime_z_axis(r)
    r_new = brentq(lambda s: s * f_prime_z_axis(s) - target, 0, 1 - 1e-15, xtol=1e-15)
    assert np.allclose(y.k, [0, 0, np.arcsin(r_new)], atol=1e-10)


def test_rotations_preserve_the_energy(rng):
    for region in REGIONS:
        x = sample_on_shell(region, 1, rng)[0]
        y = deformed_apply(rotation(np.array([0.0, 0.6, 0.8]), 1.3), x)
        a = f_prime(n_of(x.k)) * np.linalg.norm(n_of(x.k))
        b = f_prime(n_of(y.k)) * np.linalg.norm(n_of(y.k))
        assert abs(a - b) <= 1e-8 * max(1.0, a)


def test_group_law(rng):
    for i in range(20):
        x = sample_on_shell(REGIONS[i % 4], 1, rng)[0]
        a, b = random_spinor_transform(rng), random_spinor_transform(rng)
        lhs = deformed_apply(b, deformed_apply(a, x))
        rhs = deformed_apply(b @ a, x)
        assert np.linalg.norm(lhs.k - rhs.k) < 1e-8 and lhs.branch == rhs.branch


def test_frame_changes_map_solutions_to_solutions(rng):
    for i in range(20):
        x = sample_on_shell(REGIONS[i % 4], 1, rng)[0]
        _, psi = walk.eigen_spinor("A+", x.k, x.branch)
        assert symmetry.solution_residual(x, psi) < 1e-12
        y, psi2 = lorentz_frame(random_spinor_transform(rng))(x, psi)
        assert symmetry.solution_residual(y, psi2) < 1e-7


def test_identity_and_phase_frames(rng):
    x = sample_on_shell(Region.B0, 1, rng)[0]
    _, psi = walk.eigen_spinor("A+", x.k, x.branch)
    y, psi2 = frame_change_apply(identity_frame(), (x, psi))
    assert y is x and np.allclose(psi2, psi)
    fc = symmetry.FrameChange(phase=lambda p: 0.7)
    y, psi2 = fc(x, psi)
    assert np.isclose(np.linalg.norm(psi2), 1.0)
    assert symmetry.solution_residual(y, psi2) < 1e-12


def test_compose(rng):
    x = sample_on_shell(Region.B0, 1, rng)[0]
    a, b = lorentz_frame(boost(Z, 0.3)), lorentz_frame(boost(Z, -0.5))
    ab = compose(b, a)
    assert np.allclose(ab.kmap(x).k, deformed_apply(boost(Z, -0.2), x).k, atol=1e-8)
    assert np.allclose(ab.spinor, boost(Z, -0.2))
    fc = lorentz_frame(rotation(X, 0.4))
    assert np.allclose(compose(fc, identity_frame()).kmap(x).k, fc.kmap(x).k)
    inverse_pair = compose(lorentz_frame(rotation(X, -0.4)), fc)
    assert np.allclose(inverse_pair.kmap(x).k, x.k, atol=1e-9)
    assert np.allclose(inverse_pair.M, I2)
    with pytest.raises(ValueError):
        compose(lorentz_frame(I2, "left"), fc)


def test_region_permutation_examples(rng):
    swap = region_permutation(swap_even=True)
    y = swap.kmap(OnShellPoint([0, 0, 0], 1, Region.B0))
    assert y.region is Region.B2
    # the B2 centre -pi/2 (1, 1, 1) is a zone vertex; compare modulo the reciprocal lattice
    coords = (y.k + np.pi / 2) @ BASIS.T / (2 * np.pi)
    assert np.allclose(coords, np.rint(coords), atol=1e-9)
    for region in REGIONS:
        x = sample_on_shell(region, 1, rng)[0]
        z = swap.kmap(swap.kmap(x))
        assert np.linalg.norm(z.k - x.k) < 1e-9
    ident = region_permutation()
    assert ident.kmap(x) is x
    with pytest.raises(ValueError):
        region_permutation(pairs=[("B0", "B1")])


def test_translation_phase_examples():
    grid = PeriodicGrid(8)
    idx = 200
    state, w = walk.plane_wave_state("A+", grid, idx, 1)
    k = grid.cartesian_momenta()[idx]
    x = OnShellPoint(k, 1, Region.B0)
    assert translation_phase(0).phase(x) == 0.0
    a = translation_phase(1).phase(x)
    assert np.allclose(walk.step("A+", state).amplitudes, np.exp(1j * a) * state.amplitudes,
                       atol=1e-12)
    h1 = LatticeVector((1, 0, 0))
    a = translation_phase(0, h1).phase(x)
    assert np.allclose(walk.translate(state, h1).amplitudes, np.exp(1j * a) * state.amplitudes,
                       atol=1e-12)
    assert -np.pi <= translation_phase(7, h1).phase(x) <= np.pi


def test_linear_recovery_near_the_origin(rng):
    lam = random_spinor_transform(rng)
    u = np.array([0.48, 0.6, 0.64])
    d = [symmetry.linear_deviation(lam, OnShellPoint(r * u, 1, Region.B0))
         for r in (0.02, 0.01, 0.005)]
    assert 3.5 < d[0] / d[1] < 4.5 and 3.5 < d[1] / d[2] < 4.5


def test_origin_derivative_matches_vector_rep(rng):
    lam = random_spinor_transform(rng)
    u = np.array([0.0, 0.6, -0.8])
    expected = (vector_rep(lam) @ np.concatenate([[1.0], u]))[1:]
    assert np.abs(symmetry.origin_derivative(lam, u) - expected).max() < 1e-5


def test_orbit_examples():
    points = symmetry.orbit([0.4, 0, 0], generator="rotation", samples=16, axis=Z)
    assert np.allclose(points[0][2], [0.4, 0, 0], atol=1e-10)
    assert symmetry.anisotropy(symmetry.orbit([0.4, 0, 0], samples=50)) > 1.001
    with pytest.raises(ValueError):
        symmetry.orbit([np.pi / 4, 0, np.pi / 4])


def test_orbit_is_ordered_with_an_executor():
    from concurrent.futures import ThreadPoolExecutor

    serial = symmetry.orbit([0.2, 0, 0], samples=12)
    with ThreadPoolExecutor(3) as pool:
        parallel = symmetry.orbit([0.2, 0, 0], samples=12, executor=pool)
    assert all(np.array_equal(a[2], b[2]) for a, b in zip(serial, parallel))


@settings(max_examples=20, deadline=None)
@given(st.integers(1, 300))
def test_fibonacci_sphere_is_unit(n):
    v = symmetry.fibonacci_sphere(n)
    assert v.shape == (n, 3) and np.allclose(np.linalg.norm(v, axis=1), 1)
