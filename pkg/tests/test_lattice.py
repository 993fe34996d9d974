import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from weylwalk.lattice import (
    BASIS, LatticeVector, PeriodicGrid, dual_basis, generators, in_brillouin,
    reciprocal_basis, wrap_to_zone,
)

coeff = st.integers(min_value=-40, max_value=40)
finite = st.floats(min_value=-20.0, max_value=20.0, allow_nan=False)


def test_generators_are_the_eight_hops():
    cart = sorted(tuple(h.cartesian.tolist()) for h in generators())
    expected = sorted((a, b, c) for a in (1, -1) for b in (1, -1) for c in (1, -1))
    assert cart == expected


def test_fourth_generator_closes_the_sum():
    h = generators()
    assert (h[0].cartesian + h[1].cartesian + h[2].cartesian + h[3].cartesian == 0).all()
    assert h[3].cartesian.tolist() == [-1, -1, 1]


@given(coeff, coeff, coeff)
def test_lattice_vectors_have_equal_parity(a, b, c):
    x = LatticeVector((a, b, c)).cartesian
    assert (x % 2 == x[0] % 2).all()


@given(coeff, coeff, coeff)
def test_cartesian_round_trip(a, b, c):
    v = LatticeVector((a, b, c))
    assert LatticeVector.from_cartesian(v.cartesian) == v


def test_from_cartesian_rejects_mixed_parity():
    with pytest.raises(ValueError):
        LatticeVector.from_cartesian([1, 0, 1])


def test_dual_basis_is_exact():
    d = dual_basis()
    assert d.tolist() == [[0.5, 0.5, 0.0], [0.5, 0.0, -0.5], [0.0, 0.5, -0.5]]
    assert (d @ BASIS.T == np.eye(3)).all()


def test_reciprocal_vectors_sit_on_zone_faces():
    for g in reciprocal_basis():
        assert in_brillouin(g / 2)
        assert not in_brillouin(0.51 * g)


@pytest.mark.parametrize("k, inside", [
    ((0, 0, 0), True),
    ((np.pi, 0, 0), True),
    ((np.pi / 2, np.pi / 2, np.pi / 2), True),
    ((np.pi / 2 + 0.01, np.pi / 2, 0), False),
    ((3.0, 0.5, 0), False),
])
def test_in_brillouin_examples(k, inside):
    assert in_brillouin(k) is inside


def test_zone_fills_a_quarter_of_the_cube(rng):
    k = rng.uniform(-np.pi, np.pi, size=(10 ** 6, 3))
    assert abs(np.mean(in_brillouin(k)) - 0.25) < 0.0025


@settings(max_examples=200)
@given(finite, finite, finite)
def test_wrap_to_zone_lands_inside_and_differs_by_reciprocal_vector(x, y, z):
    k = np.array([x, y, z])
    w = wrap_to_zone(k)
    assert in_brillouin(w, atol=1e-9)
    coords = (k - w) @ BASIS.T / (2 * np.pi)
    assert np.allclose(coords, np.rint(coords), atol=1e-9)


@pytest.mark.parametrize("n", [0, 3, 7, -2])
def test_grid_size_must_be_even(n):
    with pytest.raises(ValueError):
        PeriodicGrid(n)


def test_fourier_transform_is_unitary(rng):
    grid = PeriodicGrid(6)
    psi = rng.normal(size=(grid.n_sites, 2)) + 1j * rng.normal(size=(grid.n_sites, 2))
    phi = grid.to_momentum(psi)
    assert np.isclose(np.linalg.norm(phi), np.linalg.norm(psi), rtol=1e-12)
    assert np.allclose(grid.to_position(phi), psi, atol=1e-12)


def test_plane_wave_is_a_single_momentum(rng):
    grid = PeriodicGrid(4)
    idx = int(rng.integers(grid.n_sites))
    spinor = np.array([0.6, 0.8j])
    phi = grid.to_momentum(grid.plane_wave(idx, spinor))
    expected = np.zeros_like(phi)
    expected[idx] = spinor
    assert np.allclose(phi, expected, atol=1e-12)


def test_momentum_index_round_trip():
    grid = PeriodicGrid(8)
    kappa = grid.momenta()
    assert all(grid.momentum_index(kappa[i]) == i for i in range(0, grid.n_sites, 37))
