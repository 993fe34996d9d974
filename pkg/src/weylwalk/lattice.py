"""BCC lattice geometry, its Brillouin zone and periodic Fourier grids.

Wave-vectors are in rescaled units throughout, so the generators are the
integer vectors h1 = (1, 1, 1), h2 = (1, -1, -1), h3 = (-1, 1, -1) and the
Brillouin zone is the rhombic dodecahedron |k_i +- k_j| <= pi.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import product

import numpy as np

#: Rows are h1, h2, h3 in Cartesian coordinates.
BASIS = np.array([[1, 1, 1], [1, -1, -1], [-1, 1, -1]], dtype=np.int64)

_ZONE_PAIRS = ((0, 1), (0, 2), (1, 2))


@dataclass(frozen=True)
class LatticeVector:
    """A BCC lattice vector stored by its integer coefficients on h1, h2, h3."""

    coefficients: tuple[int, int, int]

    @property
    def cartesian(self) -> np.ndarray:
        return np.asarray(self.coefficients, dtype=np.int64) @ BASIS

    def __neg__(self) -> LatticeVector:
        return LatticeVector(tuple(-c for c in self.coefficients))

    def __add__(self, other: LatticeVector) -> LatticeVector:
        return LatticeVector(tuple(a + b for a, b in zip(self.coefficients, other.coefficients)))

    @classmethod
    def from_cartesian(cls, x) -> LatticeVector:
        x = np.asarray(x, dtype=np.int64)
        if not (x % 2 == x[0] % 2).all():
            raise ValueError(f"{x.tolist()} is not a BCC lattice vector (mixed parity)")
        # coefficients m_j = x . dual_j, with the dual basis made of halves
        m = (_DUAL_TIMES_TWO @ x) // 2
        return cls(tuple(int(v) for v in m))


def generators() -> list[LatticeVector]:
    """The eight nearest-neighbour hops +-h1, +-h2, +-h3, +-h4.

    h4 = -(h1 + h2 + h3) = (-1, -1, 1). The order is h1..h4 then -h1..-h4.
    """
    h = [LatticeVector((1, 0, 0)), LatticeVector((0, 1, 0)), LatticeVector((0, 0, 1)),
         LatticeVector((-1, -1, -1))]
    return h + [-v for v in h]


def _dual_basis_times_two() -> np.ndarray:
    # inverse of an integer matrix via its adjugate keeps the entries exact
    det = int(round(np.linalg.det(BASIS)))
    adj = np.rint(np.linalg.inv(BASIS) * det).astype(np.int64)
    dual_times_det = adj.T
    assert ((2 * dual_times_det) % det == 0).all()
    return (2 * dual_times_det) // det


_DUAL_TIMES_TWO = _dual_basis_times_two()


def dual_basis() -> np.ndarray:
    """Rows d1, d2, d3 with d_j . h_l = delta_jl.

    The entries are exact halves, e.g. d1 = (1/2, 1/2, 0).
    """
    return _DUAL_TIMES_TWO / 2.0


def reciprocal_basis() -> np.ndarray:
    """Rows 2*pi*d_j; the walk is periodic under these translations of k."""
    return 2.0 * np.pi * dual_basis()


def in_brillouin(k, atol: float = 1e-12):
    """True where |k_i +- k_j| <= pi for every pair of Cartesian axes.

    Works on a single triple or on an array of shape (..., 3).
    """
    k = np.asarray(k, dtype=float)
    inside = np.ones(k.shape[:-1], dtype=bool)
    for i, j in _ZONE_PAIRS:
        inside &= np.abs(k[..., i] + k[..., j]) <= np.pi + atol
        inside &= np.abs(k[..., i] - k[..., j]) <= np.pi + atol
    return inside if inside.ndim else bool(inside)


_NEIGHBOUR_SHIFTS = np.array(list(product((-1, 0, 1), repeat=3)), dtype=float)


def wrap_to_zone(k) -> np.ndarray:
    """Translate ``k`` by a reciprocal lattice vector into the Brillouin zone.

    The zone is the Wigner-Seitz cell of the reciprocal lattice, so the
    wrapped vector is ``k - G`` with ``G`` the nearest reciprocal lattice
    point. Ties on the zone boundary resolve to the first candidate in a
    fixed enumeration order.
    """
    k = np.asarray(k, dtype=float)
    recip = reciprocal_basis()
    # k . h_j / (2 pi) are the coordinates of k on the reciprocal basis
    coords = k @ BASIS.T / (2.0 * np.pi)
    base = np.rint(coords)
    cands = base[..., None, :] + _NEIGHBOUR_SHIFTS
    shifted = k[..., None, :] - cands @ recip
    best = np.argmin(np.einsum("...i,...i->...", shifted, shifted), axis=-1)
    return np.take_along_axis(shifted, best[..., None, None], axis=-2)[..., 0, :]


@dataclass(frozen=True)
class PeriodicGrid:
    """The quotient lattice Gamma / N Gamma, indexed by coefficients in Z_N^3.

    Momenta are kappa_j = -pi + 2 pi j / N in coefficient coordinates
    (kappa_j = k . h_j); ``N`` must be even so that these are characters of
    Z_N^3.
    """

    N: int

    def __post_init__(self):
        if not isinstance(self.N, (int, np.integer)) or self.N < 2 or self.N % 2:
            raise ValueError(f"grid size must be an even integer >= 2, got {self.N!r}")

    @property
    def n_sites(self) -> int:
        return self.N ** 3

    @property
    def shape(self) -> tuple[int, int, int]:
        return (self.N, self.N, self.N)

    def sites(self) -> np.ndarray:
        """Coefficients (m1, m2, m3) of every site, C order, shape (N^3, 3)."""
        axis = np.arange(self.N)
        return np.stack(np.meshgrid(axis, axis, axis, indexing="ij"), axis=-1).reshape(-1, 3)

    def positions(self) -> np.ndarray:
        """Cartesian positions of the sites, using coefficients in [0, N)."""
        return self.sites() @ BASIS

    def momenta(self) -> np.ndarray:
        """Grid momenta kappa in coefficient coordinates, shape (N^3, 3)."""
        return -np.pi + 2.0 * np.pi * self.sites() / self.N

    def cartesian_momenta(self) -> np.ndarray:
        """Grid momenta as Cartesian wave-vectors k = sum_j kappa_j d_j."""
        return self.momenta() @ dual_basis()

    def momentum_index(self, kappa) -> int:
        """Flat index of the grid momentum closest to ``kappa`` (mod 2 pi)."""
        kappa = np.asarray(kappa, dtype=float)
        j = np.rint((kappa + np.pi) * self.N / (2.0 * np.pi)).astype(int) % self.N
        return int(np.ravel_multi_index(tuple(j), self.shape))

    def _as_field(self, amplitudes) -> np.ndarray:
        a = np.asarray(amplitudes, dtype=complex)
        if a.size != 2 * self.n_sites:
            raise ValueError(
                f"expected {2 * self.n_sites} amplitudes for N={self.N}, got {a.size}")
        return a.reshape(self.N, self.N, self.N, 2)

    def _alternating_sign(self) -> np.ndarray:
        m = np.arange(self.N)
        s = (-1.0) ** m
        return (s[:, None, None] * s[None, :, None] * s[None, None, :])[..., None]

    def to_momentum(self, amplitudes) -> np.ndarray:
        """Position amplitudes psi(m) -> momentum amplitudes phi(kappa).

        phi(kappa) = N^{-3/2} sum_m exp(+i kappa.m) psi(m), i.e. the
        components on the plane waves <m|kappa> = N^{-3/2} exp(-i kappa.m).
        Returns shape (N^3, 2).
        """
        field = self._as_field(amplitudes)
        phi = np.fft.ifftn(self._alternating_sign() * field, axes=(0, 1, 2), norm="ortho")
        return phi.reshape(-1, 2)

    def to_position(self, amplitudes) -> np.ndarray:
        """Inverse of :meth:`to_momentum`."""
        field = self._as_field(amplitudes)
        psi = self._alternating_sign() * np.fft.fftn(field, axes=(0, 1, 2), norm="ortho")
        return psi.reshape(-1, 2)

    def plane_wave(self, kappa_index: int, spinor) -> np.ndarray:
        """Position amplitudes of |kappa> (x) spinor, shape (N^3, 2)."""
        kappa = self.momenta()[kappa_index]
        phase = np.exp(-1j * self.sites() @ kappa) / self.N ** 1.5
        return phase[:, None] * np.asarray(spinor, dtype=complex)[None, :]
