"""The four Weyl walks on the BCC lattice and their evolution on finite grids.

Conventions (fixed here, reported by :data:`CONVENTIONS`):

* The momentum-space walk matrix is the product of exponentials
  ``exp(-i kx sx) exp(-+ i ky sy) exp(-i kz sz)`` for A+ / A-, and its
  transpose for B+ / B-. Every other form is checked against this one.
* Position space: ``T_h |x> = |x - h>`` and ``|k> ~ sum_x exp(-i k.x) |x>``,
  so ``T_h |k> = exp(-i k.h) |k>`` and the coin sum is
  ``sum_h exp(-i k.h) C_h``. With this phase the coin table with
  ``zeta = (1 - i)/4`` reproduces A+ and ``zeta = (1 + i)/4`` reproduces A-.
* Eigenphases: ``W psi = exp(i omega) psi`` with ``omega = s arccos(lambda)``.
  With ``W = lambda - i m.sigma`` this means ``(sin(omega) + m.sigma) psi = 0``.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass

import numpy as np

from .lattice import LatticeVector, PeriodicGrid, generators

SIGMA_X = np.array([[0, 1], [1, 0]], dtype=complex)
SIGMA_Y = np.array([[0, -1j], [1j, 0]], dtype=complex)
SIGMA_Z = np.array([[1, 0], [0, -1]], dtype=complex)
PAULI = np.stack([SIGMA_X, SIGMA_Y, SIGMA_Z])
IDENTITY = np.eye(2, dtype=complex)

FOURIER_SIGN = -1

CONVENTIONS = {
    "normative_form": "A+-(k) = exp(-i kx sx) exp(-+i ky sy) exp(-i kz sz); B+-(k) = A+-(k)^T",
    "fourier_phase": "coin sum uses exp(-i k.h), from T_h|x> = |x-h> and |k> ~ sum exp(-i k.x)|x>",
    "coin_zeta": "A+ and B+ use zeta=(1-i)/4, A- and B- use zeta=(1+i)/4",
    "sigma_pairing": "A+ = lambda - i(nx sx + ny sy + nz sz); A- = lambda(k') - i n(k').sigma, k'=(kx,-ky,kz)",
    "eigenphase": "W psi = exp(+i omega) psi, omega = branch * arccos(lambda)",
}


class WalkKind(enum.Enum):
    A_PLUS = "A+"
    A_MINUS = "A-"
    B_PLUS = "B+"
    B_MINUS = "B-"

    @property
    def family(self) -> str:
        return self.value[0]

    @property
    def sign(self) -> int:
        return 1 if self.value[1] == "+" else -1

    @property
    def right_handed(self) -> bool:
        """A+ and B+ reduce to the right-handed Weyl equation near k = 0."""
        return self.sign > 0

    @classmethod
    def parse(cls, label) -> WalkKind:
        if isinstance(label, cls):
            return label
        text = str(label).strip().upper().replace("PLUS", "+").replace("MINUS", "-")
        text = text.replace("_", "")
        for kind in cls:
            if kind.value == text:
                return kind
        raise ValueError(f"unknown walk kind {label!r}; expected one of A+, A-, B+, B-")


def _coin_table(zeta: complex) -> list[np.ndarray]:
    z, zc = zeta, np.conj(zeta)
    return [
        np.array([[zc, 0], [zc, 0]]),    # h1
        np.array([[0, zc], [0, zc]]),    # h2
        np.array([[0, -zc], [0, zc]]),   # h3
        np.array([[zc, 0], [-zc, 0]]),   # h4
        np.array([[0, -z], [0, z]]),     # -h1
        np.array([[z, 0], [-z, 0]]),     # -h2
        np.array([[z, 0], [z, 0]]),      # -h3
        np.array([[0, z], [0, z]]),      # -h4
    ]


def coin_set(kind) -> dict[LatticeVector, np.ndarray]:
    """The eight hopping coins of a walk, keyed by generator."""
    kind = WalkKind.parse(kind)
    zeta = (1 - 1j) / 4 if kind.sign > 0 else (1 + 1j) / 4
    coins = _coin_table(zeta)
    if kind.family == "B":
        coins = [c.T for c in coins]
    return {h: c.astype(complex) for h, c in zip(generators(), coins)}


def lambda_n(k):
    """lambda(k) and n(k) of the (+) walk; accepts shape (3,) or (..., 3)."""
    k = np.asarray(k, dtype=float)
    c, s = np.cos(k), np.sin(k)
    cx, cy, cz = c[..., 0], c[..., 1], c[..., 2]
    sx, sy, sz = s[..., 0], s[..., 1], s[..., 2]
    lam = cx * cy * cz - sx * sy * sz
    n = np.stack([
        sx * cy * cz + cx * sy * sz,
        cx * sy * cz - sx * cy * sz,
        cx * cy * sz + sx * sy * cz,
    ], axis=-1)
    return lam, n


_REFLECT_Y = np.array([1.0, -1.0, 1.0])


def walk_components(kind, k):
    """(lambda, m) with walk_matrix(kind, k) = lambda I - i m.sigma."""
    kind = WalkKind.parse(kind)
    k = np.asarray(k, dtype=float)
    if kind.sign < 0:
        k = k * _REFLECT_Y
    lam, m = lambda_n(k)
    if kind.family == "B":
        # transposition flips sigma_y only
        m = m * _REFLECT_Y
    return lam, m


def _exp_pauli(angle, sigma):
    angle = np.asarray(angle, dtype=float)[..., None, None]
    return np.cos(angle) * IDENTITY - 1j * np.sin(angle) * sigma


def walk_matrix(kind, k) -> np.ndarray:
    """Momentum-space 2x2 walk matrix (the normative product form)."""
    kind = WalkKind.parse(kind)
    k = np.asarray(k, dtype=float)
    w = (_exp_pauli(k[..., 0], SIGMA_X)
         @ _exp_pauli(kind.sign * k[..., 1], SIGMA_Y)
         @ _exp_pauli(k[..., 2], SIGMA_Z))
    if kind.family == "B":
        w = np.swapaxes(w, -1, -2)
    return w


def walk_matrix_from_components(kind, k) -> np.ndarray:
    """lambda I - i m.sigma, assembled from the closed-form trig products."""
    lam, m = walk_components(kind, k)
    return lam[..., None, None] * IDENTITY - 1j * np.einsum("...i,ijk->...jk", m, PAULI)


def coin_sum_matrix(kind, k, coins=None, phase_sign: int = FOURIER_SIGN) -> np.ndarray:
    """sum_h exp(phase_sign * i k.h) C_h for the coin set of ``kind``."""
    k = np.asarray(k, dtype=float)
    coins = coin_set(kind) if coins is None else coins
    out = np.zeros(k.shape[:-1] + (2, 2), dtype=complex)
    for h, c in coins.items():
        phase = np.exp(phase_sign * 1j * (k @ h.cartesian))
        out += phase[..., None, None] * c
    return out


def phase_angle(lam, m):
    """arccos(lambda) in [0, pi], evaluated as atan2(|m|, lambda).

    The two agree because lambda^2 + |m|^2 = 1, but arccos loses half the
    digits near lambda = +-1, i.e. near every doubling point.
    """
    return np.arctan2(np.linalg.norm(m, axis=-1), lam)


def dispersion(k):
    """(lambda, n, omega_plus) of the (+) walk, omega_plus = arccos(lambda) in [0, pi]."""
    lam, n = lambda_n(k)
    return lam, n, phase_angle(lam, n)


def omega(kind, k, branch: int = 1):
    """Eigenphase branch * arccos(lambda(k)) of a walk."""
    lam, m = walk_components(kind, k)
    return branch * phase_angle(lam, m)


def _unit_eigvec(u, eigenvalue: int) -> np.ndarray:
    x, y, z = u
    if eigenvalue > 0:
        a = np.array([1 + z, x + 1j * y])
        b = np.array([x - 1j * y, 1 - z])
    else:
        a = np.array([x - 1j * y, -(1 + z)])
        b = np.array([1 - z, -(x + 1j * y)])
    v = a if np.linalg.norm(a) >= np.linalg.norm(b) else b
    v = v / np.linalg.norm(v)
    lead = v[0] if abs(v[0]) > 1e-12 else v[1]
    return v * (abs(lead) / lead)


def eigen_spinor(kind, k, branch: int = 1, degenerate_tol: float = 1e-15):
    """Eigenphase and unit eigenvector of the walk at ``k`` on a branch.

    Returns ``(omega, psi)`` with ``walk_matrix(kind, k) @ psi = exp(i omega) psi``
    and ``omega = branch * arccos(lambda)``. Where m(k) = 0 the matrix is
    +-I and psi = (1, 0) is returned.
    """
    if branch not in (1, -1):
        raise ValueError("branch must be +1 or -1")
    lam, m = walk_components(kind, k)
    lam = float(lam)
    w = branch * float(phase_angle(lam, m))
    norm = float(np.linalg.norm(m))
    if norm <= degenerate_tol:
        return w, np.array([1.0, 0.0], dtype=complex)
    return w, _unit_eigvec(m / norm, -branch)


def eigen_spinors(kind, k, branch: int = 1):
    """Vectorised :func:`eigen_spinor` over an array of wave-vectors (..., 3)."""
    k = np.asarray(k, dtype=float)
    flat = k.reshape(-1, 3)
    omegas = np.empty(len(flat))
    psis = np.empty((len(flat), 2), dtype=complex)
    for i, kk in enumerate(flat):
        omegas[i], psis[i] = eigen_spinor(kind, kk, branch)
    return omegas.reshape(k.shape[:-1]), psis.reshape(k.shape[:-1] + (2,))


@dataclass
class LatticeState:
    grid: PeriodicGrid
    amplitudes: np.ndarray

    def __post_init__(self):
        a = np.asarray(self.amplitudes, dtype=complex)
        if a.shape != (self.grid.n_sites, 2):
            raise ValueError(
                f"amplitudes must have shape ({self.grid.n_sites}, 2), got {a.shape}")
        self.amplitudes = a

    def norm(self) -> float:
        return float(np.linalg.norm(self.amplitudes))

    def field(self) -> np.ndarray:
        return self.amplitudes.reshape(self.grid.shape + (2,))


def _shift(field: np.ndarray, h: LatticeVector) -> np.ndarray:
    # (T_h psi)(m) = psi(m + h)
    return np.roll(field, shift=tuple(-c for c in h.coefficients), axis=(0, 1, 2))


def step(kind, state: LatticeState, coins=None) -> LatticeState:
    """One step sum_h T_h (x) C_h applied in position space."""
    coins = coin_set(kind) if coins is None else coins
    field = state.field()
    out = np.zeros_like(field)
    for h, c in coins.items():
        out += _shift(field, h) @ c.T
    return LatticeState(state.grid, out.reshape(-1, 2))


def momentum_walk_matrices(kind, grid: PeriodicGrid) -> np.ndarray:
    """walk_matrix at every grid momentum, shape (N^3, 2, 2)."""
    return walk_matrix(kind, grid.cartesian_momenta())


def step_fourier(kind, state: LatticeState, steps: int = 1, matrices=None) -> LatticeState:
    """``steps`` steps applied as multiplication by W(kappa) in momentum space."""
    grid = state.grid
    w = momentum_walk_matrices(kind, grid) if matrices is None else matrices
    if steps != 1:
        w = np.linalg.matrix_power(w, steps)
    phi = grid.to_momentum(state.amplitudes)
    phi = np.einsum("nij,nj->ni", w, phi)
    return LatticeState(grid, grid.to_position(phi))


def translate(state: LatticeState, h: LatticeVector) -> LatticeState:
    """Apply T_h (x) I."""
    return LatticeState(state.grid, _shift(state.field(), h).reshape(-1, 2))


def random_state(grid: PeriodicGrid, rng) -> LatticeState:
    a = rng.normal(size=(grid.n_sites, 2)) + 1j * rng.normal(size=(grid.n_sites, 2))
    return LatticeState(grid, a / np.linalg.norm(a))


def translation_covariance_check(kind, grid: PeriodicGrid, rng=None, shifts=None) -> float:
    """max_h ||T_h W psi - W T_h psi|| for a random state psi."""
    rng = np.random.default_rng(0) if rng is None else rng
    psi = random_state(grid, rng)
    shifts = generators()[:4] if shifts is None else shifts
    worst = 0.0
    for h in shifts:
        a = translate(step(kind, psi), h).amplitudes
        b = step(kind, translate(psi, h)).amplitudes
        worst = max(worst, float(np.linalg.norm(a - b)))
    return worst


def plane_wave_state(kind, grid: PeriodicGrid, kappa_index: int, branch: int = 1):
    """Eigen plane wave at a grid momentum; returns (state, omega)."""
    k = grid.cartesian_momenta()[kappa_index]
    w, psi = eigen_spinor(kind, k, branch)
    return LatticeState(grid, grid.plane_wave(kappa_index, psi)), w


def gaussian_packet(kind, grid: PeriodicGrid, center, sigma_k: float, branch: int = 1,
                    max_peak_weight: float = 0.95) -> LatticeState:
    """Single-branch packet with momentum density ~ exp(-|k - center|^2 / (2 sigma_k^2)).

    Distances are taken modulo the reciprocal lattice. Raises ``ValueError``
    when the packet is too narrow for the grid, i.e. more than
    ``max_peak_weight`` of the probability sits on one grid momentum.
    """
    if sigma_k <= 0:
        raise ValueError("sigma_k must be positive")
    from .lattice import wrap_to_zone

    ks = grid.cartesian_momenta()
    d = wrap_to_zone(ks - np.asarray(center, dtype=float))
    d2 = np.einsum("ni,ni->n", d, d)
    # shift by the smallest distance so narrow packets do not underflow to zero
    envelope = np.exp(-(d2 - d2.min()) / (4.0 * sigma_k ** 2))
    weights = envelope ** 2 / np.sum(envelope ** 2)
    if weights.max() > max_peak_weight:
        raise ValueError(
            f"packet width sigma_k={sigma_k} is narrower than one momentum-grid cell of "
            f"the N={grid.N} grid ({weights.max():.3f} of the weight on one grid momentum)")
    _, spinors = eigen_spinors(kind, ks, branch)
    phi = envelope[:, None] * spinors
    phi /= np.linalg.norm(phi)
    return LatticeState(grid, grid.to_position(phi))


def density_moments(state: LatticeState):
    """First circular moments of |psi|^2 along each coefficient axis.

    Returns complex numbers z_j = sum |psi(m)|^2 exp(2 pi i m_j / N) / ||psi||^2.
    """
    grid = state.grid
    rho = np.sum(np.abs(state.field()) ** 2, axis=-1)
    rho = rho / rho.sum()
    phase = np.exp(2j * np.pi * np.arange(grid.N) / grid.N)
    return np.array([
        np.sum(rho.sum(axis=(1, 2)) * phase),
        np.sum(rho.sum(axis=(0, 2)) * phase),
        np.sum(rho.sum(axis=(0, 1)) * phase),
    ])


def mean_coefficients(state: LatticeState, previous=None, flat_tol: float = 1e-12):
    """Centroid of |psi|^2 in coefficient space on the torus.

    Uses the circular mean, unwrapped against ``previous`` so that a drifting
    packet is tracked continuously. A flat density along an axis has no
    circular mean and falls back to the ordinary mean over [0, N).
    """
    grid = state.grid
    z = density_moments(state)
    rho = np.sum(np.abs(state.field()) ** 2, axis=-1)
    rho = rho / rho.sum()
    axis = np.arange(grid.N)
    plain = np.array([
        np.sum(rho.sum(axis=(1, 2)) * axis),
        np.sum(rho.sum(axis=(0, 2)) * axis),
        np.sum(rho.sum(axis=(0, 1)) * axis),
    ])
    out = np.empty(3)
    for j in range(3):
        if abs(z[j]) <= flat_tol:
            out[j] = plain[j]
            continue
        m = np.angle(z[j]) * grid.N / (2.0 * np.pi)
        if previous is not None:
            m += grid.N * np.round((previous[j] - m) / grid.N)
        out[j] = m
    return out


def evolve_moments(kind, state: LatticeState, steps: int):
    """Evolve and record (step, cartesian centroid, norm error) after each step."""
    from .lattice import BASIS

    grid = state.grid
    w = momentum_walk_matrices(kind, grid)
    norm0 = state.norm()
    m = mean_coefficients(state)
    rows = [(0, m @ BASIS, 0.0)]
    current = state
    for t in range(1, steps + 1):
        current = step_fourier(kind, current, matrices=w)
        m = mean_coefficients(current, previous=m)
        rows.append((t, m @ BASIS, abs(current.norm() - norm0)))
    return rows


def group_velocity(kind, k, branch: int = 1, h: float = 1e-6) -> np.ndarray:
    """Central finite-difference gradient of omega = branch * arccos(lambda)."""
    k = np.asarray(k, dtype=float)
    grad = np.empty(3)
    for i in range(3):
        e = np.zeros(3)
        e[i] = h
        grad[i] = (omega(kind, k + e, branch) - omega(kind, k - e, branch)) / (2 * h)
    return grad
