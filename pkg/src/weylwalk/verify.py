"""Numerical checks of the invariants of every module, collected into a report.

Each check takes a random generator and a sample count and returns a
:class:`CheckResult`. A check passes when ``max_error <= tolerance``; checks
whose natural statement is a lower bound report a ratio so that the same
rule applies.
"""

from __future__ import annotations

import json
from dataclasses import asdict, dataclass, field

import numpy as np

from . import geometry, lattice, rescaling, symmetry, walk
from .geometry import REGIONS, Region
from .lattice import BASIS, LatticeVector, PeriodicGrid
from .rescaling import OnShellPoint
from .walk import IDENTITY, PAULI, WalkKind


@dataclass
class CheckResult:
    name: str
    status: str
    max_error: float
    samples: int
    tolerance: float
    detail: str = ""

    @classmethod
    def from_error(cls, name: str, error: float, samples: int, tolerance: float,
                   detail: str = "") -> CheckResult:
        error = float(error)
        ok = bool(np.isfinite(error) and error <= tolerance)
        return cls(name, "pass" if ok else "fail", error, int(samples), float(tolerance), detail)

    @property
    def passed(self) -> bool:
        return self.status == "pass"


@dataclass
class VerifyReport:
    checks: list[CheckResult]
    conventions: dict = field(default_factory=lambda: dict(walk.CONVENTIONS))
    config: dict = field(default_factory=dict)

    @property
    def overall_pass(self) -> bool:
        return all(c.passed for c in self.checks)

    def to_dict(self) -> dict:
        return {
            "overall_pass": self.overall_pass,
            "checks": [asdict(c) for c in self.checks],
            "conventions": self.conventions,
            "config": self.config,
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2, sort_keys=True)


def random_in_zone(rng, size: int) -> np.ndarray:
    out = []
    have = 0
    while have < size:
        k = rng.uniform(-np.pi, np.pi, size=(2 * size + 16, 3))
        k = k[lattice.in_brillouin(k)]
        out.append(k)
        have += len(k)
    return np.concatenate(out)[:size]


def random_spinor_transform(rng, max_rapidity: float = 0.5) -> np.ndarray:
    """A random rotation times a random boost with |rapidity| <= max_rapidity."""
    a = rng.normal(size=3)
    b = rng.normal(size=3)
    rot = symmetry.rotation(a / np.linalg.norm(a), rng.uniform(0.0, 2.0 * np.pi))
    return rot @ symmetry.boost(b / np.linalg.norm(b), rng.uniform(-max_rapidity, max_rapidity))


def _random_small(rng, size: int, radius: float) -> np.ndarray:
    u = rng.normal(size=(size, 3))
    u /= np.linalg.norm(u, axis=1, keepdims=True)
    return u * radius * rng.uniform(0.0, 1.0, size=(size, 1)) ** (1.0 / 3.0)


# lattice ---------------------------------------------------------------------

def check_generator_parity(rng, n: int) -> CheckResult:
    bad = 0
    for h in lattice.generators():
        x = h.cartesian
        bad += int(not (x % 2 == x[0] % 2).all())
    coeffs = rng.integers(-50, 51, size=(n, 3))
    x = coeffs @ BASIS
    bad += int(np.count_nonzero((x % 2) != (x[:, :1] % 2)))
    return CheckResult.from_error("lattice.generator_parity", bad, n + 8, 0.0)


def check_biorthogonality(rng, n: int) -> CheckResult:
    err = np.abs(lattice.dual_basis() @ BASIS.T - np.eye(3)).max()
    return CheckResult.from_error("lattice.dual_biorthogonality", err, 9, 0.0)


def check_zone_volume(rng, n: int) -> CheckResult:
    """Monte-Carlo fraction of the cube [-pi, pi]^3 inside the zone; exact value 1/4."""
    k = rng.uniform(-np.pi, np.pi, size=(n, 3))
    frac = float(np.mean(lattice.in_brillouin(k)))
    return CheckResult.from_error("lattice.zone_volume_fraction", abs(frac / 0.25 - 1.0), n,
                                  0.01, f"fraction={frac:.6f}, expected 0.25")


def check_fourier_unitarity(rng, n: int) -> CheckResult:
    grid = PeriodicGrid(8)
    worst = 0.0
    for _ in range(max(1, n // 50)):
        psi = walk.random_state(grid, rng).amplitudes
        phi = grid.to_momentum(psi)
        worst = max(worst, abs(np.linalg.norm(phi) - 1.0),
                    float(np.abs(grid.to_position(phi) - psi).max()))
    return CheckResult.from_error("lattice.fourier_unitarity", worst, max(1, n // 50), 1e-12)


# walk ------------------------------------------------------------------------

def check_coin_unitarity(rng, n: int) -> CheckResult:
    worst = 0.0
    for kind in WalkKind:
        coins = walk.coin_set(kind)
        left = sum(c.conj().T @ c for c in coins.values())
        right = sum(c @ c.conj().T for c in coins.values())
        worst = max(worst, np.abs(left - IDENTITY).max(), np.abs(right - IDENTITY).max())
        for c in coins.values():
            worst = max(worst, abs(np.linalg.svd(c, compute_uv=False)[1]))
    return CheckResult.from_error("walk.coin_unitarity_rank", worst, 32, 1e-12)


def check_walk_unitarity(rng, n: int) -> CheckResult:
    k = random_in_zone(rng, n)
    worst = 0.0
    for kind in WalkKind:
        for w in (walk.walk_matrix(kind, k), walk.coin_sum_matrix(kind, k)):
            prod = np.conj(np.swapaxes(w, -1, -2)) @ w - IDENTITY
            worst = max(worst, float(np.linalg.norm(prod, axis=(-2, -1)).max()))
    return CheckResult.from_error("walk.unitarity", worst, 4 * n, 1e-12)


def check_form_equality(rng, n: int) -> CheckResult:
    k = random_in_zone(rng, n)
    worst = 0.0
    for kind in WalkKind:
        w = walk.walk_matrix(kind, k)
        worst = max(worst,
                    float(np.abs(w - walk.walk_matrix_from_components(kind, k)).max()),
                    float(np.abs(w - walk.coin_sum_matrix(kind, k)).max()))
    return CheckResult.from_error("walk.three_way_equality", worst, 4 * n, 1e-12)


def check_norm_identity(rng, n: int) -> CheckResult:
    k = random_in_zone(rng, n)
    lam, m = walk.lambda_n(k)
    err = np.abs(lam ** 2 + np.einsum("ni,ni->n", m, m) - 1.0).max()
    return CheckResult.from_error("walk.lambda_norm_identity", err, n, 1e-12)


def check_spectrum(rng, n: int) -> CheckResult:
    k = random_in_zone(rng, n)
    worst = 0.0
    for kind in WalkKind:
        ev = np.linalg.eigvals(walk.walk_matrix(kind, k))
        w = walk.omega(kind, k)
        expected = np.stack([np.exp(1j * w), np.exp(-1j * w)], axis=-1)
        ev = np.sort_complex(ev)
        expected = np.sort_complex(expected)
        # sorting can pair the two eigenvalues differently when nearly degenerate
        direct = np.abs(ev - expected).max(axis=-1)
        swapped = np.abs(ev - expected[:, ::-1]).max(axis=-1)
        worst = max(worst, float(np.minimum(direct, swapped).max()))
    return CheckResult.from_error("walk.spectrum", worst, 4 * n, 1e-10)


def check_weyl_limit(rng, n: int) -> CheckResult:
    """||W_q - (I - i q.sigma)||_2 <= |q|^2 and |omega_+(q) / |q| - 1| <= |q| for |q| <= 0.1."""
    q = _random_small(rng, n, 0.1)
    r = np.linalg.norm(q, axis=1)
    w = walk.walk_matrix(WalkKind.A_PLUS, q)
    approx = IDENTITY - 1j * np.einsum("ni,ijk->njk", q, PAULI)
    dev = np.linalg.norm(w - approx, ord=2, axis=(-2, -1))
    eps = np.abs(walk.dispersion(q)[2] / r - 1.0)
    worst = max(float((dev / r ** 2).max()), float((eps / r).max()))
    return CheckResult.from_error("walk.weyl_limit", worst, n, 1.0,
                                  "max of deviation / |q|^2 and |eps| / |q|")


def doubling_cone_ratio(rng, n: int) -> float:
    worst = 0.0
    for k0 in geometry.DOUBLING_POINTS.values():
        q = _random_small(rng, n, 0.1)
        r = np.linalg.norm(q, axis=1)
        w0 = walk.dispersion(k0)[2]
        w = walk.dispersion(k0 + q)[2]
        dev = np.abs(w - np.abs(w0 - r))
        worst = max(worst, float((dev / r ** 2).max()))
    return worst


def check_doubling_cones(rng, n: int) -> CheckResult:
    return CheckResult.from_error("walk.doubling_cones", doubling_cone_ratio(rng, n), 4 * n, 1.0,
                                  "max of deviation / |q|^2")


def check_step_norm(rng, n: int) -> CheckResult:
    grid = PeriodicGrid(8)
    worst = 0.0
    for kind in WalkKind:
        psi = walk.random_state(grid, rng)
        a = walk.step(kind, psi)
        b = walk.step_fourier(kind, psi)
        worst = max(worst, abs(a.norm() - 1.0), float(np.abs(a.amplitudes - b.amplitudes).max()))
    return CheckResult.from_error("walk.step_norm_and_fourier", worst, 4, 1e-12)


def check_translation_covariance(rng, n: int) -> CheckResult:
    grid = PeriodicGrid(6)
    worst = max(walk.translation_covariance_check(kind, grid, rng) for kind in WalkKind)
    return CheckResult.from_error("walk.translation_covariance", worst, 16, 1e-12)


# geometry --------------------------------------------------------------------

def check_half_angle_identities(rng, n: int) -> CheckResult:
    k = random_in_zone(rng, n)
    err = np.abs(geometry.half_angle_residuals(k)).max()
    return CheckResult.from_error("geometry.half_angle_identities", err, n, 1e-12)


def jacobian_fd_error(rng, n: int, h: float = 1e-5) -> float:
    k = random_in_zone(rng, n)
    jac = np.empty((n, 3, 3))
    for j in range(3):
        e = np.zeros(3)
        e[j] = h
        jac[:, :, j] = (geometry.n_of(k + e) - geometry.n_of(k - e)) / (2 * h)
    return float(np.abs(np.linalg.det(jac) - geometry.jacobian_det(k)).max())


def check_jacobian(rng, n: int) -> CheckResult:
    return CheckResult.from_error("geometry.jacobian_fd", jacobian_fd_error(rng, n), n, 1e-6)


def singular_samples(rng, n: int) -> np.ndarray:
    """Points of {cos 2ky = 0} and {lambda = 0}, built parametrically."""
    kx, kz = rng.uniform(-np.pi, np.pi, size=(2, n))
    ky = rng.choice([np.pi / 4, -np.pi / 4, 3 * np.pi / 4, -3 * np.pi / 4], size=n)
    first = np.stack([kx, ky, kz], axis=-1)
    kx, ky = rng.uniform(-np.pi, np.pi, size=(2, n))
    # cx cy cz = sx sy sz  <=>  tan kz = cx cy / (sx sy)
    kz = np.arctan2(np.cos(kx) * np.cos(ky), np.sin(kx) * np.sin(ky))
    second = np.stack([kx, ky, kz], axis=-1)
    return np.concatenate([first, second])


def check_jacobian_singular(rng, n: int) -> CheckResult:
    k = singular_samples(rng, n)
    err = np.abs(geometry.jacobian_det(k)).max()
    return CheckResult.from_error("geometry.jacobian_singular_set", err, len(k), 1e-12)


def inverse_round_trip_error(rng, n: int, region) -> float:
    ks = geometry.sample_region(region, n, rng)
    worst = 0.0
    for k in ks:
        back = geometry.n_inverse(geometry.n_of(k), region)
        worst = max(worst, float(np.linalg.norm(back - k)))
    return worst


def check_inverse_round_trip(rng, n: int) -> CheckResult:
    worst = max(inverse_round_trip_error(rng, n, r) for r in REGIONS)
    return CheckResult.from_error("geometry.n_inverse_round_trip", worst, 4 * n, 1e-9)


def check_forward_round_trip(rng, n: int) -> CheckResult:
    worst = 0.0
    count = 0
    while count < n:
        m = _random_small(rng, 1, 0.999)[0]
        if not geometry.in_H(m):
            continue
        count += 1
        for r in REGIONS:
            worst = max(worst, float(np.linalg.norm(geometry.n_of(geometry.n_inverse(m, r)) - m)))
    return CheckResult.from_error("geometry.n_of_round_trip", worst, 4 * n, 1e-9)


def check_region_partition(rng, n: int) -> CheckResult:
    k = random_in_zone(rng, n)
    codes = geometry.classify(k)
    excluded = float(np.mean(codes < 0))
    counts = [int(np.sum(codes == c)) for c in range(4)]
    valid = bool(np.isin(codes, [-1, 0, 1, 2, 3]).all())
    err = excluded if valid else np.inf
    return CheckResult.from_error("geometry.region_partition", err, n, 0.01,
                                  f"region counts {counts}, excluded fraction {excluded:.2e}")


# rescaling -------------------------------------------------------------------

def f_prime_oracle(m) -> float:
    """f' by scipy's QUADPACK at relative tolerance 1e-13."""
    from scipy.integrate import quad

    m = np.asarray(m, dtype=float)
    r = float(np.linalg.norm(m))
    if r == 0.0:
        return 1.0
    c2, q = rescaling.ray_parameters(m)
    val, _ = quad(lambda s: 1.0 / (c2 + (0.5 - q * s * s) ** 2), 0.0, r,
                  epsabs=0.0, epsrel=1e-13, limit=500)
    return 1.0 + r * (np.arctanh(r) + val)


def random_in_H(rng, n: int) -> np.ndarray:
    out = []
    while len(out) < n:
        m = _random_small(rng, 1, 1.0)[0]
        if geometry.in_H(m):
            out.append(m)
    return np.array(out)


def f_prime_oracle_error(rng, n: int) -> float:
    worst = abs(rescaling.f_prime(np.zeros(3)) - 1.0)
    for m in random_in_H(rng, n):
        a, b = rescaling.f_prime(m), f_prime_oracle(m)
        worst = max(worst, abs(a - b) / abs(b))
    return worst


def check_f_prime_oracle(rng, n: int) -> CheckResult:
    return CheckResult.from_error("rescaling.f_prime_oracle", f_prime_oracle_error(rng, n), n, 1e-8)


def z_axis_error(rng, n: int) -> float:
    worst = 0.0
    for r in rng.uniform(0.0, 0.999, size=n):
        a = rescaling.f_prime(np.array([0.0, 0.0, r]))
        worst = max(worst, abs(a - rescaling.f_prime_z_axis(r)) / rescaling.f_prime_z_axis(r))
    return worst


def check_z_axis(rng, n: int) -> CheckResult:
    return CheckResult.from_error("rescaling.z_axis_closed_form", z_axis_error(rng, n), n, 1e-10)


def random_directions(rng, n: int) -> np.ndarray:
    u = rng.normal(size=(n, 3))
    return u / np.linalg.norm(u, axis=1, keepdims=True)


def check_radial_monotone(rng, n: int) -> CheckResult:
    bad = 0
    for u in random_directions(rng, n):
        ray = rescaling.RayProfile.along(u)
        rs = np.sort(rng.uniform(0.0, ray.r_max, size=12))
        rho = np.array([ray.rho(r) for r in rs])
        bad += int(np.count_nonzero(np.diff(rho) <= 0))
    return CheckResult.from_error("rescaling.radial_monotone", bad, 12 * n, 0.0)


def divergence_minimum(rng, n: int, depth: float = 1e-6) -> float:
    """min over random rays of r f'(r u) at r = r_max (1 - depth)."""
    worst = np.inf
    for u in random_directions(rng, n):
        ray = rescaling.RayProfile.along(u)
        worst = min(worst, ray.rho(ray.r_max * (1.0 - depth)))
    return float(worst)


def check_divergence(rng, n: int, threshold: float = 1e3) -> CheckResult:
    low = divergence_minimum(rng, n)
    return CheckResult.from_error("rescaling.radial_divergence", threshold / low, n, 1.0,
                                  f"min r f' at r_max(1-1e-6) = {low:.6g}, required > {threshold:g}")


def dmap_round_trip_error(rng, n: int, region) -> float:
    worst = 0.0
    for k in geometry.sample_region(region, n, rng):
        branch = int(rng.choice((-1, 1)))
        x = OnShellPoint(k, branch, region)
        p = rescaling.dmap(x)
        y = rescaling.dmap_inverse(p, region)
        worst = max(worst, float(np.linalg.norm(y.k - k)), float(y.branch != branch))
        if not rescaling.is_null(p):
            worst = np.inf
    return worst


def check_dmap_round_trip(rng, n: int) -> CheckResult:
    worst = max(dmap_round_trip_error(rng, n, r) for r in REGIONS)
    return CheckResult.from_error("rescaling.dmap_round_trip", worst, 4 * n, 1e-8)


def check_radial_invert(rng, n: int) -> CheckResult:
    worst = 0.0
    for u in random_directions(rng, n):
        ray = rescaling.RayProfile.along(u)
        r = rng.uniform(0.0, 0.99) * ray.r_max
        worst = max(worst, abs(rescaling.radial_invert(ray.rho(r), u) - r))
    return CheckResult.from_error("rescaling.radial_invert_round_trip", worst, n, 1e-10)


# symmetry --------------------------------------------------------------------

def check_lorentz_matrices(rng, n: int) -> CheckResult:
    worst = 0.0
    for _ in range(n):
        lam = random_spinor_transform(rng, 1.0)
        L = symmetry.vector_rep(lam)
        worst = max(worst, abs(np.linalg.det(lam) - 1.0),
                    float(np.abs(L.T @ symmetry.METRIC @ L - symmetry.METRIC).max()),
                    abs(np.linalg.det(L) - 1.0), max(0.0, 1.0 - L[0, 0]))
        p = rng.normal(size=4)
        p[0] = np.linalg.norm(p[1:])
        lp = L @ p
        worst = max(worst, abs(lp[0] ** 2 - lp[1:] @ lp[1:]) / (lp @ lp))
    return CheckResult.from_error("symmetry.lorentz_matrices_null_cone", worst, n, 1e-10)


def changeref_error(rng, n: int) -> float:
    worst = 0.0
    for chirality in ("right", "left"):
        for _ in range(n):
            lam = random_spinor_transform(rng, 1.0)
            region = REGIONS[int(rng.integers(4))]
            x = rescaling.sample_on_shell(region, 1, rng)[0]
            p = rescaling.dmap(x)
            worst = max(worst, symmetry.changeref_residual(lam, p, chirality) / np.linalg.norm(p))
    return worst


def check_changeref(rng, n: int) -> CheckResult:
    return CheckResult.from_error("symmetry.changeref_residual", changeref_error(rng, n), 2 * n, 1e-8)


def group_law_error(rng, n: int) -> float:
    worst = 0.0
    for i in range(n):
        region = REGIONS[i % 4]
        x = rescaling.sample_on_shell(region, 1, rng)[0]
        l1, l2 = random_spinor_transform(rng), random_spinor_transform(rng)
        a = symmetry.deformed_apply(l2, symmetry.deformed_apply(l1, x))
        b = symmetry.deformed_apply(l2 @ l1, x)
        worst = max(worst, float(np.linalg.norm(a.k - b.k)), float(a.branch != b.branch))
    return worst


def check_group_law(rng, n: int) -> CheckResult:
    return CheckResult.from_error("symmetry.deformed_group_law", group_law_error(rng, n), n, 1e-8)


def check_frame_change_solutions(rng, n: int) -> CheckResult:
    worst = 0.0
    for i in range(n):
        x = rescaling.sample_on_shell(REGIONS[i % 4], 1, rng)[0]
        _, psi = walk.eigen_spinor(WalkKind.A_PLUS, x.k, x.branch)
        y, psi2 = symmetry.lorentz_frame(random_spinor_transform(rng))(x, psi)
        worst = max(worst, symmetry.solution_residual(y, psi2))
    return CheckResult.from_error("symmetry.frame_change_solutions", worst, n, 1e-7)


def region_permutation_error(rng, n: int) -> float:
    worst = 0.0
    for swaps in ((True, False), (False, True), (True, True)):
        fc = symmetry.region_permutation(*swaps)
        for i in range(n):
            region = REGIONS[i % 4]
            x = rescaling.sample_on_shell(region, 1, rng)[0]
            y = fc.kmap(x)
            z = fc.kmap(y)
            worst = max(worst, float(np.linalg.norm(z.k - x.k)),
                        float(np.linalg.norm(geometry.n_of(y.k) - geometry.n_of(x.k))),
                        float(z.region != x.region), abs(y.omega - x.omega))
    # Z2 x Z2: the two swaps commute and their product is the double swap
    a = symmetry.region_permutation(True, False)
    b = symmetry.region_permutation(False, True)
    ab = symmetry.region_permutation(True, True)
    for i in range(n):
        x = rescaling.sample_on_shell(REGIONS[i % 4], 1, rng)[0]
        p, q, r = a.kmap(b.kmap(x)), b.kmap(a.kmap(x)), ab.kmap(x)
        worst = max(worst, float(np.linalg.norm(p.k - q.k)), float(np.linalg.norm(p.k - r.k)))
    return worst


def check_region_permutation(rng, n: int) -> CheckResult:
    return CheckResult.from_error("symmetry.region_permutation", region_permutation_error(rng, n),
                                  4 * n, 1e-9)


def recovery_order(lam, direction, start: float = 0.05, halvings: int = 5) -> float:
    """Observed convergence order of the deviation from the linear action.

    The deviation d(|k|) is evaluated at |k| = start / 2^j, j = 0..halvings,
    along ``direction``; the order is the least-squares slope of log d
    against log |k|. A single halving is unreliable when the quadratic
    coefficient happens to be small for the sampled direction.
    """
    u = np.asarray(direction, dtype=float)
    u = u / np.linalg.norm(u)
    radii = start * 0.5 ** np.arange(halvings + 1)
    d = [symmetry.linear_deviation(lam, OnShellPoint(r * u, 1, Region.B0)) for r in radii]
    return float(np.polyfit(np.log(radii), np.log(d), 1)[0])


def check_linear_recovery(rng, n: int) -> CheckResult:
    worst = 0.0
    count = max(1, n // 20)
    for _ in range(count):
        order = recovery_order(random_spinor_transform(rng), rng.normal(size=3))
        worst = max(worst, abs(2.0 ** order - 4.0))
    return CheckResult.from_error("symmetry.linear_recovery", worst, count, 0.5,
                                  "max |2^order - 4|, order fitted over five halvings of |k|")


def check_origin_jacobian(rng, n: int) -> CheckResult:
    worst = 0.0
    count = max(1, n // 20)
    for _ in range(count):
        lam = random_spinor_transform(rng)
        L = symmetry.vector_rep(lam)
        u = random_directions(rng, 1)[0]
        for branch in (1, -1):
            d = symmetry.origin_derivative(lam, u, branch)
            worst = max(worst, float(np.abs(d - (L @ np.concatenate([[branch], u]))[1:]).max()))
    return CheckResult.from_error("symmetry.origin_jacobian", worst, 2 * count, 1e-5)


def check_translation_phase(rng, n: int) -> CheckResult:
    grid = PeriodicGrid(8)
    worst = 0.0
    h1 = LatticeVector((1, 0, 0))
    for idx in rng.integers(0, grid.n_sites, size=max(1, n // 20)):
        for branch in (1, -1):
            state, w = walk.plane_wave_state(WalkKind.A_PLUS, grid, int(idx), branch)
            k = lattice.wrap_to_zone(grid.cartesian_momenta()[idx])
            region = geometry.region_of(k)
            if region is Region.EX:
                continue
            x = OnShellPoint(k, branch, region)
            a = symmetry.translation_phase(1).phase(x)
            stepped = walk.step(WalkKind.A_PLUS, state).amplitudes
            worst = max(worst, float(np.abs(stepped - np.exp(1j * a) * state.amplitudes).max()))
            a = symmetry.translation_phase(0, h1).phase(x)
            shifted = walk.translate(state, h1).amplitudes
            worst = max(worst, float(np.abs(shifted - np.exp(1j * a) * state.amplitudes).max()))
    return CheckResult.from_error("symmetry.translation_phase", worst, max(1, n // 20), 1e-10)


def check_rotation_orbit(rng, n: int) -> CheckResult:
    x = rescaling.sample_on_shell(Region.B0, 1, rng, rho_max=2.0)[0]
    p0 = rescaling.dmap(x)[0]
    worst = 0.0
    count = max(2, n // 20)
    for axis, angle, lam in symmetry.orbit_transforms("so3", count):
        y = symmetry.deformed_apply(lam, x)
        worst = max(worst, abs(rescaling.dmap(y)[0] - p0),
                    abs(np.cos(y.omega) - geometry.lambda_of(y.k)))
    return CheckResult.from_error("symmetry.rotation_orbit_p0", worst, count, 1e-8)


# registry --------------------------------------------------------------------

#: (check, multiplier of the base sample count)
CHECKS = (
    (check_generator_parity, 1),
    (check_biorthogonality, 1),
    (check_zone_volume, 10000),
    (check_fourier_unitarity, 1),
    (check_coin_unitarity, 1),
    (check_walk_unitarity, 10),
    (check_form_equality, 10),
    (check_norm_identity, 10),
    (check_spectrum, 10),
    (check_weyl_limit, 5),
    (check_doubling_cones, 5),
    (check_step_norm, 1),
    (check_translation_covariance, 1),
    (check_half_angle_identities, 100),
    (check_jacobian, 5),
    (check_jacobian_singular, 5),
    (check_inverse_round_trip, 1),
    (check_forward_round_trip, 1),
    (check_region_partition, 1000),
    (check_f_prime_oracle, 1),
    (check_z_axis, 1),
    (check_radial_monotone, 1),
    (check_divergence, 1),
    (check_dmap_round_trip, 0.25),
    (check_radial_invert, 1),
    (check_lorentz_matrices, 1),
    (check_changeref, 1),
    (check_group_law, 0.25),
    (check_frame_change_solutions, 0.25),
    (check_region_permutation, 0.1),
    (check_linear_recovery, 1),
    (check_origin_jacobian, 1),
    (check_translation_phase, 1),
    (check_rotation_orbit, 1),
)


def _child_rng(seed: int, index: int) -> np.random.Generator:
    return np.random.default_rng(np.random.SeedSequence(seed, spawn_key=(index,)))


def _run_one(args) -> CheckResult:
    index, seed, samples = args
    check, scale = CHECKS[index]
    return check(_child_rng(seed, index), max(1, int(round(scale * samples))))


def run_checks(samples: int = 100, seed: int = 0, threads: int = 1,
               names=None) -> list[CheckResult]:
    """Run every registered check (or those whose name contains one of ``names``).

    Each check draws from its own generator derived from ``seed``, so the
    results do not depend on which other checks run or on ``threads``.
    """
    jobs = []
    for i, (check, _) in enumerate(CHECKS):
        if names and not any(s in check.__name__ for s in names):
            continue
        jobs.append((i, seed, samples))
    if threads <= 1:
        return [_run_one(j) for j in jobs]
    from concurrent.futures import ProcessPoolExecutor

    with ProcessPoolExecutor(max_workers=threads) as pool:
        return list(pool.map(_run_one, jobs))


def verify(samples: int = 100, seed: int = 0, threads: int = 1, config=None) -> VerifyReport:
    return VerifyReport(run_checks(samples, seed, threads), config=dict(config or {}))
