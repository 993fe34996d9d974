"""Geometry of the map k -> n(k) of the (+) walk.

n is a local diffeomorphism away from the singular set where
cos(2 ky) * lambda(k) = 0. That set cuts the Brillouin zone into four
regions B0..B3 (signs of lambda and cos 2ky), each mapped one-to-one onto
the star-shaped set H: the open unit ball minus the two planar pieces
Sigma' = {m_x = +-m_z, 2 m_x^2 + 2 m_y^2 >= 1}.

The (-) walks reduce to this map through ky -> -ky.
"""

from __future__ import annotations

import enum
from itertools import product

import numpy as np

from .lattice import in_brillouin, wrap_to_zone
from .walk import lambda_n

EPS_BOUNDARY = 1e-12
EPS_GEOMETRY = 1e-12


class Region(enum.Enum):
    B0 = "B0"
    B1 = "B1"
    B2 = "B2"
    B3 = "B3"
    EX = "EX"

    @property
    def sign_lambda(self) -> int:
        return {"B0": 1, "B1": -1, "B2": 1, "B3": -1}[self.value]

    @property
    def sign_cos2ky(self) -> int:
        return {"B0": 1, "B1": 1, "B2": -1, "B3": -1}[self.value]

    @property
    def chirality(self) -> str:
        """Handedness of the emergent Weyl equation of the A+ walk in the region."""
        if self is Region.EX:
            raise ValueError("the excluded set has no chirality")
        return "right" if self.sign_lambda > 0 else "left"

    @property
    def code(self) -> int:
        return -1 if self is Region.EX else int(self.value[1])

    @classmethod
    def from_signs(cls, sign_lambda: int, sign_cos2ky: int) -> Region:
        for r in (cls.B0, cls.B1, cls.B2, cls.B3):
            if r.sign_lambda == sign_lambda and r.sign_cos2ky == sign_cos2ky:
                return r
        raise ValueError("signs must be +1 or -1")

    @classmethod
    def parse(cls, label) -> Region:
        if isinstance(label, cls):
            return label
        return cls(str(label).strip().upper())


REGIONS = (Region.B0, Region.B1, Region.B2, Region.B3)


def lambda_of(k):
    return lambda_n(k)[0]


def n_of(k):
    return lambda_n(k)[1]


def jacobian_det(k):
    """det dn/dk in closed form, cos(2 ky) * lambda(k)."""
    k = np.asarray(k, dtype=float)
    return np.cos(2.0 * k[..., 1]) * lambda_of(k)


def jacobian_matrix(k) -> np.ndarray:
    """J[i, j] = d n_i / d k_j, analytically."""
    k = np.asarray(k, dtype=float)
    c, s = np.cos(k), np.sin(k)
    cx, cy, cz = c[..., 0], c[..., 1], c[..., 2]
    sx, sy, sz = s[..., 0], s[..., 1], s[..., 2]
    lam = cx * cy * cz - sx * sy * sz
    rows = [
        [lam, cx * cy * sz - sx * sy * cz, cx * sy * cz - sx * cy * sz],
        [-sx * sy * cz - cx * cy * sz, cx * cy * cz + sx * sy * sz, -cx * sy * sz - sx * cy * cz],
        [cx * sy * cz - sx * cy * sz, sx * cy * cz - cx * sy * sz, lam],
    ]
    return np.stack([np.stack(r, axis=-1) for r in rows], axis=-2)


def half_angle_residuals(k) -> np.ndarray:
    """Residuals of the identities used by :func:`n_inverse`, shape (..., 6).

    Columns, each as (polynomial in lambda, n) minus (trigonometric in 2k):
    x and z sine identities, x and z cosine identities, the sin 2ky
    identity and lambda^2 + |n|^2 = 1.
    """
    k = np.asarray(k, dtype=float)
    lam, n = lambda_n(k)
    nx, ny, nz = n[..., 0], n[..., 1], n[..., 2]
    s2, c2 = np.sin(2.0 * k), np.cos(2.0 * k)
    cols = [
        2.0 * (lam * nx - ny * nz) - s2[..., 0] * c2[..., 1],
        2.0 * (lam * nz - ny * nx) - s2[..., 2] * c2[..., 1],
        1.0 - 2.0 * (nx ** 2 + ny ** 2) - c2[..., 1] * c2[..., 0],
        1.0 - 2.0 * (nz ** 2 + ny ** 2) - c2[..., 1] * c2[..., 2],
        2.0 * (lam * ny + nx * nz) - s2[..., 1],
        lam ** 2 - (1.0 - nx ** 2 - ny ** 2 - nz ** 2),
    ]
    return np.stack(cols, axis=-1)


def spherical(m):
    """(r, theta, phi) with m = r (cos t cos p, sin t, cos t sin p); phi = 0 when undefined."""
    m = np.asarray(m, dtype=float)
    r = float(np.linalg.norm(m))
    if r == 0.0:
        return 0.0, 0.0, 0.0
    theta = float(np.arcsin(np.clip(m[1] / r, -1.0, 1.0)))
    phi = 0.0 if m[0] == 0.0 and m[2] == 0.0 else float(np.arctan2(m[2], m[0]))
    return r, theta, phi


def in_sigma_prime(m, eps: float = EPS_GEOMETRY):
    m = np.asarray(m, dtype=float)
    mx, my, mz = m[..., 0], m[..., 1], m[..., 2]
    in_ball = np.einsum("...i,...i->...", m, m) < 1.0
    on_plane = (np.abs(mx - mz) <= eps) | (np.abs(mx + mz) <= eps)
    outside_ellipse = 2 * mx ** 2 + 2 * my ** 2 >= 1.0 - eps
    out = in_ball & on_plane & outside_ellipse
    return out if out.ndim else bool(out)


def in_H(m, eps: float = EPS_GEOMETRY):
    m = np.asarray(m, dtype=float)
    out = (np.einsum("...i,...i->...", m, m) < 1.0) & ~np.asarray(in_sigma_prime(m, eps))
    return out if out.ndim else bool(out)


def classify(k, eps: float = EPS_BOUNDARY) -> np.ndarray:
    """Vectorised region codes: 0..3 for B0..B3, -1 for the excluded set.

    Points outside the zone are also reported as -1.
    """
    k = np.asarray(k, dtype=float)
    lam, n = lambda_n(k)
    c2y = np.cos(2.0 * k[..., 1])
    code = np.where(lam > 0, 0, 1) + np.where(c2y > 0, 0, 2)
    bad = (np.abs(lam) < eps) | (np.abs(c2y) < eps) | ~np.asarray(in_H(n))
    bad |= ~np.asarray(in_brillouin(k))
    return np.where(bad, -1, code)


def region_of(k, eps: float = EPS_BOUNDARY) -> Region:
    """Region B0..B3 of an in-zone wave-vector, or ``Region.EX``."""
    k = np.asarray(k, dtype=float)
    if not in_brillouin(k):
        raise ValueError(f"{k.tolist()} lies outside the Brillouin zone")
    code = int(classify(k, eps))
    return Region.EX if code < 0 else REGIONS[code]


_HALF_SHIFTS = np.array(list(product((0.0, np.pi, -np.pi), repeat=3)))


class InversionError(ValueError):
    pass


def _newton_polish(k, m, iterations: int = 3):
    for _ in range(iterations):
        resid = n_of(k) - m
        jac = jacobian_matrix(k)
        try:
            k = k - np.linalg.solve(jac, resid)
        except np.linalg.LinAlgError:
            break
    return k


def n_inverse(m, region, tol: float = 1e-9) -> np.ndarray:
    """The unique k in ``region`` with n(k) = m, for m in H.

    Each component of 2k follows from the half-angle identities
        sin 2ky = 2(lambda m_y + m_x m_z),
        sin 2kx cos 2ky = 2(lambda m_x - m_y m_z),  cos 2kx cos 2ky = 1 - 2(m_x^2 + m_y^2),
    and the same with x <-> z, where lambda and cos 2ky take the signs of the
    region. The 27 half-angle branches are enumerated, wrapped into the
    zone and verified against the forward map; the survivor is polished by
    a few Newton steps.
    """
    region = Region.parse(region)
    if region is Region.EX:
        raise InversionError("cannot invert onto the excluded set")
    m = np.asarray(m, dtype=float)
    if not in_H(m):
        raise InversionError(f"{m.tolist()} is outside the star-shaped image H")
    mx, my, mz = m
    sl, sc = region.sign_lambda, region.sign_cos2ky
    lam = sl * np.sqrt(max(0.0, 1.0 - float(m @ m)))
    s2y = np.clip(2.0 * (lam * my + mx * mz), -1.0, 1.0)
    c2y = sc * np.sqrt(max(0.0, 1.0 - s2y * s2y))
    two_kx = np.arctan2(sc * 2.0 * (lam * mx - my * mz), sc * (1.0 - 2.0 * (mx ** 2 + my ** 2)))
    two_ky = np.arctan2(s2y, c2y)
    two_kz = np.arctan2(sc * 2.0 * (lam * mz - my * mx), sc * (1.0 - 2.0 * (mz ** 2 + my ** 2)))
    base = 0.5 * np.array([two_kx, two_ky, two_kz])
    cands = wrap_to_zone(base + _HALF_SHIFTS)

    lam_c, n_c = lambda_n(cands)
    resid = np.linalg.norm(n_c - m, axis=-1)
    match = (np.sign(lam_c) == sl) | (np.abs(lam_c) < 1e-7)
    match &= (np.sign(np.cos(2.0 * cands[:, 1])) == sc) | (np.abs(np.cos(2.0 * cands[:, 1])) < 1e-7)
    if not match.any():
        raise InversionError(f"no branch of the inverse reproduces {m.tolist()} in {region.value}")
    resid = np.where(match, resid, np.inf)
    best = cands[int(np.argmin(resid))]
    k = _newton_polish(best, m)
    if not in_brillouin(k):
        k = wrap_to_zone(k)
    err = float(np.linalg.norm(n_of(k) - m))
    if err > tol:
        raise InversionError(
            f"inverse of {m.tolist()} in {region.value} misses by {err:.2e}")
    return k


DOUBLING_POINTS = {
    "k0": np.array([0.0, 0.0, 0.0]),
    "k1": np.pi / 2 * np.array([1.0, 1.0, 1.0]),
    "k2": -np.pi / 2 * np.array([1.0, 1.0, 1.0]),
    "k3": np.pi * np.array([1.0, 0.0, 0.0]),
}


def doubling_points():
    """The four zeros of n(k) with their regions and chiralities.

    Returns a list of ``(label, k, region, chirality)``.
    """
    out = []
    for label, k in DOUBLING_POINTS.items():
        region = region_of(k)
        chirality = "right" if lambda_of(k) > 0 else "left"
        out.append((label, k.copy(), region, chirality))
    return out


def sample_region(region, size: int, rng, max_rounds: int = 1000,
                  n_max: float = 1.0) -> np.ndarray:
    """Uniform samples of the zone restricted to ``region`` (rejection sampling).

    ``n_max`` < 1 keeps only points with |n(k)| < n_max, away from the
    boundary of the region.
    """
    region = Region.parse(region)
    out = []
    have = 0
    for _ in range(max_rounds):
        k = rng.uniform(-np.pi, np.pi, size=(4 * size + 16, 3))
        keep = classify(k) == region.code
        if n_max < 1.0:
            keep &= np.linalg.norm(n_of(k), axis=-1) < n_max
        k = k[keep]
        out.append(k)
        have += len(k)
        if have >= size:
            return np.concatenate(out)[:size]
    raise RuntimeError("rejection sampling did not collect enough points")
