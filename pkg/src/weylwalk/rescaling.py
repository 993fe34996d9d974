"""Rescaling of on-shell walk solutions onto the null cone.

The profile is

    f'(m) = 1 + r * int_0^r ds [1 / (1 - s^2) + 1 / b(s)],
    b(s)  = cos^2(2 phi) + (1/2 - s^2 (1 - cos^2(theta) sin^2(phi)))^2,

in the spherical coordinates of m (see :func:`weylwalk.geometry.spherical`).
It is 1 at the origin, grows along every ray and diverges on the boundary of
H, so p = f'(n) (sin omega, n) maps each region's on-shell set onto the full
null cone.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .geometry import Region, in_H, n_inverse, n_of
from .numerics import adaptive_gk15, bisect_increasing
from .walk import lambda_n, phase_angle

QUAD_RTOL = 1e-10
QUAD_ATOL = 1e-14
SINGULAR_PLANE_TOL = 1e-14


def ray_parameters(u):
    """(cos^2 2phi, 1 - cos^2 theta sin^2 phi) for a direction, without trig.

    The second value equals (u_x^2 + u_y^2) / |u|^2.
    """
    u = np.asarray(u, dtype=float)
    u = u / np.linalg.norm(u)
    xz = u[0] ** 2 + u[2] ** 2
    cos2phi = 1.0 if xz == 0.0 else (u[0] ** 2 - u[2] ** 2) / xz
    return cos2phi ** 2, u[0] ** 2 + u[1] ** 2


def r_max(u) -> float:
    """Distance from the origin to the boundary of H along ``u``."""
    c2, q = ray_parameters(u)
    if np.sqrt(c2) <= SINGULAR_PLANE_TOL and q > 0:
        r0 = np.sqrt(1.0 / (2.0 * q))
        if r0 < 1.0:
            return float(r0)
    return 1.0


@dataclass(frozen=True)
class RayProfile:
    """The profile restricted to one ray of H."""

    c2: float
    q: float
    r_max: float

    @classmethod
    def along(cls, u) -> RayProfile:
        c2, q = ray_parameters(u)
        return cls(c2, q, r_max(u))

    def integrand(self, s):
        return 1.0 / (self.c2 + (0.5 - self.q * s * s) ** 2)

    def b_integral(self, r: float) -> float:
        return adaptive_gk15(self.integrand, 0.0, r, rtol=QUAD_RTOL, atol=QUAD_ATOL)[0]

    def f_prime(self, r: float) -> float:
        if r <= 0.0:
            return 1.0
        if r >= self.r_max:
            return np.inf
        return 1.0 + r * (np.arctanh(r) + self.b_integral(r))

    def rho(self, r: float) -> float:
        """r * f'(r u), strictly increasing from 0 to infinity on [0, r_max)."""
        return 0.0 if r <= 0.0 else r * self.f_prime(r)


def f_prime(m) -> float:
    """The rescaling profile at a point of H."""
    m = np.asarray(m, dtype=float)
    if not in_H(m):
        raise ValueError(f"{m.tolist()} is outside H")
    r = float(np.linalg.norm(m))
    if r == 0.0:
        return 1.0
    return RayProfile.along(m).f_prime(r)


def f_prime_z_axis(r):
    """Closed form on the z axis, where b = 5/4: 1 + r atanh(r) + 4 r^2 / 5."""
    r = np.asarray(r, dtype=float)
    return 1.0 + r * np.arctanh(r) + 0.8 * r ** 2


def radial_invert(rho: float, u, xtol: float = 1e-15) -> float:
    """The unique r in [0, r_max(u)) with r f'(r u) = rho.

    f' diverges only logarithmically, so for rho beyond about 18 the root
    lies within one ulp of r_max and is no longer representable.
    """
    if rho < 0:
        raise ValueError("rho must be non-negative")
    if rho == 0:
        return 0.0
    ray = RayProfile.along(u)
    return bisect_increasing(ray.rho, rho, ray.r_max, xtol=xtol)


@dataclass(eq=False)
class OnShellPoint:
    """A solution label (omega, k) of the (+) walk with omega = branch * arccos(lambda(k))."""

    k: np.ndarray
    branch: int
    region: Region

    def __post_init__(self):
        self.k = np.asarray(self.k, dtype=float)
        if self.branch not in (1, -1):
            raise ValueError("branch must be +1 or -1")
        self.region = Region.parse(self.region)

    @property
    def omega(self) -> float:
        lam, n = lambda_n(self.k)
        return self.branch * float(phase_angle(lam, n))

    @property
    def four_vector(self) -> np.ndarray:
        return np.concatenate([[self.omega], self.k])

    def __repr__(self):
        return (f"OnShellPoint(k={self.k.tolist()}, branch={self.branch}, "
                f"region={self.region.value})")


def dmap(x: OnShellPoint) -> np.ndarray:
    """p = f'(n) (branch |n|, n), a null four-vector."""
    n = n_of(x.k)
    norm = float(np.linalg.norm(n))
    scale = f_prime(n)
    return scale * np.concatenate([[x.branch * norm], n])


def is_null(p, tol: float = 1e-8) -> bool:
    p = np.asarray(p, dtype=float)
    spatial = float(p[1:] @ p[1:])
    return abs(p[0] ** 2 - spatial) <= tol * (1.0 + spatial)


def dmap_inverse(p, region) -> OnShellPoint:
    """Inverse of :func:`dmap` on the on-shell set of ``region``."""
    p = np.asarray(p, dtype=float)
    region = Region.parse(region)
    if not is_null(p):
        raise ValueError(f"{p.tolist()} is not on the null cone")
    spatial = p[1:]
    rho = float(np.linalg.norm(spatial))
    branch = 1 if p[0] >= 0 else -1
    if rho == 0.0:
        return OnShellPoint(n_inverse(np.zeros(3), region), 1, region)
    u = spatial / rho
    r = radial_invert(rho, u)
    return OnShellPoint(n_inverse(r * u, region), branch, region)


def sample_on_shell(region, size: int, rng, rho_max: float = 4.0,
                    n_max: float = 0.9) -> list[OnShellPoint]:
    """Random on-shell points of ``region`` with |p| <= rho_max and random branch.

    Keeping |p| moderate leaves room for Lorentz transformations: images
    with |p| above about 18 sit within one ulp of the boundary of H.
    """
    from .geometry import sample_region

    out: list[OnShellPoint] = []
    while len(out) < size:
        for k in sample_region(region, size, rng, n_max=n_max):
            x = OnShellPoint(k, int(rng.choice((-1, 1))), region)
            if np.linalg.norm(dmap(x)[1:]) <= rho_max:
                out.append(x)
                if len(out) == size:
                    break
    return out
