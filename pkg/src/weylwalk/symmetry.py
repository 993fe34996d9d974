"""Changes of inertial frame for the A+ walk.

A frame change is a quadruple (k', a, M, M~): a map of on-shell points, a
phase field and two 2x2 matrices such that

    X(p'(k')) = M~ X(p(k)) M^{-1},    psi'(k') = exp(i a(k)) M psi(k),

where X is the Hermitian matrix attached to a four-vector. Solutions of the
A+ walk satisfy X_right(p) psi = 0 with X_right(p) = p0 I + p.sigma, where
p = f'(n) (sin omega, n). Left-handed partners use X_left(p) = p0 I - p.sigma.

Lorentz transformations act through SL(2, C): a spinor transform Lam
determines the vector representation L by X_right(L p) = Lam X_right(p) Lam^+.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable

import numpy as np

from .geometry import REGIONS, Region, n_inverse, n_of
from .lattice import LatticeVector
from .rescaling import OnShellPoint, dmap, dmap_inverse
from .walk import IDENTITY, PAULI

METRIC = np.diag([1.0, -1.0, -1.0, -1.0])
_BASIS4 = np.concatenate([IDENTITY[None], PAULI])


def _unit(axis) -> np.ndarray:
    axis = np.asarray(axis, dtype=float)
    norm = np.linalg.norm(axis)
    if not np.isclose(norm, 1.0, atol=1e-12):
        raise ValueError(f"axis must be a unit vector, got norm {norm}")
    return axis / norm


def boost(axis, rapidity: float) -> np.ndarray:
    """exp(rapidity/2 axis.sigma); maps p along +axis to larger p0."""
    a = _unit(axis)
    half = 0.5 * rapidity
    return np.cosh(half) * IDENTITY + np.sinh(half) * np.einsum("i,ijk->jk", a, PAULI)


def rotation(axis, angle: float) -> np.ndarray:
    """exp(-i angle/2 axis.sigma); rotates spatial vectors by ``angle`` about ``axis``."""
    a = _unit(axis)
    half = 0.5 * angle
    return np.cos(half) * IDENTITY - 1j * np.sin(half) * np.einsum("i,ijk->jk", a, PAULI)


def weyl_matrix(p, chirality: str = "right") -> np.ndarray:
    p = np.asarray(p, dtype=float)
    sign = {"right": 1.0, "left": -1.0}[chirality]
    return p[0] * IDENTITY + sign * np.einsum("i,ijk->jk", p[1:], PAULI)


def vector_rep(spinor) -> np.ndarray:
    """The 4x4 Lorentz matrix L with X(L p) = Lam X(p) Lam^+.

    L[mu, nu] = tr(s_mu Lam s_nu Lam^+) / 2 with s = (I, sigma).
    """
    lam = np.asarray(spinor, dtype=complex)
    conj = lam.conj().T
    L = 0.5 * np.einsum("mab,bc,ncd,da->mn", _BASIS4, lam, _BASIS4, conj)
    return L.real


def is_lorentz(L, tol: float = 1e-10) -> bool:
    L = np.asarray(L, dtype=float)
    return (np.abs(L.T @ METRIC @ L - METRIC).max() <= tol
            and abs(np.linalg.det(L) - 1.0) <= tol)


def spinor_pair(spinor, chirality: str = "right"):
    """(M, M~) realising the Lorentz transform of ``spinor`` on the eigenvalue equation.

    Right-handed: M = (Lam^+)^{-1}, M~ = Lam. Left-handed: the two are exchanged.
    """
    lam = np.asarray(spinor, dtype=complex)
    dagger_inv = np.linalg.inv(lam.conj().T)
    if chirality == "right":
        return dagger_inv, lam
    if chirality == "left":
        return lam, dagger_inv
    raise ValueError(f"chirality must be 'right' or 'left', got {chirality!r}")


def changeref_residual(spinor, p, chirality: str = "right") -> float:
    """|| X(L p) - M~ X(p) M^{-1} || for a four-vector p."""
    L = vector_rep(spinor)
    M, Mt = spinor_pair(spinor, chirality)
    lhs = weyl_matrix(L @ np.asarray(p, dtype=float), chirality)
    rhs = Mt @ weyl_matrix(p, chirality) @ np.linalg.inv(M)
    return float(np.linalg.norm(lhs - rhs, 2))


def deformed_apply(spinor, x: OnShellPoint) -> OnShellPoint:
    """Non-linear Lorentz action: dmap^{-1} . L . dmap, within the point's region."""
    L = vector_rep(spinor)
    if L[0, 0] < 0:
        raise ValueError("only orthochronous transformations are supported")
    return dmap_inverse(L @ dmap(x), x.region)


def linear_action(spinor, x: OnShellPoint) -> np.ndarray:
    """Spatial part of L (branch |k|, k): the undeformed Lorentz action on k."""
    k = x.k
    p = np.concatenate([[x.branch * np.linalg.norm(k)], k])
    return (vector_rep(spinor) @ p)[1:]


def linear_deviation(spinor, x: OnShellPoint) -> float:
    """|| deformed action - linear action || at x; O(|k|^2) near the origin."""
    return float(np.linalg.norm(deformed_apply(spinor, x).k - linear_action(spinor, x)))


def origin_derivative(spinor, direction, branch: int = 1, h: float = 1e-3) -> np.ndarray:
    """One-sided derivative of the deformed action at k = 0 along a unit direction.

    The on-shell set is a cone with its apex at the origin, so the Jacobian
    is read off ray by ray: d/dt k'(t u) at t = 0+, with one Richardson
    extrapolation step. For a linear action it equals the spatial part of
    L (branch, u).
    """
    u = _unit(direction)

    def quotient(t):
        return deformed_apply(spinor, OnShellPoint(t * u, branch, Region.B0)).k / t

    return 2.0 * quotient(0.5 * h) - quotient(h)


def _wrap_phase(a: float) -> float:
    return float((a + np.pi) % (2.0 * np.pi) - np.pi)


def _zero_phase(x: OnShellPoint) -> float:
    return 0.0


def _identity_map(x: OnShellPoint) -> OnShellPoint:
    return x


@dataclass
class FrameChange:
    """(k', a, M, M~) with an optional SL(2, C) label for Lorentz frame changes."""

    kmap: Callable[[OnShellPoint], OnShellPoint] = _identity_map
    phase: Callable[[OnShellPoint], float] = _zero_phase
    M: np.ndarray = field(default_factory=lambda: IDENTITY.copy())
    M_tilde: np.ndarray = field(default_factory=lambda: IDENTITY.copy())
    chirality: str = "right"
    spinor: np.ndarray | None = None

    def __call__(self, x: OnShellPoint, psi):
        return frame_change_apply(self, (x, psi))


def identity_frame() -> FrameChange:
    return FrameChange(spinor=IDENTITY.copy())


def lorentz_frame(spinor, chirality: str = "right") -> FrameChange:
    """The frame change induced by a Lorentz transformation (single global profile)."""
    lam = np.asarray(spinor, dtype=complex)
    M, Mt = spinor_pair(lam, chirality)
    return FrameChange(kmap=lambda x: deformed_apply(lam, x), M=M, M_tilde=Mt,
                       chirality=chirality, spinor=lam)


def frame_change_apply(fc: FrameChange, solution):
    """Map a solution (x, psi) to (k'(x), exp(i a(x)) M psi)."""
    x, psi = solution
    psi = np.asarray(psi, dtype=complex)
    return fc.kmap(x), np.exp(1j * fc.phase(x)) * (fc.M @ psi)


def compose(second: FrameChange, first: FrameChange) -> FrameChange:
    """The frame change ``second . first``."""
    if second.chirality != first.chirality:
        raise ValueError("cannot compose frame changes of different chirality")

    def kmap(x):
        return second.kmap(first.kmap(x))

    def phase(x):
        return _wrap_phase(first.phase(x) + second.phase(first.kmap(x)))

    spinor = None
    if first.spinor is not None and second.spinor is not None:
        spinor = second.spinor @ first.spinor
    return FrameChange(kmap=kmap, phase=phase, M=second.M @ first.M,
                       M_tilde=second.M_tilde @ first.M_tilde,
                       chirality=first.chirality, spinor=spinor)


def solution_residual(x: OnShellPoint, psi, chirality: str = "right") -> float:
    """|| X(p(x)) psi || / (|p| ||psi||), zero for solutions of the eigenvalue equation."""
    p = dmap(x)
    scale = max(1.0, float(np.linalg.norm(p))) * max(1e-300, float(np.linalg.norm(psi)))
    return float(np.linalg.norm(weyl_matrix(p, chirality) @ np.asarray(psi))) / scale


_SAME_CHIRALITY = ({Region.B0, Region.B2}, {Region.B1, Region.B3})


def region_permutation(swap_even: bool = False, swap_odd: bool = False,
                       pairs=None) -> FrameChange:
    """Exchange B0 <-> B2 and/or B1 <-> B3, keeping n(k) and omega fixed.

    ``pairs`` may instead list region pairs explicitly; pairs that mix
    chiralities are rejected.
    """
    mapping = {r: r for r in REGIONS}
    chosen = []
    if swap_even:
        chosen.append((Region.B0, Region.B2))
    if swap_odd:
        chosen.append((Region.B1, Region.B3))
    for a, b in pairs or ():
        chosen.append((Region.parse(a), Region.parse(b)))
    for a, b in chosen:
        if a == b:
            continue
        if {a, b} not in _SAME_CHIRALITY:
            raise ValueError(f"{a.value} and {b.value} carry opposite chirality")
        mapping[a], mapping[b] = b, a

    def kmap(x: OnShellPoint) -> OnShellPoint:
        target = mapping[x.region]
        if target is x.region:
            return x
        return OnShellPoint(n_inverse(n_of(x.k), target), x.branch, target)

    fc = FrameChange(kmap=kmap, spinor=IDENTITY.copy())
    fc.permutation = mapping
    return fc


def translation_phase(t: int, y: LatticeVector | None = None) -> FrameChange:
    """Pure phase frame change a(k) = omega(k) t - k.y, wrapped to [-pi, pi].

    On eigen plane waves exp(i a) equals t walk steps combined with the
    lattice translation T_y, where (T_y psi)(x) = psi(x + y).
    """
    y_cart = np.zeros(3) if y is None else y.cartesian.astype(float)

    def phase(x: OnShellPoint) -> float:
        return _wrap_phase(x.omega * t - float(x.k @ y_cart))

    return FrameChange(phase=phase, spinor=None)


def fibonacci_sphere(count: int) -> np.ndarray:
    """Deterministic, nearly uniform unit vectors."""
    i = np.arange(count) + 0.5
    z = 1.0 - 2.0 * i / count
    r = np.sqrt(np.maximum(0.0, 1.0 - z * z))
    phi = np.pi * (3.0 - np.sqrt(5.0)) * np.arange(count)
    return np.stack([r * np.cos(phi), r * np.sin(phi), z], axis=-1)


def orbit_transforms(generator: str, samples: int, axis=(0.0, 0.0, 1.0),
                     max_rapidity: float = 1.0):
    """Sample (axis, parameter, spinor) triples of a one-parameter or SO(3) family.

    ``generator`` is ``"rotation"`` (angles in [0, 2 pi) about ``axis``),
    ``"boost"`` (rapidities in [-max_rapidity, max_rapidity] along ``axis``)
    or ``"so3"``: the rotation taking the x axis onto each of ``samples``
    Fibonacci directions, which sweeps the whole rotation orbit of a point on
    the x axis.
    """
    if samples < 1:
        raise ValueError("samples must be positive")
    out = []
    if generator == "rotation":
        a = _unit(axis)
        for angle in 2.0 * np.pi * np.arange(samples) / samples:
            out.append((a, float(angle), rotation(a, angle)))
    elif generator == "boost":
        a = _unit(axis)
        etas = np.linspace(-max_rapidity, max_rapidity, samples) if samples > 1 else [0.0]
        for eta in etas:
            out.append((a, float(eta), boost(a, eta)))
    elif generator == "so3":
        ex = np.array([1.0, 0.0, 0.0])
        for d in fibonacci_sphere(samples):
            cross = np.cross(ex, d)
            s = np.linalg.norm(cross)
            angle = float(np.arctan2(s, ex @ d))
            a = cross / s if s > 1e-14 else np.array([0.0, 0.0, 1.0])
            out.append((a, angle, rotation(a, angle)))
    else:
        raise ValueError(f"unknown generator {generator!r}")
    return out


def orbit(k0, branch: int = 1, region=None, generator: str = "so3", samples: int = 200,
          axis=(0.0, 0.0, 1.0), max_rapidity: float = 1.0, executor=None):
    """Images of an on-shell point under a sampled family of deformed transformations.

    Returns a list of ``(axis, parameter, k, omega)`` in sample order.
    ``executor`` may be any ``concurrent.futures`` executor; results keep
    the sample order either way.
    """
    from .geometry import region_of

    k0 = np.asarray(k0, dtype=float)
    region = region_of(k0) if region is None else Region.parse(region)
    if region is Region.EX:
        raise ValueError(f"{k0.tolist()} lies in the excluded set")
    x0 = OnShellPoint(k0, branch, region)
    transforms = orbit_transforms(generator, samples, axis, max_rapidity)
    spinors = [t[2] for t in transforms]
    if executor is None:
        images = [deformed_apply(s, x0) for s in spinors]
    else:
        images = list(executor.map(deformed_apply, spinors, [x0] * len(spinors)))
    return [(a, param, y.k, y.omega) for (a, param, _), y in zip(transforms, images)]


def anisotropy(points) -> float:
    """max |k| / min |k| over an orbit."""
    norms = np.linalg.norm(np.asarray([p[2] for p in points]), axis=-1)
    return float(norms.max() / norms.min())
