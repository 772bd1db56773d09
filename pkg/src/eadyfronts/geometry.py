"""Monge-Ampere structure, ambient metric, pull-back, and scalar curvature.

The ambient pseudo-metric pairs each base coordinate with its dual
momentum at strength q_g (signature (3,3), flat).  Its pull-back onto
the solution manifold degenerates exactly on the singular locus, and the
scalar curvature of the pulled-back metric,

    Sc = (f_z^2 + q_g f_X^2) / (q_g f^3),

inherits its sign from f and blows up like f^-3 at generic locus points.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .spectral import WaveMode
from .wavefield import FrameRotation, eval_jet, f_jet

__all__ = [
    "MongeAmpereStructure",
    "AmbientMetric",
    "PullbackMetric",
    "CurvatureSample",
    "CurvatureField",
    "ambient_metric",
    "pullback",
    "pullback_rotated",
    "rotate_pullback",
    "scalar_curvature",
    "scalar_curvature_full",
    "f_harmonic_residual",
    "curvature_field",
    "rotated_curvature",
]

SIG_RIEMANNIAN = "riemannian"
SIG_PSEUDO = "pseudo_riemannian"
SIG_DEGENERATE = "degenerate"

#: |f| at or below this is tagged degenerate
DEGENERACY_TOL = 1e-6
#: field sweeps only report curvature outside this guard band
FIELD_GUARD = 1e-3

# phase-space coordinate order used for form/metric components
COORDS = ("x", "y", "z", "X", "Y", "Z")


@dataclass(frozen=True)
class MongeAmpereStructure:
    """Pair (omega, alpha) of forms encoding the constant-q_g equation.

    Coefficients are stored over sorted index tuples into ``COORDS``.
    """

    q_g: float

    @property
    def omega_coeffs(self) -> dict:
        # omega = dX^dx + dY^dy + dZ^dz, canonicalised to sorted index order
        return {(0, 3): -1.0, (1, 4): -1.0, (2, 5): -1.0}

    @property
    def alpha_coeffs(self) -> dict:
        # alpha = dX^dY^dZ - q_g dx^dy^dz
        return {(3, 4, 5): 1.0, (0, 1, 2): -self.q_g}


@dataclass(frozen=True)
class AmbientMetric:
    """Flat pseudo-metric 2 q_g (dx dX + dy dY + dz dZ) on the phase space."""

    q_g: float

    @property
    def coefficient(self) -> float:
        """Coefficient of each symmetric product dx dX in the defining form."""
        return 2.0 * self.q_g

    def matrix(self) -> np.ndarray:
        """Bilinear-form matrix over ``COORDS``: pairings g(d/dx, d/dX) = q_g."""
        G = np.zeros((6, 6))
        for i in range(3):
            G[i, i + 3] = G[i + 3, i] = self.q_g
        return G

    @property
    def signature(self) -> tuple[int, int]:
        return (3, 3)

    @property
    def is_flat(self) -> bool:
        # constant coefficients: every Christoffel symbol vanishes
        return True


def ambient_metric(q_g: float) -> AmbientMetric:
    if q_g <= 0:
        raise ValueError("ambient metric requires q_g > 0")
    return AmbientMetric(q_g=q_g)


@dataclass(frozen=True)
class PullbackMetric:
    """Pull-back onto the manifold in coordinates (X, Y, z).

    Components h_XX = 2 q_g S_XX, h_XY = 2 q_g S_XY, h_YY = 2 q_g S_YY,
    h_zz = -2 q_g S_zz; the X-z and Y-z cross terms vanish identically.
    """

    h_XX: float
    h_XY: float
    h_YY: float
    h_zz: float

    def matrix(self) -> np.ndarray:
        return np.array(
            [
                [self.h_XX, self.h_XY, 0.0],
                [self.h_XY, self.h_YY, 0.0],
                [0.0, 0.0, self.h_zz],
            ]
        )

    def det(self) -> float:
        return (self.h_XX * self.h_YY - self.h_XY**2) * self.h_zz


def pullback(mode: WaveMode, X, Y, z, t) -> PullbackMetric:
    """Pull-back metric components from the jet at a plain-frame point."""
    q = mode.params.q_g
    jet = eval_jet(mode, X, Y, z, t)
    return PullbackMetric(
        h_XX=2 * q * jet.S_XX,
        h_XY=2 * q * jet.S_XY,
        h_YY=2 * q * jet.S_YY,
        h_zz=-2 * q * jet.S_zz,
    )


def pullback_rotated(mode: WaveMode, Xp, z, t) -> PullbackMetric:
    """Pull-back in the propagation frame: 2 q_g (f'(dX'^2 + q_g dz^2) + dY'^2)."""
    q = mode.params.q_g
    fp = float(f_jet(mode, Xp, z, t).f)
    return PullbackMetric(h_XX=2 * q * fp, h_XY=0.0, h_YY=2 * q, h_zz=2 * q * q * fp)


def rotate_pullback(pb: PullbackMetric, rot: FrameRotation) -> PullbackMetric:
    """Transform plain-frame components to the propagation frame (tensor rule)."""
    c, s = rot.cos_nu, rot.sin_nu
    J = np.array([[c, -s, 0.0], [s, c, 0.0], [0.0, 0.0, 1.0]])
    H = J.T @ pb.matrix() @ J
    return PullbackMetric(h_XX=H[0, 0], h_XY=H[0, 1], h_YY=H[1, 1], h_zz=H[2, 2])


@dataclass(frozen=True)
class CurvatureSample:
    X: float
    z: float
    t: float
    f: float
    Sc: float | None
    signature: str


def _signature_of(f: float, tol: float = DEGENERACY_TOL) -> str:
    if f > tol:
        return SIG_RIEMANNIAN
    if f < -tol:
        return SIG_PSEUDO
    return SIG_DEGENERATE


def scalar_curvature(mode: WaveMode, X, z, t, tol: float = DEGENERACY_TOL) -> CurvatureSample:
    """Scalar curvature Sc = (f_z^2 + q_g f_X^2)/(q_g f^3) at one point.

    On the singular set (|f| <= tol) the sample is tagged degenerate and
    carries no curvature value.
    """
    q = mode.params.q_g
    jet = f_jet(mode, X, z, t)
    f = float(jet.f)
    sig = _signature_of(f, tol)
    if sig == SIG_DEGENERATE:
        return CurvatureSample(X=X, z=z, t=t, f=f, Sc=None, signature=sig)
    sc = (float(jet.f_z) ** 2 + q * float(jet.f_X) ** 2) / (q * f**3)
    return CurvatureSample(X=X, z=z, t=t, f=f, Sc=sc, signature=sig)


def scalar_curvature_full(mode: WaveMode, X, z, t) -> float:
    """Curvature with the (identically vanishing) second numerator term kept:
    (f_z^2 + q_g f_X^2 - f (f_zz + q_g f_XX)) / (q_g f^3)."""
    q = mode.params.q_g
    jet = f_jet(mode, X, z, t)
    f = float(jet.f)
    num = (
        float(jet.f_z) ** 2
        + q * float(jet.f_X) ** 2
        - f * (float(jet.f_zz) + q * float(jet.f_XX))
    )
    return num / (q * f**3)


def f_harmonic_residual(mode: WaveMode, X, z, t):
    """f_zz + q_g f_XX: zero because f inherits the level-wise harmonicity."""
    jet = f_jet(mode, X, z, t)
    return jet.f_zz + mode.params.q_g * jet.f_XX


def _f_jet_extended(mode: WaveMode, X, z, t):
    """f-jet in extended precision, for noise-limited consistency checks.

    Near the locus the curvature magnifies one-ulp evaluation noise by
    1/f^3; comparing the two curvature formulas at double precision would
    measure that noise rather than the formulas.
    """
    ld = np.longdouble
    cld = np.clongdouble
    p = mode.params
    wv = mode.wavevector
    keff = ld(wv.m)
    lam = ld(mode.profile.decay)
    eta = ld(mode.eta)
    om = cld(mode.omega.as_complex)
    shift = ld(wv.k) / ld(wv.m) * ld(p.eps) / 2
    zt = np.asarray(z, dtype=ld) - ld(p.B) / 2
    Xa = np.asarray(X, dtype=ld)
    E = np.exp(1j * (keff * (Xa - shift * ld(t)) - om * ld(t)))
    w0 = (cld(mode.profile.C1) * np.exp(lam * zt) + cld(mode.profile.C2) * np.exp(-lam * zt)) * E
    w1 = lam * (cld(mode.profile.C1) * np.exp(lam * zt) - cld(mode.profile.C2) * np.exp(-lam * zt)) * E
    k2 = keff * keff
    f = 1 - eta * k2 * w0.real
    fX = eta * k2 * keff * w0.imag
    fz = -eta * k2 * w1.real
    fXX = eta * k2 * k2 * w0.real
    fXz = eta * k2 * keff * w1.imag
    fzz = -eta * k2 * lam * lam * w0.real
    return f, fX, fz, fXX, fXz, fzz


def curvature_consistency(mode: WaveMode, X, z, t):
    """Absolute difference between the full and reduced curvature formulas.

    Both routes are evaluated in extended precision; the difference is
    exactly the discarded harmonic term over q_g f^3 and vanishes up to
    rounding.
    """
    q = np.longdouble(mode.params.q_g)
    f, fX, fz, fXX, fXz, fzz = _f_jet_extended(mode, X, z, t)
    sc_full = (fz * fz + q * fX * fX - f * (fzz + q * fXX)) / (q * f**3)
    sc_reduced = (fz * fz + q * fX * fX) / (q * f**3)
    return np.abs(np.asarray(sc_full - sc_reduced, dtype=float))


def rotated_curvature(mode: WaveMode, Xp, z, t) -> CurvatureSample:
    """Curvature of a wave with l != 0, evaluated in its propagation frame.

    Identical to :func:`scalar_curvature`, which already works along the
    propagation axis; kept as an explicit name for rotated queries.
    """
    return scalar_curvature(mode, Xp, z, t)


@dataclass(frozen=True)
class CurvatureField:
    """Grid sweep of the curvature with a per-height maxima track."""

    t: float
    X: np.ndarray
    z: np.ndarray
    f: np.ndarray
    Sc: np.ndarray
    signature: np.ndarray
    track_z: np.ndarray
    track_max: np.ndarray
    track_X: np.ndarray


def curvature_field(
    mode: WaveMode,
    t: float,
    window: tuple[float, float] | None = None,
    nx: int = 241,
    nz: int = 121,
    guard: float = FIELD_GUARD,
) -> CurvatureField:
    """Sweep Sc over an (X, z) grid; curvature is reported only where
    |f| > guard to keep the output finite near the locus.

    The per-height track records max Sc and its position, a forecast of
    where fronts will appear.
    """
    from .wavefield import period, pocket_center, wave_pack
    from . import _kernels

    p = mode.params
    if window is None:
        c = pocket_center(mode, p.B / 2, t)
        per = period(mode)
        window = (c - per / 2, c + per / 2)
    Xs = np.linspace(window[0], window[1], nx)
    zs = np.linspace(0.0, p.B, nz)
    Xm, Zm = np.meshgrid(Xs, zs, indexing="ij")
    f, fX, fz, _, _, _ = _kernels.f_jet_grid(Xm, Zm, t, wave_pack(mode))
    q = p.q_g
    with np.errstate(divide="ignore", invalid="ignore"):
        sc = (fz**2 + q * fX**2) / (q * f**3)
    sc = np.where(np.abs(f) > guard, sc, np.nan)
    sig = np.where(
        f > DEGENERACY_TOL, 1, np.where(f < -DEGENERACY_TOL, -1, 0)
    )
    track_max = np.nanmax(np.where(np.isnan(sc), -np.inf, sc), axis=0)
    track_arg = np.nanargmax(np.where(np.isnan(sc), -np.inf, sc), axis=0)
    return CurvatureField(
        t=t,
        X=Xm,
        z=Zm,
        f=f,
        Sc=sc,
        signature=sig,
        track_z=zs,
        track_max=track_max,
        track_X=Xs[track_arg],
    )
