"""Evaluation of the generating function and its partial derivatives.

The full generator is S = S0 + eta * Re(S1) with S0 the quadratic basic
state and S1 the monochromatic perturbation.  Derivatives of any order
are analytic (exponentials times a complex carrier); finite differences
appear only in tests.

Two coordinate frames are used.  The *plain* frame is (X, Y, z).  The
*propagation* frame rotates (X, Y) so the wave travels along the first
axis; every unidirectional construction downstream (singular locus,
fronts, curvature) works there.  For a wave with l = 0 the two frames
coincide.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from . import _kernels
from .model import EadyParams, basic_state_S0
from .spectral import WaveMode, WaveVector

__all__ = [
    "JetBundle",
    "FJet",
    "FrameRotation",
    "CylindricalSolution",
    "rotate_frame",
    "eval_jet",
    "f_field",
    "f_jet",
    "wave_pack",
    "period",
    "pocket_center",
    "envelope_margin",
    "cs_residual",
    "lid_residual",
    "rotated_cs_residual",
    "sprime_values",
    "sprime_z",
]


@dataclass(frozen=True)
class JetBundle:
    """Value and partial derivatives of S at a point, plain frame.

    Mixed partials are symmetric by construction (analytic
    differentiation); the time derivatives are taken at fixed (X, Y, z).
    """

    value: float
    S_X: float
    S_Y: float
    S_z: float
    S_XX: float
    S_XY: float
    S_YY: float
    S_Xz: float
    S_Yz: float
    S_zz: float
    S_XXX: float
    S_XXz: float
    S_Xzz: float
    S_zzz: float
    S_Xt: float
    S_Yt: float
    S_zt: float
    inside_domain: bool

    @property
    def f(self):
        """Hessian determinant of the horizontal block, S_XX S_YY - S_XY^2."""
        return self.S_XX * self.S_YY - self.S_XY**2


@dataclass(frozen=True)
class FJet:
    """f = S_XX in the propagation frame, with first and second derivatives."""

    f: np.ndarray
    f_X: np.ndarray
    f_z: np.ndarray
    f_XX: np.ndarray
    f_Xz: np.ndarray
    f_zz: np.ndarray


@dataclass(frozen=True)
class FrameRotation:
    """Area-preserving rotation between the plain and propagation frames."""

    cos_nu: float
    sin_nu: float

    def to_wave(self, X, Y):
        """(X, Y) -> (X', Y') with X' along the wavevector."""
        return self.cos_nu * X + self.sin_nu * Y, self.cos_nu * Y - self.sin_nu * X

    def to_plain(self, Xp, Yp):
        return self.cos_nu * Xp - self.sin_nu * Yp, self.sin_nu * Xp + self.cos_nu * Yp


def rotate_frame(wv: WaveVector) -> FrameRotation:
    return FrameRotation(cos_nu=wv.k / wv.m, sin_nu=wv.l / wv.m)


# ---------------------------------------------------------------------------
# complex carriers
# ---------------------------------------------------------------------------

def _plain_partial(mode: WaveMode, X, Y, z, t, a=0, b=0, c=0, d=0):
    """Complex partial d^a_X d^b_Y d^c_z d^d_t of S1 in the plain frame."""
    p = mode.params
    wv = mode.wavevector
    om = mode.omega.as_complex
    zt = np.asarray(z) - p.B / 2
    Xt = np.asarray(X) - p.eps * t / 2
    phase = np.exp(1j * (wv.k * Xt + wv.l * np.asarray(Y) - om * t))
    fac = (1j * wv.k) ** a * (1j * wv.l) ** b * (-1j * (om + wv.k * p.eps / 2)) ** d
    return fac * mode.profile.psi(zt, order=c) * phase


def _wave_partial(mode: WaveMode, Xp, z, t, a=0, c=0, d=0):
    """Complex partial of S1 in the propagation frame (no Y' dependence)."""
    p = mode.params
    wv = mode.wavevector
    om = mode.omega.as_complex
    zt = np.asarray(z) - p.B / 2
    shift = (wv.k / wv.m) * p.eps / 2
    phase = np.exp(1j * (wv.m * (np.asarray(Xp) - shift * t) - om * t))
    fac = (1j * wv.m) ** a * (-1j * (om + wv.k * p.eps / 2)) ** d
    return fac * mode.profile.psi(zt, order=c) * phase


def wave_pack(mode: WaveMode):
    """Scalar tuple consumed by the grid kernels (propagation frame)."""
    p = mode.params
    wv = mode.wavevector
    return (
        float(wv.m),
        float(mode.profile.decay),
        complex(mode.profile.C1),
        complex(mode.profile.C2),
        float(mode.eta),
        mode.omega.as_complex,
        float((wv.k / wv.m) * p.eps / 2),
        float(p.B / 2),
    )


def _tiltx(mode: WaveMode) -> float:
    """Coefficient of X'*z in the rotated basic state, F sin(nu)."""
    return mode.params.F * mode.wavevector.l / mode.wavevector.m


def period(mode: WaveMode) -> float:
    """Spatial period along the propagation axis."""
    return 2.0 * math.pi / mode.wavevector.m


# ---------------------------------------------------------------------------
# jets
# ---------------------------------------------------------------------------

def eval_jet(mode: WaveMode, X, Y, z, t) -> JetBundle:
    """Analytic derivatives of S = S0 + eta*Re(S1) at a point (plain frame).

    Evaluation outside 0 <= z <= B is permitted for diagnostics and
    flagged through ``inside_domain``.
    """
    p = mode.params
    eta = mode.eta

    def re(a=0, b=0, c=0, d=0):
        return eta * np.real(_plain_partial(mode, X, Y, z, t, a, b, c, d))

    X = np.asarray(X, dtype=float) if np.ndim(X) else float(X)
    inside = np.logical_and(np.asarray(z) >= 0.0, np.asarray(z) <= p.B)
    return JetBundle(
        value=basic_state_S0(X, Y, z, p) + re(),
        S_X=X + re(a=1),
        S_Y=Y + p.F * z + re(b=1),
        S_z=-p.q_g * z + p.F * Y - 1.0 + re(c=1),
        S_XX=1.0 + re(a=2),
        S_XY=re(a=1, b=1),
        S_YY=1.0 + re(b=2),
        S_Xz=re(a=1, c=1),
        S_Yz=p.F + re(b=1, c=1),
        S_zz=-p.q_g + re(c=2),
        S_XXX=re(a=3),
        S_XXz=re(a=2, c=1),
        S_Xzz=re(a=1, c=2),
        S_zzz=re(c=3),
        S_Xt=re(a=1, d=1),
        S_Yt=re(b=1, d=1),
        S_zt=re(c=1, d=1),
        inside_domain=bool(np.all(inside)) if np.ndim(inside) else bool(inside),
    )


def f_field(mode: WaveMode, X, z, t):
    """f = S_XX along the propagation axis; identically 1 for eta = 0."""
    return _kernels.f_grid(X, z, t, wave_pack(mode))


def f_jet(mode: WaveMode, X, z, t) -> FJet:
    """f and its derivatives w.r.t. the propagation-frame coordinates."""
    f, fX, fz, fXX, fXz, fzz = _kernels.f_jet_grid(X, z, t, wave_pack(mode))
    return FJet(f=f, f_X=fX, f_z=fz, f_XX=fXX, f_Xz=fXz, f_zz=fzz)


def sprime_values(mode: WaveMode, X, z, t):
    """(S', dS'/dX) of the two-variable generator in the propagation frame."""
    return _kernels.sprime_grid(X, z, t, wave_pack(mode), mode.params.q_g, _tiltx(mode))


def sprime_z(mode: WaveMode, X, z, t):
    """dS'/dz of the two-variable generator."""
    p = mode.params
    return (
        -p.q_g * np.asarray(z)
        - 1.0
        + _tiltx(mode) * np.asarray(X)
        + mode.eta * np.real(_wave_partial(mode, X, z, t, c=1))
    )


# ---------------------------------------------------------------------------
# wave envelope helpers (used for windowing and catastrophe timing)
# ---------------------------------------------------------------------------

def envelope_margin(mode: WaveMode, z, t) -> float:
    """Peak of 1 - f over the propagation axis at height z and time t.

    Values above 1 mean f has zeros at that level.
    """
    p = mode.params
    zt = np.asarray(z) - p.B / 2
    om = mode.omega.as_complex
    amp = np.abs(mode.profile.psi(zt))
    return mode.eta * mode.wavevector.m**2 * amp * np.exp(om.imag * t)


def pocket_center(mode: WaveMode, z, t) -> float:
    """Propagation-frame X of the minimum of f at height z and time t."""
    p = mode.params
    wv = mode.wavevector
    om = mode.omega.as_complex
    zt = np.asarray(z) - p.B / 2
    shift = (wv.k / wv.m) * p.eps / 2
    arg = np.angle(mode.profile.psi(zt))
    return shift * t + (om.real * t - arg) / wv.m


# ---------------------------------------------------------------------------
# residuals of the governing equation and lid conditions
# ---------------------------------------------------------------------------

def cs_residual(mode: WaveMode, X, Y, z, t):
    """Residual of the full nonlinear dual Monge-Ampere equation,
    q_g (S_XX S_YY - S_XY^2) + S_zz, evaluated without linearisation."""
    p = mode.params
    eta = mode.eta

    def re(a=0, b=0, c=0):
        return eta * np.real(_plain_partial(mode, X, Y, z, t, a, b, c))

    S_XX = 1.0 + re(a=2)
    S_YY = 1.0 + re(b=2)
    S_XY = re(a=1, b=1)
    S_zz = -p.q_g + re(c=2)
    return p.q_g * (S_XX * S_YY - S_XY**2) + S_zz


def lid_residual(mode: WaveMode, X, Y, t, z):
    """Residual of the isentropic lid condition
    S_zt + (S_Y - Y) S_Xz + (X - S_X) S_Yz at height z."""
    p = mode.params
    eta = mode.eta

    def re(a=0, b=0, c=0, d=0):
        return eta * np.real(_plain_partial(mode, X, Y, z, t, a, b, c, d))

    S_zt = re(c=1, d=1)
    u_g = p.F * np.asarray(z) + re(b=1)
    v_g = -re(a=1)
    S_Xz = re(a=1, c=1)
    S_Yz = p.F + re(b=1, c=1)
    return S_zt + u_g * S_Xz + v_g * S_Yz


def rotated_cs_residual(mode: WaveMode, Xp, z, t):
    """Residual of the dual Monge-Ampere equation written in the rotated
    frame: q_g (S_X'X' S_Y'Y' - S_X'Y'^2) + S_zz."""
    p = mode.params
    eta = mode.eta
    S_XpXp = 1.0 + eta * np.real(_wave_partial(mode, Xp, z, t, a=2))
    S_YpYp = 1.0
    S_XpYp = 0.0
    S_zz = -p.q_g + eta * np.real(_wave_partial(mode, Xp, z, t, c=2))
    return p.q_g * (S_XpXp * S_YpYp - S_XpYp**2) + S_zz


# ---------------------------------------------------------------------------
# cylindrical view
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class CylindricalSolution:
    """Split S = Y'^2/2 + C Y' z + S'(X', z, t) in the propagation frame.

    C is the meridional tilt constant; S' solves the two-variable
    reduction q_g S'_XX + S'_zz = 0 level by level.
    """

    params: EadyParams
    C: float
    mode: WaveMode

    @classmethod
    def from_mode(cls, mode: WaveMode) -> "CylindricalSolution":
        wv = mode.wavevector
        return cls(params=mode.params, C=mode.params.F * wv.k / wv.m, mode=mode)

    def value(self, X, z, t):
        return sprime_values(self.mode, X, z, t)[0]

    def slope(self, X, z, t):
        return sprime_values(self.mode, X, z, t)[1]

    def f_jet(self, X, z, t) -> FJet:
        return f_jet(self.mode, X, z, t)

    def harmonic_residual(self, X, z, t):
        """q_g S'_XX + S'_zz, identically zero for an exact mode."""
        p = self.params
        eta = self.mode.eta
        sxx = 1.0 + eta * np.real(_wave_partial(self.mode, X, z, t, a=2))
        szz = -p.q_g + eta * np.real(_wave_partial(self.mode, X, z, t, c=2))
        return p.q_g * sxx + szz
