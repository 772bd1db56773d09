"""Dispersion relation, vertical structure, and normal-mode construction.

A mode is a monochromatic wave in the co-moving dual coordinates:
the generating perturbation is psi(z - B/2) * exp(i(k*(X - eps*t/2) + l*Y
- omega*t)) with psi a combination of exponentials exp(+-m*sqrt(q_g)*zt).
The frequency returned by :func:`solve_omega` lives in that shifted frame,
where unstable modes are purely imaginary conjugate pairs.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .model import EadyParams

__all__ = [
    "WaveVector",
    "ComplexFrequency",
    "VerticalProfile",
    "WaveMode",
    "dispersion_rhs",
    "solve_omega",
    "neutral_wavenumber",
    "max_growth",
    "boundary_coefficients",
    "boundary_residuals",
    "build_mode",
]

#: residual tolerance for "omega sits on the dispersion curve"
DISPERSION_TOL = 1e-10
#: relative tolerance on the lid conditions for a constructed profile
BOUNDARY_TOL = 1e-10
#: argument beyond which the hyperbolic factors are replaced by their limits
_X_ASYMPTOTIC = 50.0


@dataclass(frozen=True)
class WaveVector:
    """Horizontal wavevector with magnitude m and direction angle nu."""

    k: float
    l: float
    m: float
    nu: float

    def __post_init__(self):
        if self.m <= 0:
            raise ValueError("wavevector magnitude must be positive")
        if abs(self.m - math.hypot(self.k, self.l)) > 1e-12 * self.m:
            raise ValueError("inconsistent magnitude: m must equal hypot(k, l)")

    @classmethod
    def from_components(cls, k: float, l: float) -> "WaveVector":
        return cls(k=k, l=l, m=math.hypot(k, l), nu=math.atan2(l, k))

    @classmethod
    def from_magnitude_angle(cls, m: float, nu: float) -> "WaveVector":
        return cls(k=m * math.cos(nu), l=m * math.sin(nu), m=m, nu=nu)


@dataclass(frozen=True)
class ComplexFrequency:
    """Frequency in the shifted frame: re is the oscillation, im the growth rate."""

    re: float
    im: float

    @property
    def as_complex(self) -> complex:
        return complex(self.re, self.im)

    @property
    def is_neutral(self) -> bool:
        return self.im == 0.0


@dataclass(frozen=True)
class VerticalProfile:
    """Coefficients of psi(zt) = C1*exp(decay*zt) + C2*exp(-decay*zt)."""

    C1: complex
    C2: complex
    decay: float

    def __post_init__(self):
        if self.C1 == 0 and self.C2 == 0:
            raise ValueError("trivial vertical profile: (C1, C2) = (0, 0)")

    def psi(self, zt, order: int = 0):
        """Evaluate the order-th zt-derivative of psi."""
        lam = self.decay
        return lam**order * (
            self.C1 * np.exp(lam * zt) + (-1) ** order * self.C2 * np.exp(-lam * zt)
        )


@dataclass(frozen=True)
class WaveMode:
    """A single normal mode: parameters, wavevector, frequency, profile, amplitude."""

    params: EadyParams
    wavevector: WaveVector
    omega: ComplexFrequency
    profile: VerticalProfile
    eta: float

    def __post_init__(self):
        if self.eta < 0:
            raise ValueError("perturbation amplitude eta must be non-negative")
        resid = dispersion_residual(self.wavevector, self.omega, self.params)
        if resid > DISPERSION_TOL:
            raise ValueError(
                f"omega does not satisfy the dispersion relation (residual {resid:.3e})"
            )


def dispersion_rhs(m: float, p: EadyParams) -> float:
    """Right-hand side phi(m; F, B) of -omega^2 = cos(nu)^2 * phi.

    phi = (F^2/q_g) (1 - x coth x)(x tanh x - 1) with x = B m sqrt(q_g)/2.
    Positive phi means instability at that magnitude.  For x beyond 50 the
    hyperbolic factors are replaced by their asymptotic limits to avoid
    spurious overflow.
    """
    if m <= 0:
        raise ValueError("wavenumber magnitude must be positive")
    x = 0.5 * p.B * m * math.sqrt(p.q_g)
    pref = p.F**2 / p.q_g
    if x > _X_ASYMPTOTIC:
        return pref * (1.0 - x) * (x - 1.0)
    tanh = math.tanh(x)
    return pref * (1.0 - x / tanh) * (x * tanh - 1.0)


def dispersion_residual(wv: WaveVector, omega: ComplexFrequency, p: EadyParams) -> float:
    """|omega^2 + cos(nu)^2 phi(m)|, zero exactly on the dispersion curve."""
    phi = dispersion_rhs(wv.m, p)
    return abs(omega.as_complex**2 + (wv.k / wv.m) ** 2 * phi)


def solve_omega(wv: WaveVector, p: EadyParams, branch: str = "growing") -> ComplexFrequency:
    """Solve the dispersion relation for the mode frequency.

    With phi > 0 the mode pair is +-i sqrt(cos^2(nu) phi); ``branch``
    selects "growing" (im > 0, default) or "decaying".  With phi <= 0 the
    mode is neutral and the re >= 0 root is returned (negated for the
    "decaying" branch).
    """
    if branch not in ("growing", "decaying"):
        raise ValueError(f"unknown branch {branch!r}")
    phi = dispersion_rhs(wv.m, p)
    c2 = (wv.k / wv.m) ** 2  # cos^2(nu), exact for k = 0
    mag = math.sqrt(abs(c2 * phi))
    sign = 1.0 if branch == "growing" else -1.0
    if phi > 0:
        return ComplexFrequency(re=0.0, im=sign * mag)
    return ComplexFrequency(re=sign * mag, im=0.0)


def neutral_wavenumber(p: EadyParams, tol: float = 1e-12) -> float:
    """Magnitude m* separating unstable (m < m*) from neutral (m >= m*) modes.

    Found by bracketed bisection of phi(m) = 0, equivalent to x tanh x = 1
    at x = B m sqrt(q_g) / 2.  Iterates until |phi| < tol.
    """
    scale = 2.0 / (p.B * math.sqrt(p.q_g))
    lo, hi = 1e-6 * scale, _X_ASYMPTOTIC * scale
    flo = dispersion_rhs(lo, p)
    if not flo > 0:
        raise RuntimeError("lower bracket is not unstable; cannot bisect")
    for _ in range(200):
        mid = 0.5 * (lo + hi)
        fmid = dispersion_rhs(mid, p)
        if abs(fmid) < tol:
            return mid
        if fmid > 0:
            lo = mid
        else:
            hi = mid
        if hi - lo < 1e-16 * hi:
            break
    return 0.5 * (lo + hi)


def max_growth(p: EadyParams) -> tuple[float, float]:
    """Magnitude of the fastest-growing mode and its growth rate (nu = 0)."""
    from scipy.optimize import minimize_scalar

    m_star = neutral_wavenumber(p)
    res = minimize_scalar(
        lambda m: -math.sqrt(max(dispersion_rhs(m, p), 0.0)),
        bounds=(1e-6, m_star),
        method="bounded",
        options={"xatol": 1e-12},
    )
    return float(res.x), float(-res.fun)


def _lid_coefficients(wv: WaveVector, omega: complex, p: EadyParams):
    """Coefficient pairs of the two homogeneous lid conditions on (C1, C2).

    Row 0 is the lower lid (z = 0), row 1 the upper lid (z = B).
    """
    lam = wv.m * math.sqrt(p.q_g)
    x = 0.5 * p.B * lam
    twoFk = 2.0 * p.F * wv.k
    keps = wv.k * p.eps
    lower = (
        math.exp(-x) * (twoFk + lam * (keps + 2.0 * omega)),
        math.exp(x) * (twoFk - lam * (keps + 2.0 * omega)),
    )
    upper = (
        math.exp(x) * (twoFk + lam * (-keps + 2.0 * omega)),
        math.exp(-x) * (twoFk + lam * (keps - 2.0 * omega)),
    )
    return lower, upper


def boundary_residuals(
    wv: WaveVector, omega: ComplexFrequency, p: EadyParams, C1: complex, C2: complex
) -> tuple[float, float]:
    """Relative residuals of the lower and upper lid conditions for (C1, C2)."""
    lower, upper = _lid_coefficients(wv, omega.as_complex, p)
    out = []
    for a, b in (lower, upper):
        num = abs(a * C1 + b * C2)
        den = abs(a * C1) + abs(b * C2)
        out.append(num / den if den > 0 else num)
    return out[0], out[1]


def boundary_coefficients(
    wv: WaveVector, omega: ComplexFrequency, p: EadyParams
) -> VerticalProfile:
    """Profile coefficients satisfying the lid conditions.

    The particular normalisation C1 = e^x (2Fk - m sqrt(q_g)(k eps + 2 omega)),
    C2 = -e^-x (2Fk + m sqrt(q_g)(k eps + 2 omega)) makes the lower lid
    condition hold identically; the upper one holds only on the dispersion
    curve, and a frequency off the curve is rejected here.
    """
    lam = wv.m * math.sqrt(p.q_g)
    x = 0.5 * p.B * lam
    om = omega.as_complex
    gen = 2.0 * p.F * wv.k
    osc = lam * (wv.k * p.eps + 2.0 * om)
    C1 = math.exp(x) * (gen - osc)
    C2 = -math.exp(-x) * (gen + osc)
    prof = VerticalProfile(C1=C1, C2=C2, decay=lam)
    low, up = boundary_residuals(wv, omega, p, C1, C2)
    if low > BOUNDARY_TOL or up > BOUNDARY_TOL:
        raise ValueError(
            f"frequency off the dispersion curve: lid residuals "
            f"(lower {low:.3e}, upper {up:.3e}) exceed {BOUNDARY_TOL:g}"
        )
    return prof


def build_mode(
    p: EadyParams,
    k: float,
    l: float = 0.0,
    eta: float = 0.01,
    branch: str = "growing",
) -> WaveMode:
    """Construct a complete normal mode for wavevector (k, l)."""
    wv = WaveVector.from_components(k, l)
    omega = solve_omega(wv, p, branch=branch)
    profile = boundary_coefficients(wv, omega, p)
    return WaveMode(params=p, wavevector=wv, omega=omega, profile=profile, eta=eta)
