"""Dimensionless parameters, scalings, and the sheared basic state.

Everything downstream of this module works in dimensionless variables:
time is scaled by 1/f, horizontal length by L, vertical length by
f^2 L^2 / g, geopotential by f^2 L^2, and potential temperature by its
reference value.  Dimensional input is accepted only here.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

__all__ = [
    "DimensionalScales",
    "EadyParams",
    "params_from_scales",
    "basic_state_P0",
    "basic_state_S0",
    "default_params",
]

_REL_TOL = 1e-9


@dataclass(frozen=True)
class DimensionalScales:
    """Dimensional constants of the sheared, stratified basic flow.

    Parameters
    ----------
    f : float
        Coriolis parameter (1/s).
    g : float
        Gravitational acceleration (m/s^2).
    theta0 : float
        Reference potential temperature (K).
    N : float
        Buoyancy frequency (1/s).  Must equal g/(f*L) under the scaling
        adopted here.
    U : float
        Top-lid zonal wind (m/s).
    H : float
        Domain height (m).
    L : float
        Horizontal length scale (m).
    """

    f: float
    g: float
    theta0: float
    N: float
    U: float
    H: float
    L: float

    def __post_init__(self):
        for name in ("f", "g", "theta0", "N", "H", "L"):
            if getattr(self, name) <= 0:
                raise ValueError(f"scale {name!r} must be strictly positive")
        if self.U < 0:
            raise ValueError("scale 'U' must be non-negative")
        n_ref = self.g / (self.f * self.L)
        if abs(self.N - n_ref) > _REL_TOL * n_ref:
            raise ValueError(
                f"inconsistent buoyancy frequency: N={self.N:g} but "
                f"g/(f*L)={n_ref:g}; the nondimensionalisation requires them equal"
            )


@dataclass(frozen=True)
class EadyParams:
    """Dimensionless numbers of the basic state.

    F is the Froude number U/(N*H), B the Burger number N*H/(f*L), eps the
    Rossby number U/(f*L) = F*B, and q_g = 1 - F^2 the (constant) potential
    vorticity.  Instances should be built with :meth:`from_froude_burger`
    or :func:`params_from_scales`; q_g and eps are stored rather than
    recomputed so there is a single source of truth.
    """

    F: float
    B: float
    eps: float
    q_g: float

    def __post_init__(self):
        if self.B <= 0:
            raise ValueError("Burger number B must be strictly positive")
        if self.F < 0:
            raise ValueError("Froude number F must be non-negative")
        if self.q_g <= 0:
            raise ValueError(
                f"potential vorticity q_g = 1 - F^2 = {self.q_g:g} is not positive: "
                f"F = {self.F:g} >= 1 (supercritical shear)"
            )
        if abs(self.eps - self.F * self.B) > _REL_TOL * max(1.0, abs(self.eps)):
            raise ValueError("inconsistent Rossby number: eps must equal F*B")
        if abs(self.q_g - (1.0 - self.F**2)) > _REL_TOL:
            raise ValueError("inconsistent potential vorticity: q_g must equal 1 - F^2")

    @classmethod
    def from_froude_burger(cls, F: float, B: float) -> "EadyParams":
        """Build validated parameters from the Froude and Burger numbers."""
        return cls(F=F, B=B, eps=F * B, q_g=1.0 - F * F)

    def as_dict(self) -> dict:
        return {"F": self.F, "B": self.B, "eps": self.eps, "q_g": self.q_g}


def params_from_scales(scales: DimensionalScales) -> EadyParams:
    """Reduce dimensional constants to the dimensionless parameter set.

    Raises
    ------
    ValueError
        If the implied Froude number reaches 1, i.e. the shear is strong
        enough that q_g = 1 - F^2 <= 0.
    """
    F = scales.U / (scales.N * scales.H)
    B = scales.N * scales.H / (scales.f * scales.L)
    if F >= 1.0:
        raise ValueError(
            f"supercritical shear: F = U/(N H) = {F:g} >= 1 gives q_g <= 0"
        )
    return EadyParams(F=F, B=B, eps=scales.U / (scales.f * scales.L), q_g=1.0 - F * F)


def default_params() -> EadyParams:
    """The reference parameter choice F = 1/sqrt(2), B = sqrt(2)."""
    return EadyParams.from_froude_burger(1.0 / math.sqrt(2.0), math.sqrt(2.0))


def basic_state_P0(x, y, z, p: EadyParams):
    """Geopotential of the unperturbed state, x^2/2 + y^2/2 + z^2/2 - F*y*z + z."""
    return x * x / 2 + y * y / 2 + z * z / 2 - p.F * y * z + z


def basic_state_S0(X, Y, z, p: EadyParams):
    """Dual potential of the unperturbed state, X^2/2 + Y^2/2 - q_g z^2/2 + F*Y*z - z."""
    return X * X / 2 + Y * Y / 2 - p.q_g * z * z / 2 + p.F * Y * z - z
