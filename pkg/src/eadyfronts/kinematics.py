"""Projection to physical space and reconstruction of the velocity field.

The projection of the solution manifold is (X, Y, z) -> (S_X, S_Y, z);
its Jacobian determinant is f, so the map folds where f <= 0.  Dropping
the interior of each front interval (X1, X2) restores single-valuedness,
and the velocity field is evaluated parametrically on what remains.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from scipy.optimize import brentq

from .errors import StratificationError
from .fronts import FrontSurface, front_surface
from .spectral import WaveMode
from .wavefield import eval_jet, period, pocket_center, _plain_partial

__all__ = [
    "PhaseSample",
    "ObservationWindow",
    "FrontTable",
    "Snapshot",
    "project",
    "multivalued_P",
    "vertical_velocity",
    "full_velocity",
    "velocity_snapshot",
    "default_window",
    "preimage_count",
]

#: guard on |S_zz| below which the isentropic division is refused
SZZ_GUARD = 1e-8


@dataclass(frozen=True)
class PhaseSample:
    """One point of the solution manifold with its physical image."""

    dual: tuple
    physical: tuple
    Z: float
    geo: tuple
    vel: tuple | None
    regular: bool


@dataclass(frozen=True)
class ObservationWindow:
    """Moving window of one spatial period following the developing front."""

    X0: float
    t0: float
    half_width: float = math.pi / 2
    drift: float = 0.5

    def center(self, t: float) -> float:
        return self.X0 + self.drift * (t - self.t0)

    def bounds(self, t: float) -> tuple[float, float]:
        c = self.center(t)
        return c - self.half_width, c + self.half_width


def default_window(mode: WaveMode) -> ObservationWindow:
    """Window anchored on the first cusp: X0 at the envelope minimum of the
    bottom lid at the first catastrophe time."""
    from .singularity import catastrophe_times

    ct = catastrophe_times(mode)
    wv = mode.wavevector
    return ObservationWindow(
        X0=pocket_center(mode, 0.0, ct.t_prime),
        t0=ct.t_prime,
        half_width=period(mode) / 2,
        drift=(wv.k / wv.m) * mode.params.eps / 2,
    )


class FrontTable:
    """Read-only per-height lookup of front intervals at fixed t.

    Intervals repeat with the spatial period; membership reduces X into
    the cell of the stored interval before comparing.
    """

    def __init__(self, surface: FrontSurface, mode: WaveMode):
        self.period = period(mode)
        self._runs = []
        for run in surface.runs():
            z = np.array([s.z for s in run])
            X1 = np.array([s.X1 for s in run])
            X2 = np.array([s.X2 for s in run])
            self._runs.append((z, X1, X2))

    @classmethod
    def build(cls, mode: WaveMode, t: float, n_levels: int = 256) -> "FrontTable":
        return cls(front_surface(mode, t, n_levels=n_levels), mode)

    def interval(self, z: float):
        """Interpolated (X1, X2) at height z, or None outside every run."""
        for zs, X1, X2 in self._runs:
            if zs[0] <= z <= zs[-1]:
                return float(np.interp(z, zs, X1)), float(np.interp(z, zs, X2))
        return None

    def excised(self, X: float, z: float) -> bool:
        iv = self.interval(z)
        if iv is None:
            return False
        x1, x2 = iv
        xr = x1 + (X - x1) % self.period
        return x1 < xr < x2


def project(
    mode: WaveMode, X, Y, z, t, front_table: FrontTable | None = None
) -> PhaseSample:
    """Physical image of a manifold point; positions only.

    ``regular`` is False when the point falls strictly inside a front
    interval at its height (the excised sheet).
    """
    jet = eval_jet(mode, X, Y, z, t)
    regular = True
    if front_table is not None:
        regular = not front_table.excised(float(X), float(z))
    return PhaseSample(
        dual=(X, Y, z),
        physical=(jet.S_X, jet.S_Y, z),
        Z=-jet.S_z,
        geo=(jet.S_Y - Y, X - jet.S_X),
        vel=None,
        regular=regular,
    )


def multivalued_P(mode: WaveMode, X_grid, z_grid, Y: float, t: float):
    """Parametric sampling (x, z, P) of the generally multivalued geopotential.

    P = X x + Y y - S with (x, y) the projected positions; for times past
    the first catastrophe some physical x carry three branches.
    """
    p = mode.params
    Xm, Zm = np.meshgrid(np.asarray(X_grid, float), np.asarray(z_grid, float), indexing="ij")
    eta = mode.eta
    s1 = eta * np.real(_plain_partial(mode, Xm, Y, Zm, t))
    s1x = eta * np.real(_plain_partial(mode, Xm, Y, Zm, t, a=1))
    s1y = eta * np.real(_plain_partial(mode, Xm, Y, Zm, t, b=1))
    S = Xm**2 / 2 + Y**2 / 2 - p.q_g * Zm**2 / 2 + p.F * Y * Zm - Zm + s1
    x = Xm + s1x
    y = Y + p.F * Zm + s1y
    P = Xm * x + Y * y - S
    return x, Zm, P


def vertical_velocity(mode: WaveMode, X, Y, z, t) -> float:
    """Vertical velocity from the isentropic condition,
    w = -(S_zt + u_g S_Xz + v_g S_Yz) / S_zz."""
    jet = eval_jet(mode, X, Y, z, t)
    return _w_from_jet(jet, X, Y)


def _w_from_jet(jet, X, Y):
    if abs(float(jet.S_zz)) <= SZZ_GUARD:
        raise StratificationError(
            f"stratification degenerates: |S_zz| = {abs(float(jet.S_zz)):.3e} <= {SZZ_GUARD:g}"
        )
    u_g = jet.S_Y - Y
    v_g = X - jet.S_X
    return -(jet.S_zt + u_g * jet.S_Xz + v_g * jet.S_Yz) / jet.S_zz


def full_velocity(mode: WaveMode, X, Y, z, t) -> tuple[float, float, float]:
    """Velocity (u, v, w) carried by the wave at a manifold point."""
    jet = eval_jet(mode, X, Y, z, t)
    w = _w_from_jet(jet, X, Y)
    u_g = jet.S_Y - Y
    v_g = X - jet.S_X
    u = jet.S_Xt + u_g * jet.S_XX + v_g * jet.S_XY + w * jet.S_Xz
    v = jet.S_Yt + u_g * jet.S_XY + v_g * jet.S_YY + w * jet.S_Yz
    return u, v, w


@dataclass(frozen=True)
class Snapshot:
    """Regularised velocity-field samples over an observation window."""

    t: float
    y: float
    window: ObservationWindow
    x: np.ndarray
    z: np.ndarray
    u: np.ndarray
    w: np.ndarray
    phi: np.ndarray
    regular: np.ndarray
    X: np.ndarray


def velocity_snapshot(
    mode: WaveMode,
    t: float,
    window: ObservationWindow | None = None,
    y: float = 0.0,
    nx: int = 121,
    nz: int = 61,
    n_front_levels: int = 256,
    keep_excised: bool = False,
) -> Snapshot:
    """Sample (x, z, u, w, phi) on the regularised manifold over the window.

    Points inside a front interval are dropped unless ``keep_excised``;
    phi is the geopotential P - x^2/2 - y^2/2.  Restricted to waves with
    l = 0 (rotate first otherwise).
    """
    if mode.wavevector.l != 0.0:
        raise ValueError("velocity_snapshot expects an X-travelling wave (l = 0)")
    if window is None:
        window = default_window(mode)
    table = FrontTable.build(mode, t, n_levels=n_front_levels)
    lo, hi = window.bounds(t)
    Xs = np.linspace(lo, hi, nx)
    zs = np.linspace(0.0, mode.params.B, nz)
    p = mode.params
    C = p.F  # meridional tilt of the l = 0 wave
    xs, zss, us, ws, phis, regs, Xss = [], [], [], [], [], [], []
    for z in zs:
        Y = y - C * z
        for X in Xs:
            reg = not table.excised(float(X), float(z))
            if not reg and not keep_excised:
                continue
            jet = eval_jet(mode, X, Y, z, t)
            w = _w_from_jet(jet, X, Y)
            u_g = jet.S_Y - Y
            v_g = X - jet.S_X
            u = jet.S_Xt + u_g * jet.S_XX + v_g * jet.S_XY + w * jet.S_Xz
            xphys = jet.S_X
            yphys = jet.S_Y
            P = X * xphys + Y * yphys - jet.value
            phis.append(P - xphys**2 / 2 - yphys**2 / 2)
            xs.append(xphys)
            zss.append(z)
            us.append(u)
            ws.append(w)
            regs.append(reg)
            Xss.append(X)
    return Snapshot(
        t=t,
        y=y,
        window=window,
        x=np.array(xs),
        z=np.array(zss),
        u=np.array(us),
        w=np.array(ws),
        phi=np.array(phis),
        regular=np.array(regs, dtype=bool),
        X=np.array(Xss),
    )


def preimage_count(
    mode: WaveMode,
    x: float,
    z: float,
    t: float,
    window: tuple[float, float],
    front_table: FrontTable | None = None,
    n_scan: int = 2001,
) -> int:
    """Number of manifold preimages of physical x at height z inside the window.

    Counts bracketed roots of S_X(X) = x; with a front table the excised
    intervals are skipped, which restores a single-valued projection.
    """
    lo, hi = window
    Xs = np.linspace(lo, hi, n_scan)
    vals = Xs + mode.eta * np.real(_plain_partial(mode, Xs, 0.0, z, t, a=1)) - x
    roots = list(Xs[vals == 0.0])
    for i in np.nonzero(vals[:-1] * vals[1:] < 0.0)[0]:
        roots.append(
            brentq(
                lambda X: X + mode.eta * float(np.real(_plain_partial(mode, X, 0.0, z, t, a=1))) - x,
                Xs[i],
                Xs[i + 1],
                xtol=1e-13,
            )
        )
    if front_table is not None:
        roots = [r for r in roots if not front_table.excised(r, z)]
    return len(roots)
