"""Chynoweth-Sewell front construction for cylindrical solutions.

At each height the convex envelope of the two-variable generator
S'(., z) replaces its concave pocket by a common tangent chord.  The
tangency abscissas X1 < X2 and the shared slope x (the physical front
position) solve

    dS'/dX(X1) = dS'/dX(X2) = (S'(X2) - S'(X1)) / (X2 - X1),

and the stack of per-level chords over z is the front surface.  The
equal-area (Maxwell) rule and the Rankine-Hugoniot slope condition are
provided as checks on the construction.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from scipy.integrate import quad

from . import _kernels
from .errors import ConvergenceError
from .spectral import WaveMode
from .wavefield import (
    f_field,
    f_jet,
    period,
    pocket_center,
    sprime_values,
    sprime_z,
    wave_pack,
)

__all__ = [
    "FrontSection",
    "FrontSurface",
    "RHReport",
    "envelope_section",
    "hull_section",
    "equal_area_check",
    "front_surface",
    "rankine_hugoniot_check",
]

#: residual tolerance for the tangency system
TANGENCY_TOL = 1e-12
#: chords narrower than this are degenerate tips
DEGENERATE_WIDTH = 1e-6
#: absolute tolerance of the equal-area quadrature
QUAD_TOL = 1e-10


@dataclass(frozen=True)
class FrontSection:
    """Envelope chord of S'(., z) at one height: tangency points and slope."""

    z: float
    t: float
    X1: float
    X2: float
    x_front: float
    S_at_X1: float
    S_at_X2: float

    @property
    def width(self) -> float:
        return self.X2 - self.X1

    @property
    def degenerate(self) -> bool:
        return self.width < DEGENERATE_WIDTH


@dataclass(frozen=True)
class FrontSurface:
    """Sections stacked over a z-grid at fixed t, plus interior tip heights."""

    t: float
    sections: tuple
    tips: tuple

    def runs(self):
        """Contiguous groups of sections (by z ordering with uniform step)."""
        if not self.sections:
            return []
        zs = np.array([s.z for s in self.sections])
        dz = np.min(np.diff(zs)) if len(zs) > 1 else 0.0
        groups = [[self.sections[0]]]
        for s_prev, s_next in zip(self.sections, self.sections[1:]):
            if s_next.z - s_prev.z > 1.5 * dz:
                groups.append([])
            groups[-1].append(s_next)
        return groups


@dataclass(frozen=True)
class RHReport:
    """Front-slope check against the jump condition dx/dz = -[[Z]]/[[X]]."""

    max_rel_error: float
    z: np.ndarray
    lhs: np.ndarray
    rhs: np.ndarray


def _pocket_roots(mode: WaveMode, z: float, t: float, window, n_coarse=96):
    """Zeros of f at one level inside the window (inflection points of S').

    Pockets narrower than the coarse spacing (just after their birth) are
    recovered by polishing the grid minimum with Newton on df/dX and
    re-bracketing around it.
    """
    lo, hi = window
    pack = wave_pack(mode)
    Xc = np.linspace(lo, hi, n_coarse)
    fc = _kernels.f_grid(Xc, np.full_like(Xc, z), t, pack)
    idx = np.nonzero(fc[:-1] * fc[1:] < 0.0)[0]
    if idx.size < 2:
        xm = float(Xc[np.argmin(fc)])
        for _ in range(60):
            jet = f_jet(mode, xm, z, t)
            if abs(float(jet.f_XX)) < 1e-30:
                return None
            step = -float(jet.f_X) / float(jet.f_XX)
            xm += step
            if abs(step) < 1e-14:
                break
        fmin = float(f_field(mode, xm, z, t))
        if not fmin < 0.0:
            return None
        h = 2.0 * math.sqrt(-2.0 * fmin / float(f_jet(mode, xm, z, t).f_XX))
        a = np.array([xm - h, xm])
        b = np.array([xm, xm + h])
    else:
        a, b = Xc[idx], Xc[idx + 1]
    r, ok = _kernels.refine_roots(a, b, np.full(a.size, z), t, pack, tol=1e-13)
    if not ok.all():
        return None
    return np.sort(r)


def envelope_section(
    mode: WaveMode, z: float, t: float, window: tuple[float, float] | None = None
) -> FrontSection | None:
    """Common-tangent chord of S'(., z) at time t, or None when S' is convex.

    The two-point tangency system is solved by damped Newton seeded from
    the inflection points (zeros of f); on failure the dense lower-hull
    construction is used as a fallback before giving up.
    """
    if window is None:
        c = pocket_center(mode, z, t)
        per = period(mode)
        window = (c - per / 2, c + per / 2)
    roots = _pocket_roots(mode, z, t, window)
    if roots is None:
        return None
    x1r, x2r = roots[0], roots[-1]
    w = x2r - x1r
    pack = wave_pack(mode)
    tiltx = mode.params.F * mode.wavevector.l / mode.wavevector.m
    X1, X2, resid, ok = _kernels.envelope_solve(
        np.array([x1r - 0.5 * w]),
        np.array([x2r + 0.5 * w]),
        np.array([z]),
        t,
        pack,
        mode.params.q_g,
        tiltx,
        tol=TANGENCY_TOL,
        max_step=period(mode),
    )
    if ok[0] and window[0] < X1[0] < X2[0] < window[1]:
        return _build_section(mode, float(X1[0]), float(X2[0]), z, t)
    sec = hull_section(mode, z, t)
    if sec is not None:
        return sec
    raise ConvergenceError(
        f"tangency solve failed at z={z:g}, t={t:g}: seed bracket "
        f"({x1r - 0.5 * w:g}, {x2r + 0.5 * w:g}), residual {float(resid[0]):.3e}"
    )


def _build_section(mode, X1, X2, z, t):
    s, g = sprime_values(mode, np.array([X1, X2]), np.array([z, z]), t)
    return FrontSection(
        z=z,
        t=t,
        X1=X1,
        X2=X2,
        x_front=0.5 * (float(g[0]) + float(g[1])),
        S_at_X1=float(s[0]),
        S_at_X2=float(s[1]),
    )


def hull_section(
    mode: WaveMode,
    z: float,
    t: float,
    n_samples: int = 400001,
    span: float = 1.25,
) -> FrontSection | None:
    """Envelope chord extracted from a dense lower convex hull of S'(., z).

    Independent of the Newton path: samples the generator on a window of
    ``span`` periods around the concave pocket, builds the monotone-chain
    lower hull, and returns the bridging edge that spans the pocket.
    """
    c = pocket_center(mode, z, t)
    per = period(mode)
    Xs = np.linspace(c - span * per / 2, c + span * per / 2, n_samples)
    vals, _ = sprime_values(mode, Xs, np.full_like(Xs, z), t)
    hull = _kernels.lower_hull(Xs, vals)
    hx = Xs[hull]
    gaps = np.diff(hx)
    dx = Xs[1] - Xs[0]
    big = np.nonzero(gaps > 5 * dx)[0]
    if big.size == 0:
        return None
    # the pocket chord is the bridging edge that straddles the pocket center
    pick = None
    for j in big:
        if hx[j] <= c <= hx[j + 1]:
            pick = j
            break
    if pick is None:
        pick = big[np.argmax(gaps[big])]
    return _build_section(mode, float(hx[pick]), float(hx[pick + 1]), z, t)


def equal_area_check(section: FrontSection, mode: WaveMode) -> float:
    """Maxwell-rule residual: the loop integral of X dx along the fold curve.

    Evaluated as the quadrature of X * f(X, z, t) between the tangency
    points; vanishes exactly when the chord is a true common tangent.
    """
    if section.degenerate:
        return 0.0
    z = section.z
    t = section.t

    def integrand(X):
        return X * float(f_field(mode, X, z, t))

    val, _ = quad(
        integrand, section.X1, section.X2, epsabs=QUAD_TOL, epsrel=1e-12, limit=200
    )
    return float(val)


def front_surface(mode: WaveMode, t: float, n_levels: int = 512) -> FrontSurface:
    """Assemble envelope sections over a uniform z-grid at time t.

    Heights where the generator is convex carry no section; interior
    heights where the chord width collapses are recorded as tips (the
    projections of the cusp points).
    """
    p = mode.params
    z_grid = np.linspace(0.0, p.B, n_levels)
    sections = []
    for z in z_grid:
        sec = envelope_section(mode, float(z), t)
        if sec is not None and not sec.degenerate:
            sections.append(sec)
    tips = []
    zs = [s.z for s in sections]
    if sections:
        dz = z_grid[1] - z_grid[0]
        for lo, hi in _runs_bounds(zs, dz):
            if lo > 0.0 + 1e-12:
                tips.append(lo)
            if hi < p.B - 1e-12:
                tips.append(hi)
    return FrontSurface(t=t, sections=tuple(sections), tips=tuple(tips))


def _runs_bounds(zs, dz):
    bounds = []
    start = zs[0]
    prev = zs[0]
    for z in zs[1:]:
        if z - prev > 1.5 * dz:
            bounds.append((start, prev))
            start = z
        prev = z
    bounds.append((start, prev))
    return bounds


def rankine_hugoniot_check(
    surface: FrontSurface, mode: WaveMode, width_floor: float = 1e-2
) -> RHReport:
    """Compare the front slope dx/dz with the jump condition -[[Z]]/[[X]].

    The slope is a central difference of x_front over the section grid;
    [[X]] = X2 - X1 and [[Z]] = Z(X2) - Z(X1) with Z = -S_z.  Levels with
    |[[X]]| below ``width_floor`` (near tips) are excluded, as both jumps
    vanish there.
    """
    zs_all, lhs_all, rhs_all = [], [], []
    for run in surface.runs():
        if len(run) < 3:
            continue
        z = np.array([s.z for s in run])
        xf = np.array([s.x_front for s in run])
        X1 = np.array([s.X1 for s in run])
        X2 = np.array([s.X2 for s in run])
        dZ = -(sprime_z(mode, X2, z, surface.t) - sprime_z(mode, X1, z, surface.t))
        dX = X2 - X1
        lhs = (xf[2:] - xf[:-2]) / (z[2:] - z[:-2])
        rhs = -(dZ / dX)[1:-1]
        keep = dX[1:-1] > width_floor
        zs_all.append(z[1:-1][keep])
        lhs_all.append(lhs[keep])
        rhs_all.append(rhs[keep])
    if not zs_all:
        raise ValueError("surface has no contiguous run of >= 3 sections")
    zcat = np.concatenate(zs_all)
    lcat = np.concatenate(lhs_all)
    rcat = np.concatenate(rhs_all)
    rel = np.abs(lcat - rcat) / np.maximum(np.abs(rcat), 1e-12)
    return RHReport(max_rel_error=float(rel.max()), z=zcat, lhs=lcat, rhs=rcat)
