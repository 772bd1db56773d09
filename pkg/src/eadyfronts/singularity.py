"""Singular locus of the projected solution manifold and catastrophe times.

The locus at time t is the zero set of f(X, z, t) = S_XX inside the
strip 0 <= z <= B, independent of the transverse coordinate.  Points are
folds where the zero crossing is transversal in X, cusps where df/dX
also vanishes, and higher order where the full gradient of f degenerates
(two cusps coalescing).
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from scipy.optimize import brentq

from . import _kernels
from .errors import ConvergenceError
from .spectral import WaveMode
from .wavefield import envelope_margin, f_jet, period, pocket_center, wave_pack

__all__ = [
    "KIND_FOLD",
    "KIND_CUSP",
    "KIND_HIGHER",
    "SingularPoint",
    "SingularCurve",
    "CatastropheTimes",
    "singular_locus",
    "classify_point",
    "catastrophe_times",
    "wrap_position",
]

KIND_FOLD = "A2_fold"
KIND_CUSP = "A3_cusp"
KIND_HIGHER = "higher_order"

TOPO_EMPTY = "empty"
TOPO_TWO_ARCS = "two_arcs_with_cusps"
TOPO_MERGED = "merged"
TOPO_TWO_FOLDS = "two_fold_arcs"

#: membership tolerance |f| for points on the locus
F_TOL = 1e-10
#: gradient tolerance separating cusps from folds
GRAD_TOL = 1e-6
#: level width below which a pair of roots counts as a grazing contact
MERGE_WIDTH = 1e-4


@dataclass(frozen=True)
class SingularPoint:
    X: float
    z: float
    t: float
    kind: str


@dataclass(frozen=True)
class SingularCurve:
    """Locus at fixed t: points ordered along each arc, plus a topology tag."""

    t: float
    points: tuple
    topology: str
    arcs: tuple

    def __len__(self):
        return len(self.points)


@dataclass(frozen=True)
class CatastropheTimes:
    """First (lid) and second (mid-height) tangency times and positions.

    Positions are reduced modulo the spatial period into the window
    [period, 2*period), the representative conventionally quoted for the
    reference wave.
    """

    t_prime: float
    t_second: float
    X_prime: float
    X_second: float

    def as_dict(self) -> dict:
        return {
            "t_prime": self.t_prime,
            "t_double_prime": self.t_second,
            "X_prime_mod_pi": self.X_prime,
            "X_double_prime_mod_pi": self.X_second,
        }


def wrap_position(X: float, per: float) -> float:
    """Reduce a position modulo ``per`` into [per, 2*per)."""
    return (X % per) + per


def classify_point(
    mode: WaveMode,
    X: float,
    z: float,
    t: float,
    tol: float = 1e-8,
    tol_grad: float = GRAD_TOL,
) -> str:
    """Classify a singular point as fold, cusp, or higher order.

    Raises ValueError when |f| exceeds ``tol`` (not a singular point).
    A cusp additionally has df/dX = 0; the tag ``higher_order`` marks a
    degenerate cusp, where on top of that either d2f/dX2 or df/dz
    vanishes (the latter is how two cusps coalesce for a single
    harmonic, whose d2f/dX2 stays pinned at m^2 on tangency points).
    """
    jet = f_jet(mode, X, z, t)
    if abs(float(jet.f)) >= tol:
        raise ValueError(f"not a singular point: |f| = {abs(float(jet.f)):.3e} >= {tol:g}")
    if abs(float(jet.f_X)) >= tol_grad:
        return KIND_FOLD
    if abs(float(jet.f_XX)) < tol_grad or abs(float(jet.f_z)) < tol_grad:
        return KIND_HIGHER
    return KIND_CUSP


def _default_window(mode: WaveMode, t: float):
    p = mode.params
    centers = [pocket_center(mode, zq, t) for zq in (0.0, p.B / 2, p.B)]
    c = float(np.mean(centers))
    per = period(mode)
    return c - per / 2, c + per / 2


def _level_roots(mode: WaveMode, t: float, z_levels, window, n_coarse=96, tol=1e-12):
    """Refined zeros of f per z-level inside the window.

    Seeds come from sign changes on a coarse grid; each bracket is then
    polished by safeguarded Newton to |f| < tol.
    """
    lo, hi = window
    pack = wave_pack(mode)
    Xc = np.linspace(lo, hi, n_coarse)
    Za, Xa = np.meshgrid(z_levels, Xc, indexing="ij")
    fc = _kernels.f_grid(Xa, Za, t, pack)
    roots = []
    for i in range(len(z_levels)):
        row = fc[i]
        sign_change = np.nonzero(row[:-1] * row[1:] < 0.0)[0]
        exact = np.nonzero(row == 0.0)[0]
        if sign_change.size == 0 and exact.size == 0:
            roots.append(np.empty(0))
            continue
        a = Xc[sign_change]
        b = Xc[sign_change + 1]
        zl = np.full(a.size, z_levels[i])
        r, ok = _kernels.refine_roots(a, b, zl, t, pack, tol=tol)
        vals = list(r[ok])
        vals.extend(Xc[exact])
        roots.append(np.sort(np.asarray(vals)))
    return roots


def _refine_cusp(mode: WaveMode, X0: float, z0: float, t: float, maxit=60):
    """Newton on (f, f_X) = 0 in the (X, z) plane to locate an arc tip."""
    X, z = float(X0), float(z0)
    for _ in range(maxit):
        jet = f_jet(mode, X, z, t)
        r = np.array([float(jet.f), float(jet.f_X)])
        if np.abs(r).max() < 1e-13:
            return X, z
        J = np.array(
            [[float(jet.f_X), float(jet.f_z)], [float(jet.f_XX), float(jet.f_Xz)]]
        )
        try:
            step = np.linalg.solve(J, -r)
        except np.linalg.LinAlgError:
            raise ConvergenceError(f"cusp refinement stalled near ({X0:g}, {z0:g})")
        X += step[0]
        z += step[1]
    jet = f_jet(mode, X, z, t)
    if max(abs(float(jet.f)), abs(float(jet.f_X))) > 1e-10:
        raise ConvergenceError(
            f"cusp refinement did not converge from ({X0:g}, {z0:g}) at t={t:g}"
        )
    return X, z


def singular_locus(
    mode: WaveMode,
    t: float,
    window: tuple[float, float] | None = None,
    n_levels: int = 512,
) -> SingularCurve:
    """Trace the zero set of f at time t over one spatial period.

    Returns an empty curve when f > 0 throughout the window (before the
    first catastrophe time).  Otherwise points are grouped into arcs and
    ordered by arc length, with tips refined to the exact tangency.
    """
    p = mode.params
    if window is None:
        window = _default_window(mode, t)
    z_levels = np.linspace(0.0, p.B, n_levels)
    roots = _level_roots(mode, t, z_levels, window)
    has = np.array([r.size >= 2 for r in roots])
    if not has.any():
        return SingularCurve(t=t, points=(), topology=TOPO_EMPTY, arcs=())

    def classify(X, z):
        try:
            return classify_point(mode, X, z, t, tol=1e-6)
        except ValueError:
            return KIND_FOLD

    # contiguous runs of levels that carry roots
    runs = []
    start = None
    for i, h in enumerate(has):
        if h and start is None:
            start = i
        elif not h and start is not None:
            runs.append((start, i - 1))
            start = None
    if start is not None:
        runs.append((start, len(has) - 1))

    arcs = []
    if len(runs) == 2 and runs[0][0] == 0 and runs[1][1] == len(has) - 1:
        topology = TOPO_TWO_ARCS
        for lo_i, hi_i in runs:
            left = [
                SingularPoint(roots[i][0], z_levels[i], t, classify(roots[i][0], z_levels[i]))
                for i in range(lo_i, hi_i + 1)
            ]
            right = [
                SingularPoint(roots[i][-1], z_levels[i], t, classify(roots[i][-1], z_levels[i]))
                for i in range(lo_i, hi_i + 1)
            ]
            tip_i = hi_i if lo_i == 0 else lo_i
            Xt, zt = _refine_cusp(
                mode, float(np.mean(roots[tip_i])), z_levels[tip_i], t
            )
            tip = SingularPoint(Xt, zt, t, classify_point(mode, Xt, zt, t, tol=1e-6))
            if lo_i == 0:  # arc rooted at the bottom lid, tip on top
                arcs.append(tuple(left + [tip] + right[::-1]))
            else:  # arc rooted at the top lid, tip below
                arcs.append(tuple(right[::-1] + [tip] + left))
    elif len(runs) == 1 and has.all():
        widths = np.array([r[-1] - r[0] for r in roots])
        topology = TOPO_MERGED if widths.min() < MERGE_WIDTH else TOPO_TWO_FOLDS
        left = tuple(
            SingularPoint(roots[i][0], z_levels[i], t, classify(roots[i][0], z_levels[i]))
            for i in range(len(z_levels))
        )
        right = tuple(
            SingularPoint(roots[i][-1], z_levels[i], t, classify(roots[i][-1], z_levels[i]))
            for i in range(len(z_levels))
        )
        arcs = [left, right]
    else:
        # grazing/transition configurations: report raw level points
        topology = TOPO_MERGED
        pts = []
        for i in range(len(z_levels)):
            for Xr in roots[i]:
                pts.append(SingularPoint(Xr, z_levels[i], t, classify(Xr, z_levels[i])))
        arcs = [tuple(pts)]

    points = tuple(pt for arc in arcs for pt in arc)
    return SingularCurve(t=t, points=points, topology=topology, arcs=tuple(arcs))


def catastrophe_times(mode: WaveMode) -> CatastropheTimes:
    """Tangency times of the wave envelope at the lids and at mid-height.

    The first time solves min_X f(X, z=0, t) = 0, the second the same at
    z = B/2; both are found by a bracketed root solve of the envelope
    condition in t.  Only growing modes develop singularities.
    """
    om_i = mode.omega.im
    if om_i <= 0 or mode.eta <= 0:
        raise ValueError(
            "catastrophe times require a growing mode (omega_im > 0) with eta > 0"
        )
    p = mode.params
    per = period(mode)

    def solve_level(z):
        m0 = envelope_margin(mode, z, 0.0)
        if m0 >= 1.0:
            raise ValueError("envelope already tangent at t = 0; reduce eta")
        t_hi = (math.log(1.0 / m0)) / om_i + 1.0
        t_star = brentq(
            lambda tt: 1.0 - envelope_margin(mode, z, tt), 0.0, t_hi, xtol=1e-12
        )
        return t_star, pocket_center(mode, z, t_star)

    t1, X1 = solve_level(0.0)
    t1b, _ = solve_level(p.B)
    # the first tangency may occur at either lid; keep the earlier one
    if t1b < t1 - 1e-12:
        t1, X1 = solve_level(p.B)
    t2, X2 = solve_level(p.B / 2)
    return CatastropheTimes(
        t_prime=t1,
        t_second=t2,
        X_prime=wrap_position(X1, per),
        X_second=wrap_position(X2, per),
    )
