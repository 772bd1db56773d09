"""Hot numerical kernels, JIT-compiled with numba by default.

Set ``EADYFRONTS_NUMBA=0`` to select the pure-numpy fallback lane (the
loop kernels then run as plain Python and the grid evaluators as
vectorised numpy).  ``benchmarks/bench_kernels.py`` compares the lanes.

All kernels evaluate a single unidirectional wave in its propagation
frame.  The wave enters through the scalars

    keff   wavenumber along the propagation axis
    lam    vertical decay rate of the profile
    c1,c2  complex profile coefficients
    eta    perturbation amplitude
    om     complex frequency in the co-moving frame
    shift  co-moving frame drift rate (position offset = shift * t)
    zmid   mid-height of the domain (profile argument is z - zmid)

so the perturbation part of the generator is
eta * Re[(c1*e^(lam*(z-zmid)) + c2*e^(-lam*(z-zmid))) * e^(i*(keff*(X-shift*t)-om*t))].
"""

from __future__ import annotations

import os

import numpy as np

__all__ = [
    "NUMBA_ENABLED",
    "f_grid",
    "f_jet_grid",
    "sprime_grid",
    "refine_roots",
    "lower_hull",
    "envelope_solve",
]

NUMBA_ENABLED = os.environ.get("EADYFRONTS_NUMBA", "1").lower() not in ("0", "false", "off")
if NUMBA_ENABLED:
    try:
        from numba import njit as _njit
    except ImportError:  # pragma: no cover - numba is a hard dependency
        NUMBA_ENABLED = False

IMPL_NAME = "numba" if NUMBA_ENABLED else "numpy"


def _jit(fn):
    if NUMBA_ENABLED:
        return _njit(cache=True)(fn)
    return fn


# ---------------------------------------------------------------------------
# numpy lane: vectorised grid evaluators
# ---------------------------------------------------------------------------

def _np_wave(X, z, t, keff, lam, c1, c2, om, shift, zmid):
    """Complex carriers (psi*E, psi'*E) on arrays."""
    zt = z - zmid
    E = np.exp(1j * (keff * (X - shift * t) - om * t))
    ep = np.exp(lam * zt)
    em = np.exp(-lam * zt)
    w0 = (c1 * ep + c2 * em) * E
    w1 = lam * (c1 * ep - c2 * em) * E
    return w0, w1


def _np_f_grid(X, z, t, keff, lam, c1, c2, eta, om, shift, zmid):
    w0, _ = _np_wave(X, z, t, keff, lam, c1, c2, om, shift, zmid)
    return 1.0 - eta * keff**2 * w0.real


def _np_f_jet_grid(X, z, t, keff, lam, c1, c2, eta, om, shift, zmid):
    w0, w1 = _np_wave(X, z, t, keff, lam, c1, c2, om, shift, zmid)
    k2 = keff * keff
    f = 1.0 - eta * k2 * w0.real
    fX = eta * k2 * keff * w0.imag
    fz = -eta * k2 * w1.real
    fXX = eta * k2 * k2 * w0.real
    fXz = eta * k2 * keff * w1.imag
    fzz = -eta * k2 * lam * lam * w0.real
    return f, fX, fz, fXX, fXz, fzz


def _np_sprime_grid(X, z, t, keff, lam, c1, c2, eta, om, shift, zmid, qg, tiltx):
    w0, _ = _np_wave(X, z, t, keff, lam, c1, c2, om, shift, zmid)
    val = X * X / 2 - qg * z * z / 2 - z + tiltx * X * z + eta * w0.real
    slope = X + tiltx * z - eta * keff * w0.imag
    return val, slope


# ---------------------------------------------------------------------------
# loop lane: scalar kernels, JIT-compiled when numba is enabled
# ---------------------------------------------------------------------------

@_jit
def _loop_f_jet_grid(X, z, t, keff, lam, c1, c2, eta, om, shift, zmid):
    n = X.size
    f = np.empty(n)
    fX = np.empty(n)
    fz = np.empty(n)
    fXX = np.empty(n)
    fXz = np.empty(n)
    fzz = np.empty(n)
    k2 = keff * keff
    for i in range(n):
        zt = z[i] - zmid
        E = np.exp(1j * (keff * (X[i] - shift * t) - om * t))
        ep = np.exp(lam * zt)
        em = np.exp(-lam * zt)
        w0 = (c1 * ep + c2 * em) * E
        w1 = lam * (c1 * ep - c2 * em) * E
        f[i] = 1.0 - eta * k2 * w0.real
        fX[i] = eta * k2 * keff * w0.imag
        fz[i] = -eta * k2 * w1.real
        fXX[i] = eta * k2 * k2 * w0.real
        fXz[i] = eta * k2 * keff * w1.imag
        fzz[i] = -eta * k2 * lam * lam * w0.real
    return f, fX, fz, fXX, fXz, fzz


@_jit
def _loop_f_grid(X, z, t, keff, lam, c1, c2, eta, om, shift, zmid):
    n = X.size
    f = np.empty(n)
    k2 = keff * keff
    for i in range(n):
        zt = z[i] - zmid
        E = np.exp(1j * (keff * (X[i] - shift * t) - om * t))
        w0 = (c1 * np.exp(lam * zt) + c2 * np.exp(-lam * zt)) * E
        f[i] = 1.0 - eta * k2 * w0.real
    return f


@_jit
def _loop_sprime_grid(X, z, t, keff, lam, c1, c2, eta, om, shift, zmid, qg, tiltx):
    n = X.size
    val = np.empty(n)
    slope = np.empty(n)
    for i in range(n):
        zt = z[i] - zmid
        E = np.exp(1j * (keff * (X[i] - shift * t) - om * t))
        w0 = (c1 * np.exp(lam * zt) + c2 * np.exp(-lam * zt)) * E
        val[i] = X[i] * X[i] / 2 - qg * z[i] * z[i] / 2 - z[i] + tiltx * X[i] * z[i] + eta * w0.real
        slope[i] = X[i] + tiltx * z[i] - eta * keff * w0.imag
    return val, slope


@_jit
def _loop_refine_roots(a, b, z, t, keff, lam, c1, c2, eta, om, shift, zmid, tol, maxit):
    """Safe Newton on f within sign-changing brackets [a[i], b[i]] per level."""
    n = a.size
    root = np.empty(n)
    ok = np.zeros(n, dtype=np.bool_)
    k2 = keff * keff
    for i in range(n):
        lo = a[i]
        hi = b[i]
        zt = z[i] - zmid
        ep = c1 * np.exp(lam * zt)
        em = c2 * np.exp(-lam * zt)
        ph = np.exp(1j * (-keff * shift * t - om * t))
        w = (ep + em) * ph
        flo = 1.0 - eta * k2 * (w * np.exp(1j * keff * lo)).real
        x = 0.5 * (lo + hi)
        for _ in range(maxit):
            wx = w * np.exp(1j * keff * x)
            fx = 1.0 - eta * k2 * wx.real
            if abs(fx) < tol:
                ok[i] = True
                break
            gx = eta * k2 * keff * wx.imag
            moved = False
            if gx != 0.0:
                xn = x - fx / gx
                if lo < xn < hi:
                    if (fx > 0.0) == (flo > 0.0):
                        lo = x
                    else:
                        hi = x
                    x = xn
                    moved = True
            if not moved:
                if (fx > 0.0) == (flo > 0.0):
                    lo = x
                else:
                    hi = x
                x = 0.5 * (lo + hi)
        root[i] = x
    return root, ok


@_jit
def _loop_lower_hull(xs, ys):
    """Monotone-chain lower hull of points sorted by xs; returns vertex indices."""
    n = xs.size
    hull = np.empty(n, dtype=np.int64)
    m = 0
    for i in range(n):
        while m >= 2:
            i1 = hull[m - 2]
            i2 = hull[m - 1]
            cross = (xs[i2] - xs[i1]) * (ys[i] - ys[i1]) - (ys[i2] - ys[i1]) * (xs[i] - xs[i1])
            if cross <= 0.0:
                m -= 1
            else:
                break
        hull[m] = i
        m += 1
    return hull[:m].copy()


@_jit
def _loop_envelope_solve(X1, X2, z, t, keff, lam, c1, c2, eta, om, shift, zmid,
                         qg, tiltx, tol, maxit, max_step):
    """Damped Newton on the common-tangent system per level.

    Unknowns per level are the tangency abscissas (X1, X2); residuals are
    the slope mismatches against the chord.  Steps are clamped so the
    ordering X1 < X2 survives and no step exceeds max_step.
    """
    n = X1.size
    o1 = np.empty(n)
    o2 = np.empty(n)
    resid = np.empty(n)
    ok = np.zeros(n, dtype=np.bool_)
    k2 = keff * keff
    for i in range(n):
        x1 = X1[i]
        x2 = X2[i]
        zt = z[i] - zmid
        ep = c1 * np.exp(lam * zt)
        em = c2 * np.exp(-lam * zt)
        ph = np.exp(1j * (-keff * shift * t - om * t))
        w = (ep + em) * ph
        zz = z[i]
        base = -qg * zz * zz / 2 - zz
        r = 1e300
        for _ in range(maxit):
            wa = w * np.exp(1j * keff * x1)
            wb = w * np.exp(1j * keff * x2)
            s1 = x1 * x1 / 2 + base + tiltx * x1 * zz + eta * wa.real
            s2 = x2 * x2 / 2 + base + tiltx * x2 * zz + eta * wb.real
            g1 = x1 + tiltx * zz - eta * keff * wa.imag
            g2 = x2 + tiltx * zz - eta * keff * wb.imag
            f1 = 1.0 - eta * k2 * wa.real
            f2 = 1.0 - eta * k2 * wb.real
            d = x2 - x1
            chord = (s2 - s1) / d
            r1 = g1 - chord
            r2 = g2 - chord
            r = max(abs(r1), abs(r2))
            if r < tol:
                ok[i] = True
                break
            j11 = f1 + r1 / d
            j12 = -r2 / d
            j21 = r1 / d
            j22 = f2 - r2 / d
            det = j11 * j22 - j12 * j21
            if det == 0.0:
                break
            d1 = (j12 * r2 - j22 * r1) / det
            d2 = (j21 * r1 - j11 * r2) / det
            s = 1.0
            big = max(abs(d1), abs(d2))
            if big > max_step:
                s = max_step / big
            shrink = d1 - d2
            if shrink > 0.0 and s * shrink > 0.9 * d:
                s = 0.9 * d / shrink
            x1 += s * d1
            x2 += s * d2
        o1[i] = x1
        o2[i] = x2
        resid[i] = r
    return o1, o2, resid, ok


# ---------------------------------------------------------------------------
# numpy-lane counterparts of the loop kernels (vectorised where possible)
# ---------------------------------------------------------------------------

def _np_refine_roots(a, b, z, t, keff, lam, c1, c2, eta, om, shift, zmid, tol, maxit):
    lo = a.copy()
    hi = b.copy()
    flo = _np_f_grid(lo, z, t, keff, lam, c1, c2, eta, om, shift, zmid)
    x = 0.5 * (lo + hi)
    ok = np.zeros(a.size, dtype=bool)
    for _ in range(maxit):
        f, fX = _np_f_jet_grid(x, z, t, keff, lam, c1, c2, eta, om, shift, zmid)[:2]
        ok = np.abs(f) < tol
        if ok.all():
            break
        same = (f > 0) == (flo > 0)
        lo = np.where(same & ~ok, x, lo)
        hi = np.where(~same & ~ok, x, hi)
        with np.errstate(divide="ignore", invalid="ignore"):
            xn = x - f / fX
        inside = (xn > lo) & (xn < hi) & np.isfinite(xn)
        x = np.where(ok, x, np.where(inside, xn, 0.5 * (lo + hi)))
    return x, ok


def _np_envelope_solve(X1, X2, z, t, keff, lam, c1, c2, eta, om, shift, zmid,
                       qg, tiltx, tol, maxit, max_step):
    x1 = X1.copy()
    x2 = X2.copy()
    ok = np.zeros(x1.size, dtype=bool)
    r = np.full(x1.size, np.inf)
    for _ in range(maxit):
        s1, g1 = _np_sprime_grid(x1, z, t, keff, lam, c1, c2, eta, om, shift, zmid, qg, tiltx)
        s2, g2 = _np_sprime_grid(x2, z, t, keff, lam, c1, c2, eta, om, shift, zmid, qg, tiltx)
        f1 = _np_f_grid(x1, z, t, keff, lam, c1, c2, eta, om, shift, zmid)
        f2 = _np_f_grid(x2, z, t, keff, lam, c1, c2, eta, om, shift, zmid)
        d = x2 - x1
        chord = (s2 - s1) / d
        r1 = g1 - chord
        r2 = g2 - chord
        r = np.maximum(np.abs(r1), np.abs(r2))
        ok = r < tol
        if ok.all():
            break
        j11 = f1 + r1 / d
        j12 = -r2 / d
        j21 = r1 / d
        j22 = f2 - r2 / d
        det = j11 * j22 - j12 * j21
        safe = det != 0
        det = np.where(safe, det, 1.0)
        d1 = np.where(safe, (j12 * r2 - j22 * r1) / det, 0.0)
        d2 = np.where(safe, (j21 * r1 - j11 * r2) / det, 0.0)
        s = np.ones_like(d)
        big = np.maximum(np.abs(d1), np.abs(d2))
        np.minimum(s, np.where(big > max_step, max_step / np.maximum(big, 1e-300), 1.0), out=s)
        shrink = d1 - d2
        bad = (shrink > 0) & (s * shrink > 0.9 * d)
        s = np.where(bad, 0.9 * d / np.where(bad, shrink, 1.0), s)
        upd = ~ok
        x1 = np.where(upd, x1 + s * d1, x1)
        x2 = np.where(upd, x2 + s * d2, x2)
    return x1, x2, r, ok


# ---------------------------------------------------------------------------
# dispatch
# ---------------------------------------------------------------------------

def _as1d(*arrays):
    bc = np.broadcast_arrays(*[np.asarray(a, dtype=np.float64) for a in arrays])
    shape = bc[0].shape
    return [np.ascontiguousarray(a).ravel() for a in bc], shape


def f_grid(X, z, t, pack):
    (Xf, zf), shape = _as1d(X, z)
    impl = _loop_f_grid if NUMBA_ENABLED else _np_f_grid
    out = impl(Xf, zf, float(t), *pack)
    return out.reshape(shape)


def f_jet_grid(X, z, t, pack):
    (Xf, zf), shape = _as1d(X, z)
    impl = _loop_f_jet_grid if NUMBA_ENABLED else _np_f_jet_grid
    out = impl(Xf, zf, float(t), *pack)
    return tuple(a.reshape(shape) for a in out)


def sprime_grid(X, z, t, pack, qg, tiltx):
    (Xf, zf), shape = _as1d(X, z)
    impl = _loop_sprime_grid if NUMBA_ENABLED else _np_sprime_grid
    val, slope = impl(Xf, zf, float(t), *pack, qg, tiltx)
    return val.reshape(shape), slope.reshape(shape)


def refine_roots(a, b, z, t, pack, tol=1e-12, maxit=100):
    (af, bf, zf), shape = _as1d(a, b, z)
    impl = _loop_refine_roots if NUMBA_ENABLED else _np_refine_roots
    root, ok = impl(af, bf, zf, float(t), *pack, tol, maxit)
    return root.reshape(shape), ok.reshape(shape)


def lower_hull(xs, ys):
    xs = np.ascontiguousarray(xs, dtype=np.float64)
    ys = np.ascontiguousarray(ys, dtype=np.float64)
    return _loop_lower_hull(xs, ys)


def envelope_solve(X1, X2, z, t, pack, qg, tiltx, tol=1e-12, maxit=60, max_step=2.0):
    (x1, x2, zf), shape = _as1d(X1, X2, z)
    impl = _loop_envelope_solve if NUMBA_ENABLED else _np_envelope_solve
    o1, o2, r, ok = impl(x1, x2, zf, float(t), *pack, qg, tiltx, tol, maxit, max_step)
    return o1.reshape(shape), o2.reshape(shape), r.reshape(shape), ok.reshape(shape)
