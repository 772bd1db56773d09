"""Shared test oracles: finite differences and exterior-algebra evaluation."""

import numpy as np


def central_diff(fn, x, h=1e-5):
    return (fn(x + h) - fn(x - h)) / (2 * h)


def second_diff(fn, x, h=1e-5):
    return (fn(x + h) - 2 * fn(x) + fn(x - h)) / h**2


def second_diff_richardson(fn, x, h=1e-2):
    """Second derivative with the h^2 error term extrapolated away."""
    return (4 * second_diff(fn, x, h / 2) - second_diff(fn, x, h)) / 3


def fd_gradient(fn, pt, h=1e-5):
    pt = np.asarray(pt, dtype=float)
    out = np.empty(pt.size)
    for i in range(pt.size):
        e = np.zeros_like(pt)
        e[i] = h
        out[i] = (fn(pt + e) - fn(pt - e)) / (2 * h)
    return out


def fd_hessian(fn, pt, h=1e-4):
    pt = np.asarray(pt, dtype=float)
    n = pt.size
    H = np.empty((n, n))
    f0 = fn(pt)
    for i in range(n):
        ei = np.zeros(n)
        ei[i] = h
        H[i, i] = (fn(pt + ei) - 2 * f0 + fn(pt - ei)) / h**2
        for j in range(i + 1, n):
            ej = np.zeros(n)
            ej[j] = h
            H[i, j] = H[j, i] = (
                fn(pt + ei + ej) - fn(pt + ei - ej) - fn(pt - ei + ej) + fn(pt - ei - ej)
            ) / (4 * h**2)
    return H


# ---------------------------------------------------------------------------
# minimal exterior algebra over a 6-dimensional phase space
# ---------------------------------------------------------------------------

def _canon(form):
    """Canonicalise a {index-tuple: coeff} form to sorted index tuples."""
    out = {}
    for idx, c in form.items():
        perm = list(idx)
        sign = 1
        for i in range(len(perm)):
            for j in range(i + 1, len(perm)):
                if perm[i] > perm[j]:
                    sign = -sign
        key = tuple(sorted(idx))
        out[key] = out.get(key, 0.0) + sign * c
    return {k: v for k, v in out.items() if v != 0.0}


def wedge(a, b):
    out = {}
    for ia, ca in a.items():
        for ib, cb in b.items():
            if set(ia) & set(ib):
                continue
            idx = ia + ib
            perm = list(idx)
            sign = 1
            for i in range(len(perm)):
                for j in range(i + 1, len(perm)):
                    if perm[i] > perm[j]:
                        sign = -sign
            key = tuple(sorted(idx))
            out[key] = out.get(key, 0.0) + sign * ca * cb
    return {k: v for k, v in out.items() if v != 0.0}


def interior(vec_index, form):
    """Contraction of a coordinate basis vector with a canonical form."""
    out = {}
    for idx, c in form.items():
        if vec_index not in idx:
            continue
        pos = idx.index(vec_index)
        rest = idx[:pos] + idx[pos + 1 :]
        out[rest] = out.get(rest, 0.0) + c * (-1) ** pos
    return out


def canonical_form(form):
    return _canon(form)
