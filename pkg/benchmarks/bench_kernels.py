"""Benchmark the JIT loop kernels against the pure-numpy lane.

Run with the default environment to time numba-compiled kernels; run with
EADYFRONTS_NUMBA=0 to see the fallback dispatch (the loop column then
measures plain Python loops).

    python3 benchmarks/bench_kernels.py
"""

import time

import numpy as np

from eadyfronts import _kernels, build_mode, default_params
from eadyfronts.wavefield import pocket_center, period, wave_pack


def best_of(fn, repeats=3):
    best = float("inf")
    for _ in range(repeats):
        t0 = time.perf_counter()
        out = fn()
        best = min(best, time.perf_counter() - t0)
    return best, out


def main():
    mode = build_mode(default_params(), k=2.0, l=0.0, eta=0.01)
    pack = wave_pack(mode)
    qg = mode.params.q_g
    t = 7.0

    rng = np.random.default_rng(0)
    n_grid = 2_000_000
    Xg = rng.uniform(-8, 8, n_grid)
    zg = rng.uniform(0, mode.params.B, n_grid)

    n_lev = 512
    zl = np.linspace(0.0, 0.25, n_lev)
    centers = np.array([pocket_center(mode, z, t) for z in zl])
    a = centers - period(mode) / 4
    b = centers.copy()
    X1 = centers - 1.2
    X2 = centers + 1.2

    n_hull = 400_001
    Xh = np.linspace(centers[0] - 1.25 * period(mode) / 2,
                     centers[0] + 1.25 * period(mode) / 2, n_hull)
    Sh, _ = _kernels._np_sprime_grid(Xh, np.zeros_like(Xh), t, *pack, qg, 0.0)

    cases = [
        (
            f"f_jet_grid ({n_grid/1e6:.0f}M pts)",
            lambda: _kernels._loop_f_jet_grid(Xg, zg, t, *pack),
            lambda: _kernels._np_f_jet_grid(Xg, zg, t, *pack),
            lambda lo, npv: max(np.abs(x - y).max() for x, y in zip(lo, npv)),
        ),
        (
            f"f_grid ({n_grid/1e6:.0f}M pts)",
            lambda: _kernels._loop_f_grid(Xg, zg, t, *pack),
            lambda: _kernels._np_f_grid(Xg, zg, t, *pack),
            lambda lo, npv: np.abs(lo - npv).max(),
        ),
        (
            f"refine_roots ({n_lev} levels)",
            lambda: _kernels._loop_refine_roots(a, b, zl, t, *pack, 1e-13, 100),
            lambda: _kernels._np_refine_roots(a, b, zl, t, *pack, 1e-13, 100),
            lambda lo, npv: np.abs(lo[0] - npv[0]).max(),
        ),
        (
            f"envelope_solve ({n_lev} levels)",
            lambda: _kernels._loop_envelope_solve(X1, X2, zl, t, *pack, qg, 0.0, 1e-12, 60, 2.0),
            lambda: _kernels._np_envelope_solve(X1, X2, zl, t, *pack, qg, 0.0, 1e-12, 60, 2.0),
            lambda lo, npv: max(np.abs(lo[0] - npv[0]).max(), np.abs(lo[1] - npv[1]).max()),
        ),
    ]

    lane = "numba" if _kernels.NUMBA_ENABLED else "python"
    print(f"loop lane: {lane}")
    print(f"{'kernel':34s} {'loop':>10s} {'numpy':>10s} {'speedup':>8s} {'max |diff|':>11s}")
    for name, loop_fn, np_fn, diff in cases:
        loop_fn()  # JIT warm-up
        t_loop, out_loop = best_of(loop_fn)
        t_np, out_np = best_of(np_fn)
        print(
            f"{name:34s} {t_loop*1e3:9.2f}ms {t_np*1e3:9.2f}ms "
            f"{t_np/t_loop:7.2f}x {diff(out_loop, out_np):11.2e}"
        )

    # the hull has a single (sequential) implementation; compare lanes by
    # re-running this script with EADYFRONTS_NUMBA=0
    _kernels._loop_lower_hull(Xh[:100], Sh[:100])
    t_hull, _ = best_of(lambda: _kernels._loop_lower_hull(Xh, Sh))
    print(f"{f'lower_hull ({n_hull/1e3:.0f}k pts)':34s} {t_hull*1e3:9.2f}ms {'-':>10s} {'-':>8s} {'-':>11s}")


if __name__ == "__main__":
    main()
