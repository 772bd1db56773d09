"""Command-line interface.

Subcommands: dispersion, field, singular, fronts, velocity, curvature,
reproduce.  Every output file starts with a ``#``-prefixed JSON metadata
line carrying the resolved parameters and tolerances, followed by a CSV
header and rows printed with 17 significant digits, so identical
configurations yield byte-identical files.  Exit codes: 0 success,
1 usage error, 2 numerical failure.
"""

from __future__ import annotations

import argparse
import json
import math
import os
import sys
from pathlib import Path

import numpy as np

from . import __version__, fronts, geometry, kinematics, singularity, spectral, wavefield
from .errors import ConvergenceError, StratificationError
from .landmarks import run_all
from .model import DimensionalScales, EadyParams, params_from_scales

TOLERANCES = {
    "dispersion_residual": spectral.DISPERSION_TOL,
    "boundary_residual": spectral.BOUNDARY_TOL,
    "locus_membership": singularity.F_TOL,
    "cusp_gradient": singularity.GRAD_TOL,
    "tangency": fronts.TANGENCY_TOL,
    "equal_area_quadrature": fronts.QUAD_TOL,
    "stratification_guard": kinematics.SZZ_GUARD,
    "curvature_degeneracy": geometry.DEGENERACY_TOL,
    "curvature_field_guard": geometry.FIELD_GUARD,
}

_G = "{:.17g}"


def _fmt(v) -> str:
    if isinstance(v, (bool, np.bool_)):
        return "1" if v else "0"
    if isinstance(v, str):
        return v
    return _G.format(float(v))


def _resolve_params(args) -> tuple[EadyParams, float, float, float]:
    """Parameters, eta, k, l from config file and flags (flags win)."""
    cfg = {}
    if args.config:
        cfg = json.loads(Path(args.config).read_text())
    if {"U", "N", "H", "f", "L", "g", "theta0"} <= set(cfg):
        scales = DimensionalScales(
            f=cfg["f"], g=cfg["g"], theta0=cfg["theta0"], N=cfg["N"],
            U=cfg["U"], H=cfg["H"], L=cfg["L"],
        )
        p = params_from_scales(scales)
        F, B = p.F, p.B
    else:
        F = cfg.get("F", 1.0 / math.sqrt(2.0))
        B = cfg.get("B", math.sqrt(2.0))
    if args.F is not None:
        F = args.F
    if args.B is not None:
        B = args.B
    p = EadyParams.from_froude_burger(F, B)
    eta = args.eta if args.eta is not None else cfg.get("eta", 0.01)
    k = args.k if args.k is not None else cfg.get("k", 2.0)
    l = args.l if args.l is not None else cfg.get("l", 0.0)
    return p, float(eta), float(k), float(l)


def _metadata(p: EadyParams, eta: float, mode=None, extra=None) -> dict:
    md = {
        "artifact_version": __version__,
        "F": p.F,
        "B": p.B,
        "eps": p.eps,
        "q_g": p.q_g,
        "eta": eta,
        "tolerances": TOLERANCES,
    }
    if mode is not None:
        wv = mode.wavevector
        md["mode"] = {
            "k": wv.k, "l": wv.l, "m": wv.m, "nu": wv.nu,
            "omega_re": mode.omega.re, "omega_im": mode.omega.im,
        }
    if extra:
        md.update(extra)
    return md


def _write_csv(path: Path, metadata: dict, header: list[str], rows) -> None:
    lines = ["# " + json.dumps(metadata, sort_keys=True)]
    lines.append(",".join(header))
    for row in rows:
        lines.append(",".join(_fmt(v) for v in row))
    path.write_text("\n".join(lines) + "\n")


def _write_json(path: Path, payload: dict) -> None:
    path.write_text(json.dumps(payload, sort_keys=True, indent=2) + "\n")


def _write_run_config(outdir: Path, name: str, payload: dict) -> None:
    _write_json(outdir / f"{name}_config.json", payload)


def _float_list(text: str) -> list[float]:
    return [float(v) for v in text.split(",") if v.strip() != ""]


# ---------------------------------------------------------------------------
# subcommands
# ---------------------------------------------------------------------------

def _cmd_dispersion(args, outdir: Path) -> int:
    p, eta, _, _ = _resolve_params(args)
    nus = _float_list(args.nu)
    ms = np.linspace(args.m_min, args.m_max, args.samples)
    rows = []
    for nu in nus:
        for m in ms:
            wv = spectral.WaveVector.from_magnitude_angle(m, nu)
            om = spectral.solve_omega(wv, p)
            rows.append((m, nu, om.re, om.im, spectral.dispersion_rhs(m, p)))
    path = outdir / args.output
    _write_csv(path, _metadata(p, eta, extra={"nu_list": nus}), ["m", "nu", "omega_re", "omega_im", "phi"], rows)
    _write_run_config(outdir, "dispersion", {"nu": nus, "m_min": args.m_min, "m_max": args.m_max, "samples": args.samples, "F": p.F, "B": p.B})
    print(f"wrote {path}")
    return 0


def _cmd_field(args, outdir: Path) -> int:
    p, eta, k, l = _resolve_params(args)
    mode = spectral.build_mode(p, k=k, l=l, eta=eta)
    if args.x_min is None or args.x_max is None:
        c = wavefield.pocket_center(mode, p.B / 2, args.t)
        per = wavefield.period(mode)
        x_lo, x_hi = c - per / 2, c + per / 2
    else:
        x_lo, x_hi = args.x_min, args.x_max
    Xs = np.linspace(x_lo, x_hi, args.nx)
    zs = np.linspace(0.0, p.B, args.nz)
    rows = []
    for z in zs:
        for X in Xs:
            jet = wavefield.eval_jet(mode, X, args.Y, z, args.t)
            rows.append((X, z, jet.value, jet.S_X, jet.S_z, jet.S_XX))
    md = _metadata(p, eta, mode, {"t": args.t, "Y": args.Y})
    path = outdir / args.output
    _write_csv(path, md, ["X", "z", "S", "S_X", "S_z", "f"], rows)
    written = [str(path)]
    if args.p_graph:
        x, zg, P = kinematics.multivalued_P(mode, Xs, zs, args.Y, args.t)
        prows = [
            (x[i, j], zg[i, j], P[i, j])
            for i in range(x.shape[0])
            for j in range(x.shape[1])
        ]
        ppath = outdir / args.p_graph
        _write_csv(ppath, md, ["x", "z", "P"], prows)
        written.append(str(ppath))
    _write_run_config(outdir, "field", {"t": args.t, "Y": args.Y, "nx": args.nx, "nz": args.nz, "window": [x_lo, x_hi], "F": p.F, "B": p.B, "eta": eta, "k": k, "l": l})
    print("wrote " + ", ".join(written))
    return 0


def _cmd_singular(args, outdir: Path) -> int:
    p, eta, k, l = _resolve_params(args)
    mode = spectral.build_mode(p, k=k, l=l, eta=eta)
    times = _float_list(args.t)
    rows = []
    for t in times:
        curve = singularity.singular_locus(mode, t, n_levels=args.levels)
        for pt in curve.points:
            rows.append((t, pt.X, pt.z, pt.kind))
    md = _metadata(p, eta, mode, {"t_list": times})
    path = outdir / args.output
    _write_csv(path, md, ["t", "X", "z", "kind"], rows)
    if mode.omega.im > 0 and eta > 0:
        summary = dict(singularity.catastrophe_times(mode).as_dict())
    else:
        # neutral or unperturbed modes never develop singularities
        summary = {k: None for k in (
            "t_prime", "t_double_prime", "X_prime_mod_pi", "X_double_prime_mod_pi")}
    jpath = outdir / args.summary
    _write_json(jpath, summary)
    _write_run_config(outdir, "singular", {"t": times, "levels": args.levels, "F": p.F, "B": p.B, "eta": eta, "k": k, "l": l})
    print(f"wrote {path}, {jpath}")
    return 0


def _cmd_fronts(args, outdir: Path) -> int:
    p, eta, k, l = _resolve_params(args)
    mode = spectral.build_mode(p, k=k, l=l, eta=eta)
    surf = fronts.front_surface(mode, args.t, n_levels=args.z_levels)
    rh_lhs = {}
    rh_rhs = {}
    try:
        rep = fronts.rankine_hugoniot_check(surf, mode)
        for z, lv, rv in zip(rep.z, rep.lhs, rep.rhs):
            rh_lhs[z] = lv
            rh_rhs[z] = rv
    except ValueError:
        pass
    rows = []
    for s in surf.sections:
        rows.append(
            (
                args.t,
                s.z,
                s.X1,
                s.X2,
                s.x_front,
                rh_lhs.get(s.z, float("nan")),
                rh_rhs.get(s.z, float("nan")),
                fronts.equal_area_check(s, mode),
            )
        )
    md = _metadata(p, eta, mode, {"t": args.t, "tips": list(surf.tips)})
    path = outdir / args.output
    _write_csv(
        path,
        md,
        ["t", "z", "X1", "X2", "x_front", "rh_lhs", "rh_rhs", "equal_area_residual"],
        rows,
    )
    _write_run_config(outdir, "fronts", {"t": args.t, "z_levels": args.z_levels, "F": p.F, "B": p.B, "eta": eta, "k": k, "l": l})
    print(f"wrote {path}")
    return 0


def _cmd_velocity(args, outdir: Path) -> int:
    p, eta, k, l = _resolve_params(args)
    mode = spectral.build_mode(p, k=k, l=l, eta=eta)
    if args.X0 is not None and args.t0 is not None:
        window = kinematics.ObservationWindow(
            X0=args.X0,
            t0=args.t0,
            half_width=wavefield.period(mode) / 2,
            drift=(mode.wavevector.k / mode.wavevector.m) * p.eps / 2,
        )
    else:
        window = kinematics.default_window(mode)
    times = _float_list(args.t)
    written = []
    for t in times:
        snap = kinematics.velocity_snapshot(
            mode, t, window=window, y=args.y, nx=args.nx, nz=args.nz,
            keep_excised=args.keep_excised,
        )
        rows = [
            (snap.x[i], snap.z[i], snap.u[i], snap.w[i], snap.phi[i], snap.regular[i])
            for i in range(snap.x.size)
        ]
        md = _metadata(
            p, eta, mode,
            {"t": t, "y": args.y,
             "window": {"X0": window.X0, "t0": window.t0,
                        "half_width": window.half_width, "drift": window.drift,
                        "bounds": list(window.bounds(t))}},
        )
        name = args.output.format(t=t) if "{t}" in args.output else args.output
        if len(times) > 1 and "{t}" not in args.output:
            stem, dot, ext = args.output.partition(".")
            name = f"{stem}_t{t:g}{dot}{ext}"
        path = outdir / name
        _write_csv(path, md, ["x", "z", "u", "w", "phi", "regular"], rows)
        written.append(str(path))
    _write_run_config(outdir, "velocity", {"t": times, "y": args.y, "nx": args.nx, "nz": args.nz, "F": p.F, "B": p.B, "eta": eta, "k": k, "l": l})
    print("wrote " + ", ".join(written))
    return 0


def _cmd_curvature(args, outdir: Path) -> int:
    p, eta, _, _ = _resolve_params(args)
    m = args.m
    nu = args.nu
    mode = spectral.build_mode(p, k=m * math.cos(nu), l=m * math.sin(nu), eta=eta)
    times = _float_list(args.t)
    written = []
    for t in times:
        rows = []
        if args.z_slice is not None:
            c = wavefield.pocket_center(mode, args.z_slice, t)
            per = wavefield.period(mode)
            Xs = np.linspace(c - per / 2, c + per / 2, args.nx)
            zs = np.full_like(Xs, args.z_slice)
            jf = wavefield.f_jet(mode, Xs, zs, t)
            f = jf.f
            with np.errstate(divide="ignore", invalid="ignore"):
                sc = (jf.f_z**2 + p.q_g * jf.f_X**2) / (p.q_g * f**3)
            sc = np.where(np.abs(f) > geometry.FIELD_GUARD, sc, float("nan"))
            for X, z, fv, sv in zip(Xs, zs, f, sc):
                rows.append((X, z, fv, sv, _sig_name(fv)))
        else:
            fld = geometry.curvature_field(mode, t, nx=args.nx, nz=args.nz)
            for i in range(fld.X.shape[0]):
                for j in range(fld.X.shape[1]):
                    fv = fld.f[i, j]
                    rows.append((fld.X[i, j], fld.z[i, j], fv, fld.Sc[i, j], _sig_name(fv)))
        md = _metadata(p, eta, mode, {"t": t, "z_slice": args.z_slice})
        name = args.output
        if len(times) > 1:
            stem, dot, ext = args.output.partition(".")
            name = f"{stem}_t{t:g}{dot}{ext}"
        path = outdir / name
        _write_csv(path, md, ["X", "z", "f", "Sc", "signature"], rows)
        written.append(str(path))
    _write_run_config(outdir, "curvature", {"t": times, "nu": nu, "m": m, "z_slice": args.z_slice, "nx": args.nx, "nz": args.nz, "F": p.F, "B": p.B, "eta": eta})
    print("wrote " + ", ".join(written))
    return 0


def _sig_name(f: float) -> str:
    if f > geometry.DEGENERACY_TOL:
        return geometry.SIG_RIEMANNIAN
    if f < -geometry.DEGENERACY_TOL:
        return geometry.SIG_PSEUDO
    return geometry.SIG_DEGENERATE


def _cmd_reproduce(args, outdir: Path) -> int:
    results = run_all(verbose=True)
    def plain(v):
        if isinstance(v, (bool, np.bool_)):
            return bool(v)
        if isinstance(v, str):
            return v
        return float(v)

    payload = {
        "artifact_version": __version__,
        "checks": [
            {"name": r.name, "passed": bool(r.passed),
             "details": {k: plain(v) for k, v in r.details.items()}}
            for r in results
        ],
        "all_passed": bool(all(r.passed for r in results)),
    }
    _write_json(outdir / args.output, payload)
    print(f"wrote {outdir / args.output}")
    return 0 if payload["all_passed"] else 2


# ---------------------------------------------------------------------------
# parser
# ---------------------------------------------------------------------------

def _build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(
        prog="eadyfronts",
        description="Semigeostrophic Eady waves: dispersion, fronts, and curvature diagnostics.",
    )
    ap.add_argument("--outdir", default=None, help="output directory (default: $EADYFRONTS_OUTDIR or '.')")
    sub = ap.add_subparsers(dest="command", required=True)

    def common(sp):
        sp.add_argument("--config", default=None, help="JSON config with {F,B} or dimensional scales")
        sp.add_argument("--F", type=float, default=None)
        sp.add_argument("--B", type=float, default=None)
        sp.add_argument("--eta", type=float, default=None)
        sp.add_argument("--k", type=float, default=None)
        sp.add_argument("--l", type=float, default=None)

    sp = sub.add_parser("dispersion", help="frequency and growth-rate curves over m for a list of angles")
    common(sp)
    sp.add_argument("--nu", default="0.0", help="comma list of propagation angles (radians)")
    sp.add_argument("--m-min", type=float, default=0.05)
    sp.add_argument("--m-max", type=float, default=4.0)
    sp.add_argument("--samples", type=int, default=200)
    sp.add_argument("--output", default="dispersion.csv")
    sp.set_defaults(func=_cmd_dispersion)

    sp = sub.add_parser("field", help="generator and derivative grids at fixed (Y, t)")
    common(sp)
    sp.add_argument("--t", type=float, default=6.5)
    sp.add_argument("--Y", type=float, default=0.0)
    sp.add_argument("--x-min", type=float, default=None)
    sp.add_argument("--x-max", type=float, default=None)
    sp.add_argument("--nx", type=int, default=121)
    sp.add_argument("--nz", type=int, default=61)
    sp.add_argument("--p-graph", default=None, help="also write multivalued geopotential samples (x,z,P) to this file")
    sp.add_argument("--output", default="field.csv")
    sp.set_defaults(func=_cmd_field)

    sp = sub.add_parser("singular", help="singular locus points and catastrophe-time summary")
    common(sp)
    sp.add_argument("--t", default="6.5", help="comma list of times")
    sp.add_argument("--levels", type=int, default=512)
    sp.add_argument("--output", default="singular.csv")
    sp.add_argument("--summary", default="singular_summary.json")
    sp.set_defaults(func=_cmd_singular)

    sp = sub.add_parser("fronts", help="front sections with jump-condition and equal-area checks")
    common(sp)
    sp.add_argument("--t", type=float, default=8.5)
    sp.add_argument("--z-levels", type=int, default=512)
    sp.add_argument("--output", default="fronts.csv")
    sp.set_defaults(func=_cmd_fronts)

    sp = sub.add_parser("velocity", help="regularised velocity snapshot over the moving window")
    common(sp)
    sp.add_argument("--t", default="6.5", help="comma list of times")
    sp.add_argument("--X0", type=float, default=None, help="window anchor position")
    sp.add_argument("--t0", type=float, default=None, help="window anchor time")
    sp.add_argument("--y", type=float, default=0.0)
    sp.add_argument("--nx", type=int, default=121)
    sp.add_argument("--nz", type=int, default=61)
    sp.add_argument("--keep-excised", action="store_true", help="keep points inside front intervals")
    sp.add_argument("--output", default="velocity.csv")
    sp.set_defaults(func=_cmd_velocity)

    sp = sub.add_parser("curvature", help="scalar-curvature sweeps (full grid or one z level)")
    common(sp)
    sp.add_argument("--t", default="6.0", help="comma list of times")
    sp.add_argument("--nu", type=float, default=0.0, help="propagation angle of the wave")
    sp.add_argument("--m", type=float, default=2.0, help="wavevector magnitude")
    sp.add_argument("--z-slice", type=float, default=None)
    sp.add_argument("--nx", type=int, default=241)
    sp.add_argument("--nz", type=int, default=121)
    sp.add_argument("--output", default="curvature.csv")
    sp.set_defaults(func=_cmd_curvature)

    sp = sub.add_parser("reproduce", help="run the full landmark suite and report pass/fail")
    common(sp)
    sp.add_argument("--output", default="reproduce_report.json")
    sp.set_defaults(func=_cmd_reproduce)

    return ap


def main(argv=None) -> int:
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return 0 if exc.code in (0, None) else 1
    outdir = Path(args.outdir or os.environ.get("EADYFRONTS_OUTDIR", "."))
    try:
        outdir.mkdir(parents=True, exist_ok=True)
        return args.func(args, outdir)
    except (ValueError, json.JSONDecodeError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except (ConvergenceError, StratificationError, ArithmeticError, RuntimeError) as exc:
        print(f"numerical failure: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
