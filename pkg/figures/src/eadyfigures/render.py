"""Figure panels from eadyfronts CSV files.

Each renderer is a pure function of the CSV contents and the spec:
fixed figure size, fixed styling, no randomness, so re-rendering the
same inputs yields byte-identical images.  No physics is computed here;
every plotted quantity is a CSV column.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from pathlib import Path

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt
import matplotlib.tri as mtri
import numpy as np

from .io import read_table, require_columns

FIGURE_IDS = (
    "dispersion",
    "singular_locus",
    "P_graph",
    "physical_region",
    "geopotential_velocity",
    "curvature_regions",
    "curvature_slice",
)

# (per-input expected column sets, whether extra inputs repeat the last set)
EXPECTED_COLUMNS = {
    "dispersion": ([{"m", "nu", "omega_re", "omega_im", "phi"}], False),
    "singular_locus": ([{"t", "X", "z", "kind"}], False),
    "P_graph": ([{"x", "z", "P"}], False),
    "physical_region": (
        [
            {"t", "z", "X1", "X2", "x_front", "rh_lhs", "rh_rhs", "equal_area_residual"},
            {"t", "X", "z", "kind"},
        ],
        False,
    ),
    "geopotential_velocity": ([{"x", "z", "u", "w", "phi", "regular"}], True),
    "curvature_regions": ([{"X", "z", "f", "Sc", "signature"}], True),
    "curvature_slice": ([{"X", "z", "f", "Sc", "signature"}], True),
}

DPI = 150


@dataclass(frozen=True)
class FigureSpec:
    """One figure: id, input CSV paths, output image path, styling options."""

    figure_id: str
    inputs: tuple
    output: Path
    options: dict = field(default_factory=dict)

    def __post_init__(self):
        if self.figure_id not in FIGURE_IDS:
            raise ValueError(
                f"unknown figure id {self.figure_id!r}; expected one of {FIGURE_IDS}"
            )


def render(spec: FigureSpec) -> Path:
    """Render the figure and return the output path.

    Inputs are validated against the exact expected column sets; a
    mismatch raises ValueError naming the offending file.
    """
    expected, variadic = EXPECTED_COLUMNS[spec.figure_id]
    if len(spec.inputs) < len(expected) or (
        not variadic and len(spec.inputs) != len(expected)
    ):
        raise ValueError(
            f"figure {spec.figure_id!r} needs {len(expected)}"
            f"{'+' if variadic else ''} input file(s), got {len(spec.inputs)}"
        )
    tables = [read_table(p) for p in spec.inputs]
    for i, table in enumerate(tables):
        require_columns(table, expected[min(i, len(expected) - 1)])
    fig = _RENDERERS[spec.figure_id](tables, spec.options)
    out = Path(spec.output)
    out.parent.mkdir(parents=True, exist_ok=True)
    fig.savefig(out, dpi=DPI)
    plt.close(fig)
    return out


def _param_title(meta: dict) -> str:
    return f"F={meta.get('F', float('nan')):.4g}, B={meta.get('B', float('nan')):.4g}, eta={meta.get('eta', float('nan')):.3g}"


def _render_dispersion(tables, options):
    tb = tables[0]
    fig, ax = plt.subplots(figsize=(6.4, 4.2))
    for nu in sorted(set(tb["nu"])):
        sel = tb["nu"] == nu
        order = np.argsort(tb["m"][sel])
        ax.plot(tb["m"][sel][order], tb["omega_im"][sel][order], label=f"nu = {nu:.2f}")
    ax.axhline(0.0, color="0.6", lw=0.8)
    ax.set_xlabel("m")
    ax.set_ylabel("growth rate")
    ax.set_title(f"dispersion ({_param_title(tb.metadata)})")
    ax.legend(frameon=False)
    fig.tight_layout()
    return fig


def _render_singular_locus(tables, options):
    tb = tables[0]
    times = sorted(set(tb["t"]))
    n = max(len(times), 1)
    fig, axes = plt.subplots(1, n, figsize=(3.0 * n, 3.4), squeeze=False)
    for ax, t in zip(axes[0], times):
        sel = tb["t"] == t
        folds = sel & (tb["kind"] == "A2_fold")
        special = sel & (tb["kind"] != "A2_fold")
        ax.plot(tb["X"][folds], tb["z"][folds], "k.", ms=1.5)
        ax.plot(tb["X"][special], tb["z"][special], "r^", ms=5)
        ax.set_title(f"t = {t:g}")
        ax.set_xlabel("X")
    axes[0][0].set_ylabel("z")
    if not times:
        axes[0][0].set_title("empty locus")
    fig.suptitle(f"singular locus ({_param_title(tb.metadata)})", fontsize=10)
    fig.tight_layout()
    return fig


def _render_P_graph(tables, options):
    tb = tables[0]
    fig, ax = plt.subplots(figsize=(6.0, 4.2))
    zs = np.unique(tb["z"])
    step = max(1, len(zs) // 12)
    for z in zs[::step]:
        sel = tb["z"] == z
        # file order is the parametric order along the level
        ax.plot(tb["x"][sel], tb["P"][sel], lw=0.8)
    ax.set_xlabel("x")
    ax.set_ylabel("P")
    ax.set_title(f"multivalued geopotential ({_param_title(tb.metadata)})")
    fig.tight_layout()
    return fig


def _render_physical_region(tables, options):
    fronts_tb, sing_tb = tables
    fig, ax = plt.subplots(figsize=(5.2, 4.2))
    ax.plot(sing_tb["X"], sing_tb["z"], "k.", ms=2.0, label="singular locus")
    order = np.argsort(fronts_tb["z"])
    ax.plot(fronts_tb["X1"][order], fronts_tb["z"][order], "b--", lw=1.2, label="X1(z)")
    ax.plot(fronts_tb["X2"][order], fronts_tb["z"][order], "g-.", lw=1.2, label="X2(z)")
    ax.set_xlabel("X")
    ax.set_ylabel("z")
    ax.set_title(f"physical region boundaries ({_param_title(fronts_tb.metadata)})")
    ax.legend(frameon=False, fontsize=8)
    fig.tight_layout()
    return fig


def _render_geopotential_velocity(tables, options):
    n = len(tables)
    fig, axes = plt.subplots(n, 2, figsize=(9.6, 4.0 * n), squeeze=False)
    for (ax1, ax2), tb in zip(axes, tables):
        keep = tb["regular"] == 1.0
        x = tb["x"][keep]
        z = tb["z"][keep]
        tri = mtri.Triangulation(x, z)
        ax1.tricontour(tri, tb["phi"][keep], levels=21, linewidths=0.8, colors="k")
        ax1.set_xlabel("x")
        ax1.set_ylabel("z")
        ax1.set_title(f"geopotential contours, t = {tb.metadata.get('t', '?'):g}")
        step = max(1, x.size // 600)
        ax2.quiver(
            x[::step], z[::step], tb["u"][keep][::step], tb["w"][keep][::step],
            angles="xy", width=0.003, scale_units="xy",
        )
        ax2.set_xlabel("x")
        ax2.set_title("velocity (u, w)")
    fig.suptitle(_param_title(tables[0].metadata), fontsize=10)
    fig.tight_layout()
    return fig


def _render_curvature_regions(tables, options):
    n = len(tables)
    fig, axes = plt.subplots(1, n, figsize=(3.4 * n, 3.4), squeeze=False)
    for ax, tb in zip(axes[0], tables):
        tri = mtri.Triangulation(tb["X"], tb["z"])
        f = tb["f"]
        ax.tricontourf(tri, f, levels=[0.0, float(np.max(f)) + 1.0], colors=["0.8"])
        ax.tricontour(tri, f, levels=[0.0], colors="k", linewidths=1.2)
        ax.set_title(f"t = {tb.metadata.get('t', '?'):g}")
        ax.set_xlabel("X")
    axes[0][0].set_ylabel("z")
    fig.suptitle(
        f"positively curved regions ({_param_title(tables[0].metadata)})", fontsize=10
    )
    fig.tight_layout()
    return fig


def _render_curvature_slice(tables, options):
    fig, ax = plt.subplots(figsize=(6.4, 4.2))
    zs = {float(np.round(tb["z"].min(), 12)) for tb in tables}
    label_z = f"z = {min(zs):g}" if len(zs) == 1 else "mixed z"
    for tb in tables:
        sel = np.isfinite(tb["Sc"])
        order = np.argsort(tb["X"][sel])
        ax.plot(
            tb["X"][sel][order],
            tb["Sc"][sel][order],
            lw=1.0,
            label=f"t = {tb.metadata.get('t', '?'):g}",
        )
    ax.set_xlabel("X")
    ax.set_ylabel("Sc")
    ax.set_title(f"curvature slice, {label_z} ({_param_title(tables[0].metadata)})")
    ax.legend(frameon=False)
    fig.tight_layout()
    return fig


_RENDERERS = {
    "dispersion": _render_dispersion,
    "singular_locus": _render_singular_locus,
    "P_graph": _render_P_graph,
    "physical_region": _render_physical_region,
    "geopotential_velocity": _render_geopotential_velocity,
    "curvature_regions": _render_curvature_regions,
    "curvature_slice": _render_curvature_slice,
}
