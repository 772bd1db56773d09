import json
from pathlib import Path

import pytest

from eadyfigures import EXPECTED_COLUMNS, FIGURE_IDS, FigureSpec, render
from eadyfigures.cli import main as cli_main


def spec_for(figure_id, fixtures, out):
    inputs = {
        "dispersion": ["dispersion.csv"],
        "singular_locus": ["singular.csv"],
        "P_graph": ["pgraph.csv"],
        "physical_region": ["fronts714.csv", "singular714.csv"],
        "geopotential_velocity": ["velocity.csv"],
        "curvature_regions": ["curvature_grid_t5.csv", "curvature_grid_t6.5.csv"],
        "curvature_slice": ["curvature_slice_t3.csv", "curvature_slice_t4.csv",
                            "curvature_slice_t5.csv"],
    }[figure_id]
    return FigureSpec(
        figure_id=figure_id,
        inputs=tuple(fixtures / name for name in inputs),
        output=out,
    )


@pytest.mark.parametrize("figure_id", FIGURE_IDS)
def test_render_deterministic(figure_id, fixtures, tmp_path):
    out1 = render(spec_for(figure_id, fixtures, tmp_path / f"{figure_id}_a.png"))
    out2 = render(spec_for(figure_id, fixtures, tmp_path / f"{figure_id}_b.png"))
    data1 = Path(out1).read_bytes()
    data2 = Path(out2).read_bytes()
    assert len(data1) > 1000
    assert data1 == data2


@pytest.mark.parametrize("figure_id", FIGURE_IDS)
def test_missing_column_reports_file(figure_id, fixtures, tmp_path):
    spec = spec_for(figure_id, fixtures, tmp_path / "out.png")
    src = Path(spec.inputs[0])
    lines = src.read_text().splitlines()
    header = lines[1].split(",")
    dropped = header[-1]
    broken_lines = [lines[0], ",".join(header[:-1])]
    broken_lines += [",".join(ln.split(",")[:-1]) for ln in lines[2:]]
    broken = tmp_path / src.name
    broken.write_text("\n".join(broken_lines) + "\n")
    bad_spec = FigureSpec(
        figure_id=figure_id,
        inputs=(broken, *spec.inputs[1:]),
        output=tmp_path / "out.png",
    )
    with pytest.raises(ValueError) as err:
        render(bad_spec)
    msg = str(err.value)
    assert str(broken) in msg
    assert dropped in msg


def test_extra_column_reports_file(fixtures, tmp_path):
    src = fixtures / "dispersion.csv"
    lines = src.read_text().splitlines()
    lines[1] += ",bogus"
    lines[2:] = [ln + ",0" for ln in lines[2:]]
    broken = tmp_path / "dispersion.csv"
    broken.write_text("\n".join(lines) + "\n")
    with pytest.raises(ValueError, match="bogus"):
        render(FigureSpec("dispersion", (broken,), tmp_path / "o.png"))


def test_unknown_figure_id(fixtures, tmp_path):
    with pytest.raises(ValueError, match="unknown figure id"):
        FigureSpec("surprise", (fixtures / "dispersion.csv",), tmp_path / "o.png")


def test_missing_second_input(fixtures, tmp_path):
    with pytest.raises(ValueError, match="needs 2 input"):
        render(
            FigureSpec(
                "physical_region", (fixtures / "fronts714.csv",), tmp_path / "o.png"
            )
        )


def test_metadata_feeds_labels(fixtures):
    from eadyfigures.io import read_table

    tb = read_table(fixtures / "dispersion.csv")
    assert "F" in tb.metadata and "eta" in tb.metadata
    assert tb.metadata["q_g"] == pytest.approx(0.5)


def test_cli_entry(fixtures, tmp_path):
    out = tmp_path / "disp.png"
    rc = cli_main(
        ["dispersion", "--input", str(fixtures / "dispersion.csv"), "--output", str(out)]
    )
    assert rc == 0
    assert out.exists() and out.stat().st_size > 1000
    rc_bad = cli_main(
        ["dispersion", "--input", str(tmp_path / "nope.csv"), "--output", str(out)]
    )
    assert rc_bad == 1
    assert cli_main(["bogus_id", "--input", "x", "--output", "y"]) == 1


def test_every_figure_id_has_expected_columns():
    assert set(EXPECTED_COLUMNS) == set(FIGURE_IDS)
    assert len(FIGURE_IDS) == 7


def test_rendered_images_decode_with_content(fixtures, tmp_path):
    from PIL import Image

    for figure_id in FIGURE_IDS:
        out = render(spec_for(figure_id, fixtures, tmp_path / f"{figure_id}.png"))
        with Image.open(out) as im:
            assert im.size[0] > 300 and im.size[1] > 200
            lo, hi = im.convert("L").getextrema()
            assert lo < 200 and hi > 200  # dark strokes on a light canvas


def test_variadic_panels(fixtures, tmp_path):
    from PIL import Image

    one = render(
        FigureSpec(
            "geopotential_velocity",
            (fixtures / "velocity.csv",),
            tmp_path / "one.png",
        )
    )
    two = render(
        FigureSpec(
            "geopotential_velocity",
            (fixtures / "velocity.csv", fixtures / "velocity.csv"),
            tmp_path / "two.png",
        )
    )
    with Image.open(one) as im1, Image.open(two) as im2:
        assert im2.size[1] > 1.5 * im1.size[1]  # one panel row per input
