import subprocess
import sys

import pytest


def run_primary(outdir, *args):
    """Invoke the primary CLI; fixtures are real output files."""
    proc = subprocess.run(
        [sys.executable, "-m", "eadyfronts.cli", "--outdir", str(outdir), *args],
        capture_output=True,
        text=True,
    )
    assert proc.returncode == 0, proc.stderr
    return outdir


@pytest.fixture(scope="session")
def fixtures(tmp_path_factory):
    """CSV fixtures produced by the primary CLI, one directory per session."""
    d = tmp_path_factory.mktemp("csv")
    run_primary(d, "dispersion", "--nu", "0,0.5,1.0", "--samples", "60")
    run_primary(d, "singular", "--t", "5.31,6.5,7.57,8.5", "--levels", "96")
    run_primary(d, "field", "--t", "6.0", "--nx", "41", "--nz", "17",
                "--p-graph", "pgraph.csv")
    run_primary(d, "fronts", "--t", "7.14", "--z-levels", "96",
                "--output", "fronts714.csv")
    run_primary(d, "singular", "--t", "7.14", "--levels", "96",
                "--output", "singular714.csv", "--summary", "summary714.json")
    run_primary(d, "velocity", "--t", "6.5", "--nx", "41", "--nz", "21")
    run_primary(d, "curvature", "--t", "5.0,6.5", "--nx", "81", "--nz", "41",
                "--output", "curvature_grid.csv")
    run_primary(d, "curvature", "--t", "3.0,4.0,5.0", "--z-slice", "0.0",
                "--nx", "101", "--output", "curvature_slice.csv")
    return d
