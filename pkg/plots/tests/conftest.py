import subprocess
import sys
from pathlib import Path

import pytest

PLOTS_DIR = Path(__file__).resolve().parent.parent
ROOT = PLOTS_DIR.parent

sys.path.insert(0, str(PLOTS_DIR))


def run_cli(*argv):
    """Invoke the primary CLI as a subprocess (the component boundary)."""
    return subprocess.run(
        [sys.executable, "-m", "fuzzavail", *map(str, argv)],
        capture_output=True,
        text=True,
    )


@pytest.fixture(scope="session")
def exports(tmp_path_factory):
    """CSV exports generated through the primary CLI."""
    out = tmp_path_factory.mktemp("exports")
    grid = out / "grid.csv"
    slice075 = out / "slice075.csv"
    slice025 = out / "slice025.csv"
    for argv in (
        ("surface", "--nx", "41", "--ny", "41", "--out", grid),
        ("slice", "--ks", "0.75", "--n", "101", "--out", slice075),
        ("slice", "--ks", "0.25", "--n", "101", "--out", slice025),
    ):
        result = run_cli(*argv)
        assert result.returncode == 0, result.stderr
    return {"grid": grid, "slice075": slice075, "slice025": slice025}
