#!/usr/bin/env python3
"""Regenerate every export and figure: the availability surface, its level
curves, contour polylines, and the fixed-security slices at ks=0.75 and
ks=0.25. Outputs land in out/ at the repository root."""

import subprocess
import sys
from pathlib import Path

ROOT = Path(__file__).resolve().parent.parent
OUT = ROOT / "out"


def run(*argv):
    print("+", " ".join(map(str, argv)))
    subprocess.run(list(map(str, argv)), check=True)


def main() -> int:
    OUT.mkdir(exist_ok=True)
    cli = [sys.executable, "-m", "fuzzavail"]
    render = [sys.executable, str(ROOT / "plots" / "render")]

    grid = OUT / "grid.csv"
    run(*cli, "surface", "--nx", "101", "--ny", "101", "--out", grid)
    run(*cli, "slice", "--ks", "0.75", "--n", "101", "--out", OUT / "slice_ks075.csv")
    run(*cli, "slice", "--ks", "0.25", "--n", "101", "--out", OUT / "slice_ks025.csv")
    run(*cli, "contour", "--grid", grid,
        "--levels", "0.1,0.2,0.3,0.4,0.5,0.6,0.7,0.8,0.9", "--out", OUT / "contours.txt")

    run(*render, "--kind", "surface", "--in", grid, "--out", OUT / "fig_surface.png")
    run(*render, "--kind", "levelcurves", "--in", grid, "--out", OUT / "fig_levelcurves.png")
    run(*render, "--kind", "slice", "--in", OUT / "slice_ks075.csv", "--out", OUT / "fig_slice_ks075.png")
    run(*render, "--kind", "slice", "--in", OUT / "slice_ks025.csv", "--out", OUT / "fig_slice_ks025.png")
    print(f"done; outputs in {OUT}")
    return 0


if __name__ == "__main__":
    sys.exit(main())
