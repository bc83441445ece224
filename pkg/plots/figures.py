"""Render availability CSV exports as figures.

Three figure kinds: a 3-D surface of the combined coefficient over the
(kd, ks) unit square, labeled level curves of the same grid, and a line
plot of one fixed-security slice. These scripts only visualize; every
number comes from the CSV inputs produced by the fuzzavail CLI.
"""

from __future__ import annotations

from dataclasses import dataclass

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt  # noqa: E402
import numpy as np  # noqa: E402

KINDS = ("surface", "levelcurves", "slice")
DEFAULT_LEVELS = tuple(round(0.1 * k, 1) for k in range(1, 10))


@dataclass(frozen=True)
class FigureSpec:
    kind: str
    input_path: str
    output_path: str
    title: str | None = None
    kd_label: str = "achieved availability kd"
    ks_label: str = "security level ks"
    ka_label: str = "global availability ka"

    def __post_init__(self) -> None:
        if self.kind not in KINDS:
            raise ValueError(f"kind must be one of {KINDS}, got {self.kind!r}")


def read_grid_csv(path):
    """Read a kd,ks,ka grid CSV into (kd array, ks array, values[kd, ks])."""
    rows = []
    header_seen = False
    with open(path, "r", encoding="utf-8") as fh:
        for line_no, raw in enumerate(fh, 1):
            line = raw.strip()
            if not line or line.startswith("#"):
                continue
            if not header_seen:
                if [c.strip().lower() for c in line.split(",")] != ["kd", "ks", "ka"]:
                    raise ValueError(f"{path}:{line_no}: expected header 'kd,ks,ka'")
                header_seen = True
                continue
            parts = line.split(",")
            if len(parts) != 3:
                raise ValueError(f"{path}:{line_no}: expected 3 columns")
            try:
                rows.append(tuple(float(p) for p in parts))
            except ValueError:
                raise ValueError(f"{path}:{line_no}: malformed number") from None
    if not header_seen or not rows:
        raise ValueError(f"{path}: no grid data found")
    kd = sorted({r[0] for r in rows})
    ks = sorted({r[1] for r in rows})
    if len(rows) != len(kd) * len(ks):
        raise ValueError(f"{path}: grid is not complete ({len(rows)} rows)")
    index = {(r[0], r[1]): r[2] for r in rows}
    values = np.array([[index[(x, y)] for y in ks] for x in kd])
    return np.array(kd), np.array(ks), values


def read_slice_csv(path):
    """Read a kd,ka slice CSV; returns (ks_fixed or None, kd array, ka array)."""
    ks_fixed = None
    rows = []
    header_seen = False
    with open(path, "r", encoding="utf-8") as fh:
        for line_no, raw in enumerate(fh, 1):
            line = raw.strip()
            if not line:
                continue
            if line.startswith("#"):
                body = line.lstrip("#").strip()
                if body.lower().startswith("ks="):
                    try:
                        ks_fixed = float(body[3:])
                    except ValueError:
                        raise ValueError(f"{path}:{line_no}: malformed ks comment") from None
                continue
            if not header_seen:
                if [c.strip().lower() for c in line.split(",")] != ["kd", "ka"]:
                    raise ValueError(f"{path}:{line_no}: expected header 'kd,ka'")
                header_seen = True
                continue
            parts = line.split(",")
            if len(parts) != 2:
                raise ValueError(f"{path}:{line_no}: expected 2 columns")
            try:
                rows.append((float(parts[0]), float(parts[1])))
            except ValueError:
                raise ValueError(f"{path}:{line_no}: malformed number") from None
    if not header_seen or not rows:
        raise ValueError(f"{path}: no slice data found")
    kd = np.array([r[0] for r in rows])
    ka = np.array([r[1] for r in rows])
    return ks_fixed, kd, ka


def render(spec: FigureSpec, levels=DEFAULT_LEVELS):
    """Draw the figure described by ``spec``, save it, and return it."""
    if spec.kind == "surface":
        fig = _surface_figure(spec)
    elif spec.kind == "levelcurves":
        fig = _levelcurves_figure(spec, levels)
    else:
        fig = _slice_figure(spec)
    fig.savefig(spec.output_path, dpi=150)
    plt.close(fig)
    return fig


def _surface_figure(spec: FigureSpec):
    kd, ks, values = read_grid_csv(spec.input_path)
    fig = plt.figure(figsize=(7, 5.5))
    ax = fig.add_subplot(projection="3d")
    kd_mesh, ks_mesh = np.meshgrid(kd, ks, indexing="ij")
    ax.plot_surface(kd_mesh, ks_mesh, values, cmap="viridis", linewidth=0, antialiased=True)
    ax.set_xlabel(spec.kd_label)
    ax.set_ylabel(spec.ks_label)
    ax.set_zlabel(spec.ka_label)
    ax.set_title(spec.title or "Global system availability")
    return fig


def _levelcurves_figure(spec: FigureSpec, levels):
    kd, ks, values = read_grid_csv(spec.input_path)
    fig, ax = plt.subplots(figsize=(6.5, 5.5))
    usable = [lv for lv in levels if values.min() < lv < values.max()]
    if usable:
        # contour expects Z indexed [y, x], our values are [kd, ks]
        contour_set = ax.contour(kd, ks, values.T, levels=usable, cmap="viridis")
        ax.clabel(contour_set, inline=True, fontsize=8)
    ax.set_xlabel(spec.kd_label)
    ax.set_ylabel(spec.ks_label)
    ax.set_title(spec.title or "Global system availability (level curves)")
    return fig


def _slice_figure(spec: FigureSpec):
    ks_fixed, kd, ka = read_slice_csv(spec.input_path)
    fig, ax = plt.subplots(figsize=(6.5, 4.5))
    ax.plot(kd, ka, lw=2)
    ax.set_xlabel(spec.kd_label)
    ax.set_ylabel(spec.ka_label)
    ax.set_xlim(0, 1)
    ax.set_ylim(0, 1)
    ax.grid(True, alpha=0.3)
    if spec.title:
        ax.set_title(spec.title)
    elif ks_fixed is not None:
        ax.set_title(f"Global system availability for ks={ks_fixed:g}")
    else:
        ax.set_title("Global system availability slice")
    return fig
