"""Iso-level polylines from a sampled availability grid.

Marching squares over each grid cell: corners at or above the level count
as inside, crossing points are linearly interpolated along cell edges, and
saddle cells are split by comparing the cell-center average against the
level. Segments are chained into polylines; closed loops repeat their
first vertex.
"""

from __future__ import annotations

import json

from .dsl import format_number

Point = tuple[float, float]
Polyline = list[Point]


def contours(grid, levels) -> list[tuple[float, list[Polyline]]]:
    """One (level, polylines) entry per requested level.

    Levels that the grid never crosses simply yield no polylines.
    """
    return [(float(level), _level_polylines(grid, float(level))) for level in levels]


def _level_polylines(grid, level: float) -> list[Polyline]:
    values = grid.values
    kd = grid.kd_samples
    ks = grid.ks_samples
    above = values >= level
    points: dict[tuple, Point] = {}
    segments: list[tuple[tuple, tuple]] = []

    def edge_point(edge):
        # Edge keys: (0, i, j) runs from node (i, j) to (i+1, j) along kd;
        # (1, i, j) runs from node (i, j) to (i, j+1) along ks.
        if edge not in points:
            axis, i, j = edge
            if axis == 0:
                v1, v2 = values[i, j], values[i + 1, j]
                t = (level - v1) / (v2 - v1)
                points[edge] = (float(kd[i] + t * (kd[i + 1] - kd[i])), float(ks[j]))
            else:
                v1, v2 = values[i, j], values[i, j + 1]
                t = (level - v1) / (v2 - v1)
                points[edge] = (float(kd[i]), float(ks[j] + t * (ks[j + 1] - ks[j])))
        return points[edge]

    for i in range(len(kd) - 1):
        for j in range(len(ks) - 1):
            a00 = above[i, j]
            a10 = above[i + 1, j]
            a11 = above[i + 1, j + 1]
            a01 = above[i, j + 1]
            bottom, right, top, left = (0, i, j), (1, i + 1, j), (0, i, j + 1), (1, i, j)
            crossed = []
            if a00 != a10:
                crossed.append(bottom)
            if a10 != a11:
                crossed.append(right)
            if a11 != a01:
                crossed.append(top)
            if a01 != a00:
                crossed.append(left)
            if not crossed:
                continue
            if len(crossed) == 2:
                pairs = [tuple(crossed)]
            else:
                # Saddle: opposite corners share a class. The center average
                # decides which diagonal the inside region connects through.
                center = (values[i, j] + values[i + 1, j] + values[i + 1, j + 1] + values[i, j + 1]) / 4.0
                if (center >= level) == a00:
                    pairs = [(bottom, right), (top, left)]
                else:
                    pairs = [(bottom, left), (top, right)]
            for edge_a, edge_b in pairs:
                if edge_point(edge_a) != edge_point(edge_b):
                    segments.append((edge_a, edge_b))

    return [[points[e] for e in path] for path in _chain(segments)]


def _chain(segments: list[tuple[tuple, tuple]]) -> list[list[tuple]]:
    adjacency: dict[tuple, list[tuple[int, tuple]]] = {}
    for index, (edge_a, edge_b) in enumerate(segments):
        adjacency.setdefault(edge_a, []).append((index, edge_b))
        adjacency.setdefault(edge_b, []).append((index, edge_a))
    used = [False] * len(segments)
    paths: list[list[tuple]] = []

    def walk(start: tuple) -> list[tuple]:
        path = [start]
        current = start
        while True:
            step = None
            for index, other in adjacency[current]:
                if not used[index]:
                    used[index] = True
                    step = other
                    break
            if step is None:
                return path
            path.append(step)
            current = step

    # Open curves first, from their loose ends; whatever remains is a loop.
    for edge in sorted(e for e, links in adjacency.items() if len(links) == 1):
        if any(not used[index] for index, _ in adjacency[edge]):
            paths.append(walk(edge))
    for edge in sorted(adjacency):
        if any(not used[index] for index, _ in adjacency[edge]):
            paths.append(walk(edge))
    return paths


def write_contours_text(records, path) -> None:
    """One block per polyline: a ``level=`` line, then one ``kd ks`` vertex
    per line, with a blank line after each polyline."""
    lines: list[str] = []
    for level, polylines in records:
        for polyline in polylines:
            lines.append(f"level={format_number(level)}")
            lines.extend(f"{format_number(x)} {format_number(y)}" for x, y in polyline)
            lines.append("")
    with open(path, "w", encoding="utf-8", newline="") as fh:
        fh.write("\n".join(lines))


def write_contours_json(records, path) -> None:
    """Same records as the text form, one JSON object per polyline."""
    payload = [
        {"level": level, "vertices": [[x, y] for x, y in polyline]}
        for level, polylines in records
        for polyline in polylines
    ]
    with open(path, "w", encoding="utf-8", newline="") as fh:
        json.dump(payload, fh, indent=2)
        fh.write("\n")
