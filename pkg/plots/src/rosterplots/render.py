"""Render experiment CSVs as tpr x rfpr heatmaps.

Reads the summary CSV written by the sweep harness (or the ratio CSV written
by its report step) and draws one heatmap per call.  Ratio plots overlay a
unit contour so the break-even frontier against the fixed-k baseline is
visible at a glance.  Rendering is read-only over the CSV and deterministic:
byte-identical input plus a fixed style config yields a pixel-identical image.
"""

from __future__ import annotations

import csv
import json
from importlib import resources
from pathlib import Path

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt
import numpy as np

__all__ = ["PlotError", "load_style", "render"]

# Grid rows in the summary CSV carry this policy tag; fixed-k baseline rows
# have no tpr/rfpr coordinates and are skipped.
_GRID_POLICY = "ml"

# Rendering the "ratio" metric triggers the unit-contour overlay.
_RATIO_METRIC = "ratio"

_IDENTITY_COLUMNS = frozenset({"policy", "tpr", "rfpr", "scenario", "status"})


class PlotError(Exception):
    """Unknown metric column, malformed CSV, or bad style config."""


def load_style(path: str | Path | None = None) -> dict:
    """Return the style dict: package defaults overlaid with ``path``.

    The style file is a flat JSON object; keys not present in the defaults
    are rejected so typos fail loudly rather than silently restyling nothing.
    """
    text = resources.files("rosterplots").joinpath("default_style.json").read_text()
    style: dict = json.loads(text)
    if path is not None:
        try:
            user = json.loads(Path(path).read_text())
        except json.JSONDecodeError as exc:
            raise PlotError(f"style config {path} is not valid JSON: {exc}") from exc
        if not isinstance(user, dict):
            raise PlotError(f"style config {path} must hold a JSON object")
        unknown = sorted(set(user) - set(style))
        if unknown:
            raise PlotError(f"unknown style keys: {', '.join(unknown)}")
        style.update(user)
    return style


def render(
    results_csv: str | Path,
    metric: str,
    out_path: str | Path,
    style: str | Path | dict | None = None,
) -> Path:
    """Draw ``metric`` over the tpr x rfpr grid of ``results_csv``.

    The grid shape follows the data: an 11x11 sweep gives an 11x11 heatmap,
    a 3x3 sweep a 3x3 one.  Cells absent from the CSV are left blank.  When
    ``metric`` is ``"ratio"`` a dashed contour is drawn where the value
    crosses 1.0 (needs at least a 2x2 grid).  The image format follows the
    ``out_path`` suffix (.png or .svg).
    """
    if not isinstance(style, dict):
        style = load_style(style)
    tprs, rfprs, grid = _grid_from_csv(Path(results_csv), metric)

    fig, ax = plt.subplots(figsize=tuple(style["figsize"]))
    try:
        mesh = ax.pcolormesh(
            _edges(rfprs),
            _edges(tprs),
            np.ma.masked_invalid(grid),
            cmap=style["colormap"],
            shading="flat",
        )
        fig.colorbar(mesh, ax=ax, label=metric)
        ax.set_xlabel("rfpr")
        ax.set_ylabel("tpr")
        if style["annotate"]:
            _annotate(ax, tprs, rfprs, grid, style)
        if metric == _RATIO_METRIC and len(tprs) >= 2 and len(rfprs) >= 2:
            ax.contour(
                rfprs,
                tprs,
                np.ma.masked_invalid(grid),
                levels=[1.0],
                colors=[style["contour_color"]],
                linestyles=[style["contour_style"]],
                linewidths=[style["contour_width"]],
            )
        out = Path(out_path)
        _save(fig, out, style)
    finally:
        plt.close(fig)
    return out


def _grid_from_csv(path: Path, metric: str) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    """Parse the CSV into sorted axis values and a (tpr, rfpr) value grid."""
    with path.open(newline="") as handle:
        reader = csv.DictReader(handle)
        columns = reader.fieldnames
        if columns is None:
            raise PlotError(f"{path} is empty")
        missing = {"tpr", "rfpr"} - set(columns)
        if missing:
            raise PlotError(f"{path} lacks required columns: {', '.join(sorted(missing))}")
        if metric not in columns or metric in _IDENTITY_COLUMNS:
            metrics = [c for c in columns if c not in _IDENTITY_COLUMNS]
            raise PlotError(
                f"unknown metric {metric!r}; {path.name} offers: {', '.join(metrics)}"
            )
        rows = list(reader)

    points: dict[tuple[float, float], float] = {}
    for index, row in enumerate(rows, start=2):
        if "policy" in row and row["policy"] != _GRID_POLICY:
            continue
        try:
            key = (float(row["tpr"]), float(row["rfpr"]))
            points[key] = float(row[metric])
        except (TypeError, ValueError) as exc:
            raise PlotError(f"{path} line {index}: non-numeric grid row ({exc})") from exc
    if not points:
        raise PlotError(f"{path} holds no grid rows")

    tprs = np.array(sorted({t for t, _ in points}))
    rfprs = np.array(sorted({r for _, r in points}))
    grid = np.full((len(tprs), len(rfprs)), np.nan)
    for (t, r), value in points.items():
        grid[np.searchsorted(tprs, t), np.searchsorted(rfprs, r)] = value
    return tprs, rfprs, grid


def _edges(values: np.ndarray) -> np.ndarray:
    """Cell boundaries around the axis values; tolerates a single-value axis."""
    if len(values) == 1:
        return np.array([values[0] - 0.05, values[0] + 0.05])
    mid = (values[:-1] + values[1:]) / 2.0
    first = values[0] - (values[1] - values[0]) / 2.0
    last = values[-1] + (values[-1] - values[-2]) / 2.0
    return np.concatenate([[first], mid, [last]])


def _annotate(ax, tprs, rfprs, grid, style: dict) -> None:
    finite = grid[np.isfinite(grid)]
    if finite.size == 0:
        return
    lo, hi = float(finite.min()), float(finite.max())
    span = hi - lo
    for i, t in enumerate(tprs):
        for j, r in enumerate(rfprs):
            value = grid[i, j]
            if not np.isfinite(value):
                continue
            # Light text on dark cells and vice versa.
            shade = 0.5 if span == 0 else (value - lo) / span
            color = "white" if shade < style["annotation_threshold"] else "black"
            ax.text(
                r,
                t,
                style["annotation_fmt"].format(value),
                ha="center",
                va="center",
                color=color,
                fontsize=style["annotation_fontsize"],
            )


def _save(fig, out: Path, style: dict) -> None:
    # Volatile metadata (SVG creation date, PNG software tag) is stripped so
    # identical inputs produce identical bytes.
    suffix = out.suffix.lower()
    metadata = {"Date": None} if suffix == ".svg" else {"Software": None}
    with matplotlib.rc_context({"svg.hashsalt": "rosterplots"}):
        fig.savefig(out, dpi=style["dpi"], metadata=metadata)
