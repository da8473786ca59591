"""Figures for reserve-sizing experiment CSVs: metric heatmaps and ratio plots."""

from rosterplots.render import PlotError, load_style, render

__all__ = ["PlotError", "load_style", "render"]
__version__ = "0.1.0"
