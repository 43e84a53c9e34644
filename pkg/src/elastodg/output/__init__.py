"""Atomic, asynchronous writers for run artifacts."""

from .writers import STATE_NAMES, OutputManager, format_csv, format_vtk

__all__ = ["STATE_NAMES", "OutputManager", "format_csv", "format_vtk"]
