"""Output storage for run artifacts: seismograms, energy, snapshots, manifest."""

import io
import json
import logging
import uuid
from pathlib import Path
from typing import Any, Dict, List, Optional, Sequence

import aiofiles
import aiofiles.os
import numpy as np

from ..config import Settings

logger = logging.getLogger("elastodg")

SIGNIFICANT_DIGITS = 17
STATE_NAMES = (
    "v_x",
    "v_y",
    "v_z",
    "sigma_xx",
    "sigma_yy",
    "sigma_zz",
    "sigma_xy",
    "sigma_xz",
    "sigma_yz",
)


def format_csv(header: Sequence[str], rows: np.ndarray) -> str:
    """Comma-separated table with a header line and full-precision values."""
    buf = io.StringIO()
    buf.write(",".join(header) + "\n")
    rows = np.asarray(rows, dtype=np.float64).reshape(-1, len(header))
    for row in rows:
        buf.write(",".join(f"{x:.{SIGNIFICANT_DIGITS}g}" for x in row) + "\n")
    return buf.getvalue()


def format_vtk(points: np.ndarray, values: np.ndarray, t: float) -> str:
    """Legacy VTK ASCII POLYDATA with one scalar array per state component."""
    points = np.asarray(points).reshape(-1, 3)
    values = np.asarray(values).reshape(-1, len(STATE_NAMES))
    n = points.shape[0]
    buf = io.StringIO()
    buf.write("# vtk DataFile Version 3.0\n")
    buf.write(f"elastodg snapshot t={t:.{SIGNIFICANT_DIGITS}g}\n")
    buf.write("ASCII\nDATASET POLYDATA\n")
    buf.write(f"POINTS {n} double\n")
    for p in points:
        buf.write(f"{p[0]:.17g} {p[1]:.17g} {p[2]:.17g}\n")
    buf.write(f"VERTICES {n} {2 * n}\n")
    for i in range(n):
        buf.write(f"1 {i}\n")
    buf.write(f"POINT_DATA {n}\n")
    for c, name in enumerate(STATE_NAMES):
        buf.write(f"SCALARS {name} double 1\nLOOKUP_TABLE default\n")
        buf.write("\n".join(f"{x:.17g}" for x in values[:, c]) + "\n")
    return buf.getvalue()


class OutputManager:
    """Writes run artifacts into one directory, each file atomically."""

    def __init__(self, directory: Optional[Path] = None):
        if directory is None:
            directory = Settings().OUTPUT_ROOT
        self.directory = Path(directory).resolve()
        self.directory.mkdir(parents=True, exist_ok=True)
        self.written: List[Path] = []

    def path(self, name: str) -> Path:
        return self.directory / name

    async def write_text(self, name: str, text: str) -> Path:
        """Write to a temp file beside the target, then rename it into place."""
        target = self.path(name)
        tmp = target.with_name(f".{target.name}.{uuid.uuid4().hex}.tmp")
        try:
            async with aiofiles.open(tmp, "w", encoding="utf-8", newline="\n") as f:
                await f.write(text)
            await aiofiles.os.replace(tmp, target)
        except BaseException:
            if tmp.exists():
                await aiofiles.os.remove(tmp)
            raise
        self.written.append(target)
        logger.debug(f"Wrote {target}")
        return target

    async def write_seismogram(self, name: str, header: Sequence[str], rows) -> Path:
        return await self.write_text(f"{name}.csv", format_csv(header, rows))

    async def write_energy(self, times: Sequence[float], energies: Sequence[float]) -> Path:
        rows = np.column_stack([times, energies]) if len(times) else np.empty((0, 2))
        return await self.write_text("energy.csv", format_csv(("t", "E"), rows))

    async def write_snapshot(self, index: int, points, values, t: float) -> Path:
        return await self.write_text(f"snapshot_{index:06d}.vtk", format_vtk(points, values, t))

    async def write_manifest(self, manifest: Dict[str, Any]) -> Path:
        return await self.write_text(
            "manifest.json", json.dumps(manifest, indent=2, sort_keys=True) + "\n"
        )
