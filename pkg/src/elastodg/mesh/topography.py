"""Topography ingestion and synthetic surfaces."""

import logging
from dataclasses import dataclass
from pathlib import Path
from typing import Iterable, List, Tuple, Union

import numpy as np

from ..exceptions import ConfigurationError

logger = logging.getLogger("elastodg")


@dataclass(frozen=True, eq=False)
class TopographySurface:
    """Elevation samples on a regular (x, z) grid with bilinear interpolation.

    ``elevation[i, k]`` sits at (origin[0] + i*spacing, origin[1] + k*spacing).
    Queries outside the footprint are clamped to the edge values.
    """

    nx: int
    nz: int
    spacing: float
    elevation: np.ndarray
    origin: Tuple[float, float] = (0.0, 0.0)

    def __call__(self, u, w) -> np.ndarray:
        u = np.asarray(u, dtype=np.float64)
        w = np.asarray(w, dtype=np.float64)
        fu = np.clip((u - self.origin[0]) / self.spacing, 0, self.nx - 1)
        fw = np.clip((w - self.origin[1]) / self.spacing, 0, self.nz - 1)
        i0 = np.minimum(np.floor(fu).astype(int), self.nx - 2)
        k0 = np.minimum(np.floor(fw).astype(int), self.nz - 2)
        tu, tw = fu - i0, fw - k0
        e = self.elevation
        return (
            (1 - tu) * (1 - tw) * e[i0, k0]
            + tu * (1 - tw) * e[i0 + 1, k0]
            + (1 - tu) * tw * e[i0, k0 + 1]
            + tu * tw * e[i0 + 1, k0 + 1]
        )

    def anchored(self, origin: Tuple[float, float]) -> "TopographySurface":
        return TopographySurface(self.nx, self.nz, self.spacing, self.elevation, origin)

    @property
    def extent(self) -> Tuple[float, float]:
        return ((self.nx - 1) * self.spacing, (self.nz - 1) * self.spacing)


def ingest_topography(reader: Iterable[str]) -> TopographySurface:
    """Parse "nx nz spacing" followed by nx*nz elevations, x fastest.

    Raises:
        ConfigurationError: malformed header, count mismatch or non-finite value,
            with the offending line number
    """
    lines = iter(enumerate(reader, start=1))
    header_line, header = next(lines, (1, ""))
    fields = header.split()
    try:
        if len(fields) != 3:
            raise ValueError(f"expected 'nx nz spacing', got {header.strip()!r}")
        nx, nz, spacing = int(fields[0]), int(fields[1]), float(fields[2])
        if nx < 2 or nz < 2 or not np.isfinite(spacing) or spacing <= 0:
            raise ValueError("need nx >= 2, nz >= 2 and a positive spacing")
    except ValueError as e:
        raise ConfigurationError(
            "Malformed topography header", [(header_line, str(e))]
        )

    values: List[float] = []
    last_line = header_line
    for lineno, text in lines:
        last_line = lineno
        for token in text.split():
            try:
                value = float(token)
            except ValueError:
                raise ConfigurationError(
                    "Malformed topography value", [(lineno, f"cannot parse {token!r}")]
                )
            if not np.isfinite(value):
                raise ConfigurationError(
                    "Non-finite topography value", [(lineno, f"got {token!r}")]
                )
            values.append(value)

    if len(values) != nx * nz:
        raise ConfigurationError(
            "Topography sample count mismatch",
            [(last_line, f"expected {nx * nz} values, found {len(values)}")],
        )
    elevation = np.array(values).reshape(nz, nx).T.copy()
    elevation.setflags(write=False)
    logger.debug(f"Read {nx}x{nz} topography grid at {spacing} m spacing")
    return TopographySurface(nx=nx, nz=nz, spacing=spacing, elevation=elevation)


def load_topography(path: Union[str, Path]) -> TopographySurface:
    with open(path, "r", encoding="utf-8") as f:
        return ingest_topography(f)


def gaussian_hill(height: float, width: float, center: Tuple[float, float]):
    """Smooth hill of given height and Gaussian half-width."""

    def surface(u, w):
        r2 = (u - center[0]) ** 2 + (w - center[1]) ** 2
        return height * np.exp(-r2 / (2.0 * width**2))

    return surface


def sinusoidal_surface(amplitude: float, wavelength: float):
    """Product of sines in both horizontal directions."""
    k = 2.0 * np.pi / wavelength

    def surface(u, w):
        return amplitude * np.sin(k * u) * np.sin(k * w)

    return surface


def max_slope(surface, extent: Tuple[float, float, float, float], samples=201) -> float:
    """Largest surface gradient magnitude on a sample grid over (u0, u1, w0, w1)."""
    u = np.linspace(extent[0], extent[1], samples)
    w = np.linspace(extent[2], extent[3], samples)
    U, W = np.meshgrid(u, w, indexing="ij")
    H = surface(U, W)
    gu, gw = np.gradient(H, u, w)
    return float(np.max(np.hypot(gu, gw)))


def synthetic_topography(kind: str, **params):
    """Named analytic surface: ``gaussian_hill`` or ``sinusoidal``."""
    builders = {"gaussian_hill": gaussian_hill, "sinusoidal": sinusoidal_surface}
    if kind not in builders:
        raise ConfigurationError(
            f"Unknown synthetic topography {kind!r}; expected {' or '.join(builders)}"
        )
    try:
        return builders[kind](**params)
    except TypeError as e:
        raise ConfigurationError(f"Bad parameters for {kind} topography: {e}")
