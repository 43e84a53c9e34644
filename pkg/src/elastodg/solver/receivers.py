"""Receivers: point sampling of the nodal state and seismogram buffers."""

import logging
from dataclasses import dataclass, field
from typing import List, Sequence, Tuple

import numpy as np

from ..exceptions import ConfigurationError
from ..mesh import Mesh, locate_point
from ..spectral import interpolate_3d

logger = logging.getLogger("elastodg")

CHANNELS = (
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


@dataclass(frozen=True)
class Receiver:
    name: str
    location: Tuple[float, float, float]
    channels: Tuple[str, ...] = CHANNELS
    interval: int = 1

    def __post_init__(self):
        unknown = [c for c in self.channels if c not in CHANNELS]
        if unknown:
            raise ConfigurationError(
                f"Receiver {self.name!r} has unknown channels {unknown}; "
                f"choose from {', '.join(CHANNELS)}"
            )
        if self.interval < 1:
            raise ConfigurationError(
                f"Receiver {self.name!r} interval must be >= 1, got {self.interval}"
            )

    @property
    def channel_indices(self) -> List[int]:
        return [CHANNELS.index(c) for c in self.channels]


@dataclass(frozen=True, eq=False)
class ReceiverSite:
    """A receiver bound to its owning element and reference preimage."""

    receiver: Receiver
    element: int
    reference: np.ndarray


def locate_receiver(receiver: Receiver, mesh: Mesh) -> ReceiverSite:
    if not mesh.in_bounds(receiver.location):
        raise ConfigurationError(
            f"Receiver {receiver.name!r} at {tuple(receiver.location)} is outside the mesh"
        )
    element, ref = locate_point(mesh, receiver.location)
    logger.debug(f"Receiver {receiver.name} -> element {element}")
    return ReceiverSite(receiver=receiver, element=element, reference=ref)


def sample_receiver(Q: np.ndarray, mesh: Mesh, site: ReceiverSite) -> np.ndarray:
    """All nine state components at the receiver location."""
    return interpolate_3d(Q[site.element], site.reference, mesh.sbp, trailing=1)


@dataclass
class SeismogramBuffer:
    """Time series of one receiver, recorded every ``interval`` steps."""

    site: ReceiverSite
    times: List[float] = field(default_factory=list)
    samples: List[np.ndarray] = field(default_factory=list)

    @property
    def name(self) -> str:
        return self.site.receiver.name

    def record(self, step: int, t: float, Q: np.ndarray, mesh: Mesh) -> None:
        if step % self.site.receiver.interval:
            return
        self.times.append(float(t))
        self.samples.append(sample_receiver(Q, mesh, self.site))

    def as_array(self) -> np.ndarray:
        """(samples, 1 + channels) with time in the first column."""
        cols = self.site.receiver.channel_indices
        if not self.times:
            return np.empty((0, 1 + len(cols)))
        values = np.stack(self.samples)[:, cols]
        return np.column_stack([np.asarray(self.times), values])

    @property
    def header(self) -> Sequence[str]:
        return ("t",) + tuple(self.site.receiver.channels)
