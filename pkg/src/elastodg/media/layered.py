"""Depth-layered media sampled per element."""

from dataclasses import dataclass
from typing import Callable, List, Sequence, Tuple

import numpy as np

from ..exceptions import ConfigurationError
from .material import Material

AXIS_INDEX = {"x": 0, "y": 1, "z": 2}

MaterialFunction = Callable[[np.ndarray], Material]


@dataclass(frozen=True)
class Layer:
    """Material occupying depth_min <= depth < depth_max along the depth axis."""

    depth_min: float
    depth_max: float
    material: Material


class LayeredMedium:
    """Ordered, gap-free stack of layers along one Cartesian axis.

    Points above the first layer belong to it and points below the last
    layer belong to the last one.
    """

    def __init__(self, layers: Sequence[Layer], depth_axis: str = "y"):
        if depth_axis not in AXIS_INDEX:
            raise ConfigurationError(f"Unknown depth axis {depth_axis!r}")
        if not layers:
            raise ConfigurationError("A layered medium needs at least one layer")
        ordered = sorted(layers, key=lambda layer: layer.depth_min)
        for upper, lower in zip(ordered, ordered[1:]):
            if not np.isclose(upper.depth_max, lower.depth_min, rtol=0, atol=1e-9):
                raise ConfigurationError(
                    f"Layers must be contiguous: {upper.depth_max} != {lower.depth_min}"
                )
        for layer in ordered:
            if layer.depth_max <= layer.depth_min:
                raise ConfigurationError(
                    f"Empty layer [{layer.depth_min}, {layer.depth_max})"
                )
        self.layers: List[Layer] = ordered
        self.depth_axis = depth_axis
        self._axis = AXIS_INDEX[depth_axis]

    def __call__(self, point: np.ndarray) -> Material:
        depth = float(point[self._axis])
        for layer in self.layers:
            if depth < layer.depth_max:
                return layer.material
        return self.layers[-1].material

    @property
    def interfaces(self) -> Tuple[float, ...]:
        return tuple(layer.depth_max for layer in self.layers[:-1])


def homogeneous(material: Material) -> MaterialFunction:
    return lambda point: material
