"""Validated run configuration."""

from pathlib import Path
from typing import List, Literal, Optional, Tuple

from pydantic import BaseModel, ConfigDict, Field, field_validator, model_validator

from ..flux import BoundarySpec
from ..media import (
    ORTHOTROPIC_KEYS,
    Layer,
    LayeredMedium,
    Material,
    isotropic_from_speeds,
    orthotropic,
)
from ..solver import CHANNELS

Vector3 = Tuple[float, float, float]


class Block(BaseModel):
    model_config = ConfigDict(extra="forbid")


class TopographyBlock(Block):
    """Analytic surface over the two horizontal axes."""

    kind: Literal["gaussian_hill", "sinusoidal"] = "gaussian_hill"
    height: float = 0.0
    width: float = 1.0
    center: Optional[Tuple[float, float]] = None
    amplitude: float = 0.0
    wavelength: float = 1.0

    @model_validator(mode="after")
    def _positive_scales(self):
        if self.kind == "gaussian_hill" and self.width <= 0:
            raise ValueError("gaussian_hill width must be positive")
        if self.kind == "sinusoidal" and self.wavelength <= 0:
            raise ValueError("sinusoidal wavelength must be positive")
        return self


class MeshBlock(Block):
    nx: int = Field(ge=1)
    ny: int = Field(ge=1)
    nz: int = Field(ge=1)
    domain: Tuple[float, float, float, float, float, float]
    depth_axis: Literal["x", "y", "z"] = "y"
    topography_file: Optional[Path] = None
    topography: Optional[TopographyBlock] = None

    @field_validator("domain")
    @classmethod
    def _increasing(cls, v):
        if v[1] <= v[0] or v[3] <= v[2] or v[5] <= v[4]:
            raise ValueError("domain must be (x0, x1, y0, y1, z0, z1) with x0 < x1 etc.")
        return v

    @model_validator(mode="after")
    def _one_surface(self):
        if self.topography_file is not None and self.topography is not None:
            raise ValueError("give either topography_file or topography, not both")
        return self


class DiscretizationBlock(Block):
    order: int = Field(3, ge=1, le=15)
    nodes: Literal["GLL", "GL"] = "GLL"


class MaterialBlock(Block):
    kind: Literal["isotropic", "orthotropic"] = "isotropic"
    rho: float = Field(gt=0)
    cp: Optional[float] = None
    cs: Optional[float] = None
    c11: Optional[float] = None
    c12: Optional[float] = None
    c13: Optional[float] = None
    c22: Optional[float] = None
    c23: Optional[float] = None
    c33: Optional[float] = None
    c44: Optional[float] = None
    c55: Optional[float] = None
    c66: Optional[float] = None

    @model_validator(mode="after")
    def _complete(self):
        if self.kind == "isotropic":
            if self.cp is None or self.cs is None:
                raise ValueError("isotropic material needs cp and cs")
        else:
            missing = [k for k in ORTHOTROPIC_KEYS if getattr(self, k) is None]
            if missing:
                raise ValueError(f"orthotropic material needs {', '.join(missing)}")
        self.build()
        return self

    def build(self) -> Material:
        if self.kind == "isotropic":
            return isotropic_from_speeds(self.rho, self.cp, self.cs)
        return orthotropic(self.rho, **{k: getattr(self, k) for k in ORTHOTROPIC_KEYS})


class LayerBlock(MaterialBlock):
    depth_min: float
    depth_max: float


class BoundaryBlock(Block):
    x_min: str = "absorbing"
    x_max: str = "absorbing"
    y_min: str = "absorbing"
    y_max: str = "absorbing"
    z_min: str = "absorbing"
    z_max: str = "absorbing"

    @field_validator("*")
    @classmethod
    def _known(cls, v: str):
        if v.strip() != "periodic":
            BoundarySpec.parse(v)
        return v.strip()


class TimeBlock(Block):
    t_end: float = Field(gt=0)
    cfl: float = Field(0.9, gt=0, le=1.0)
    max_steps: Optional[int] = Field(None, ge=1)


class SourceBlock(Block):
    type: Literal["moment", "force"] = "moment"
    location: Vector3
    moment: Optional[Tuple[Vector3, Vector3, Vector3]] = None
    force: Optional[Vector3] = None
    timefn: Literal["loh1", "gauss_cosine", "ricker"] = "loh1"
    T: float = Field(0.1, gt=0)
    f0: Optional[float] = Field(None, gt=0)
    t0: Optional[float] = None

    @model_validator(mode="after")
    def _consistent(self):
        if self.type == "moment" and self.moment is None:
            raise ValueError("moment source needs a 3x3 moment")
        if self.type == "force" and self.force is None:
            raise ValueError("force source needs a force vector")
        if self.timefn in ("gauss_cosine", "ricker") and self.f0 is None:
            raise ValueError(f"{self.timefn} time function needs f0")
        return self


class ReceiverBlock(Block):
    name: str = Field(min_length=1)
    location: Vector3
    interval: int = Field(1, ge=1)
    channels: List[str] = Field(default_factory=lambda: list(CHANNELS))

    @field_validator("channels")
    @classmethod
    def _channels(cls, v):
        unknown = [c for c in v if c not in CHANNELS]
        if unknown:
            raise ValueError(f"unknown channels {unknown}")
        return v


class OutputBlock(Block):
    directory: Optional[Path] = None
    snapshot_every: int = Field(0, ge=0)
    energy_every: Optional[int] = Field(None, ge=1)


class RunConfig(Block):
    """A complete scenario: mesh, media, boundaries, time span, sources, receivers."""

    preset: Optional[str] = None
    mesh: MeshBlock
    discretization: DiscretizationBlock = Field(default_factory=DiscretizationBlock)
    material: Optional[MaterialBlock] = None
    layers: Optional[List[LayerBlock]] = None
    boundary: BoundaryBlock = Field(default_factory=BoundaryBlock)
    time: TimeBlock
    sources: List[SourceBlock] = Field(default_factory=list)
    receivers: List[ReceiverBlock] = Field(default_factory=list)
    output: OutputBlock = Field(default_factory=OutputBlock)

    @model_validator(mode="after")
    def _media(self):
        if (self.material is None) == (self.layers is None):
            raise ValueError("give exactly one of [material] or [[layers]]")
        if self.layers is not None and not self.layers:
            raise ValueError("[[layers]] must not be empty")
        names = [r.name for r in self.receivers]
        duplicates = sorted({n for n in names if names.count(n) > 1})
        if duplicates:
            raise ValueError(f"duplicate receiver names {duplicates}")
        return self

    def medium(self):
        """A Material, or a LayeredMedium along the mesh depth axis."""
        if self.material is not None:
            return self.material.build()
        layers = [
            Layer(block.depth_min, block.depth_max, block.build()) for block in self.layers
        ]
        return LayeredMedium(layers, depth_axis=self.mesh.depth_axis)
