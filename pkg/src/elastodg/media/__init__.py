"""Elastic media: materials, wavespeeds, impedances and layered stacks."""

from .material import (
    ORTHOTROPIC_KEYS,
    Material,
    MaterialKind,
    WavespeedSet,
    axis_wavespeeds,
    block_p,
    block_p_inverse,
    effective_normal_speeds,
    energy_density,
    impedances,
    isotropic,
    isotropic_from_speeds,
    orthotropic,
)
from .layered import Layer, LayeredMedium, MaterialFunction, homogeneous

__all__ = [
    "ORTHOTROPIC_KEYS",
    "Material",
    "MaterialKind",
    "WavespeedSet",
    "axis_wavespeeds",
    "block_p",
    "block_p_inverse",
    "effective_normal_speeds",
    "energy_density",
    "impedances",
    "isotropic",
    "isotropic_from_speeds",
    "orthotropic",
    "Layer",
    "LayeredMedium",
    "MaterialFunction",
    "homogeneous",
]
