"""Spatial operator, ADER time stepping, sources and receivers."""

from .ader import (
    AderIntegrator,
    AderWorkspace,
    ader_predictor,
    ader_step,
    ader_time_average,
    ader_update,
    cfl_timestep,
)
from .operator import (
    NUM_FIELDS,
    EnergyBudget,
    SpatialOperator,
    apply_mass,
    conservative_flux,
    element_rhs,
    extract_face_trace,
    ncp_flux,
    volume_bracket,
)
from .receivers import (
    CHANNELS,
    Receiver,
    ReceiverSite,
    SeismogramBuffer,
    locate_receiver,
    sample_receiver,
)
from .sources import (
    LOH1,
    ForceSource,
    GaussCosine,
    MomentSource,
    Ricker,
    Source,
    SourceStencil,
    TimeFunction,
    eval_time_function,
    inject_source,
    integrate_time_function,
)

__all__ = [
    "AderIntegrator",
    "AderWorkspace",
    "ader_predictor",
    "ader_step",
    "ader_time_average",
    "ader_update",
    "cfl_timestep",
    "NUM_FIELDS",
    "EnergyBudget",
    "SpatialOperator",
    "apply_mass",
    "conservative_flux",
    "element_rhs",
    "extract_face_trace",
    "ncp_flux",
    "volume_bracket",
    "CHANNELS",
    "Receiver",
    "ReceiverSite",
    "SeismogramBuffer",
    "locate_receiver",
    "sample_receiver",
    "LOH1",
    "ForceSource",
    "GaussCosine",
    "MomentSource",
    "Ricker",
    "Source",
    "SourceStencil",
    "TimeFunction",
    "eval_time_function",
    "inject_source",
    "integrate_time_function",
]
