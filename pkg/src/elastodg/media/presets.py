"""Reference media used by the desk-scale scenarios."""

from .material import isotropic_from_speeds, orthotropic

# Two-layer benchmark: soft layer over a hard half-space.
LOH1_LAYER = isotropic_from_speeds(2600.0, 4000.0, 2000.0)
LOH1_HALFSPACE = isotropic_from_speeds(2700.0, 6000.0, 3464.0)
LOH1_LAYER_THICKNESS = 1000.0

GRANITE = isotropic_from_speeds(2670.0, 6000.0, 3464.0)

_APATITE_C11 = 167e9
_APATITE_C12 = 13.1e9
APATITE = orthotropic(
    3190.0,
    c11=_APATITE_C11,
    c12=_APATITE_C12,
    c13=66e9,
    c22=_APATITE_C11,
    c23=66e9,
    c33=140e9,
    c44=66.3e9,
    c55=66.3e9,
    c66=0.5 * (_APATITE_C11 - _APATITE_C12),
)

UNIT_MEDIUM = isotropic_from_speeds(1.0, 2.0, 1.0)
