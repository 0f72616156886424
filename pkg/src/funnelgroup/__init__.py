"""Fuchsian Schottky groups from symmetric semicircle configurations.

Construction and verification of the groups, limit-set refinement with
Hausdorff-dimension estimates, and the closed-form topology / pants
decomposition reports of the quotient surfaces.
"""

from . import errors, limitset, mobius, schottky, surface, words
from ._kernels import backend_name
from .limitset import (
    DimensionEstimate,
    DimensionMethod,
    LimitSetSample,
    RefinementLayer,
    convergence_type_report,
    estimate_dimension_boxcount,
    estimate_dimension_pressure,
    refine,
    sample_points,
)
from .mobius import (
    DEFAULT_EPS,
    AxisData,
    BoundaryInterval,
    ExtendedMobiusMap,
    IsometryClass,
    apply_boundary,
    axis,
    classify,
    compose,
    image_interval,
    inverse,
    normalize,
    reflection_in_semicircle,
)
from .schottky import (
    ExtendedSchottkyGroup,
    NielsenBoundary,
    SchottkyConfig,
    SchottkyGroup,
    VerificationReport,
    build_extended_group,
    build_group,
    is_fuchsian_schottky,
    nielsen_boundary,
    orientation_subgroup_sample,
    verify_schottky_condition,
)
from .surface import (
    ClassicalFunnelSet,
    CollarSpec,
    PantsReport,
    SurfaceTopology,
    classical_funnels,
    collar,
    end_decomposition,
    fuchsian_topology,
    funnel_bound_comparison,
    pants_report,
)
from .words import (
    Word,
    WordLayer,
    enumerate_layer,
    evaluate,
    freeness_sample,
    purely_hyperbolic_sample,
)

__version__ = "0.1.0"
