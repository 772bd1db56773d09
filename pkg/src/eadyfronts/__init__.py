"""Semigeostrophic Eady waves and their fronts.

Construction of unstable normal modes from the dispersion relation,
tracking of projection singularities on the dual solution manifold,
Chynoweth-Sewell front construction by convex envelopes, velocity-field
reconstruction, and pseudo-Riemannian curvature diagnostics, all in
dimensionless variables.
"""

__version__ = "0.1.0"

from .model import (
    DimensionalScales,
    EadyParams,
    basic_state_P0,
    basic_state_S0,
    default_params,
    params_from_scales,
)
from .spectral import (
    ComplexFrequency,
    VerticalProfile,
    WaveMode,
    WaveVector,
    boundary_coefficients,
    build_mode,
    dispersion_rhs,
    max_growth,
    neutral_wavenumber,
    solve_omega,
)
from .wavefield import (
    CylindricalSolution,
    FrameRotation,
    JetBundle,
    eval_jet,
    f_field,
    f_jet,
    rotate_frame,
)
from .singularity import (
    CatastropheTimes,
    SingularCurve,
    SingularPoint,
    catastrophe_times,
    classify_point,
    singular_locus,
)
from .fronts import (
    FrontSection,
    FrontSurface,
    envelope_section,
    equal_area_check,
    front_surface,
    hull_section,
    rankine_hugoniot_check,
)
from .kinematics import (
    ObservationWindow,
    PhaseSample,
    full_velocity,
    multivalued_P,
    project,
    velocity_snapshot,
    vertical_velocity,
)
from .geometry import (
    AmbientMetric,
    CurvatureSample,
    MongeAmpereStructure,
    PullbackMetric,
    ambient_metric,
    curvature_field,
    pullback,
    rotated_curvature,
    scalar_curvature,
)

__all__ = [name for name in dir() if not name.startswith("_")]
