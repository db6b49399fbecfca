"""Travelling waves of the Dullin-Gottwald-Holm equation.

Classification of bounded travelling waves, profile synthesis by singular
quadrature, weak-form verification and a pseudo-spectral evolution check.
"""
from .classify import (
    PhaseDiagram,
    WaveClass,
    classify,
    classify_dgh,
    classify_kdv,
    classify_roots,
    composite_compatible,
    problem_from_roots,
    sign_oracle,
    stumpon_constant,
    sweep,
)
from .codes import WaveKind
from .errors import (
    Blowup,
    BurgersCaseExcluded,
    CFLViolation,
    DGHError,
    IncompatibleSegments,
    InvalidInterval,
    NoPole,
    PoleEvaluation,
    StumponConstantViolated,
    WrongClass,
)
from .evolution import (
    EvolutionState,
    SpectralGrid,
    cfl_limit,
    evolve,
    evolve_snapshots,
    grid_for,
    helmholtz_invert,
    initial_condition,
    recovered_speed,
    rhs,
    shape_error,
    shape_fit,
)
from .kernels import BACKEND
from .model import (
    Cubic,
    ModelParams,
    PotentialSpectrum,
    TravelingWaveProblem,
    constants_from_roots,
    cubic_of,
    make_problem,
    pole_location,
    potential_eval,
    solve_cubic,
    spectrum,
)
from .synthesis import (
    Segment,
    WaveProfile,
    glue_composite,
    half_period,
    synth_cuspon,
    synth_decay,
    synth_peakon,
    synth_periodic,
    synth_stumpon,
    synthesize,
)
from .verify import (
    ResidualReport,
    TestFunctionSpec,
    decay_rate,
    place_test_functions,
    quadrature_residual,
    regularity_check,
    weak_residual,
)

__version__ = "0.1.0"
