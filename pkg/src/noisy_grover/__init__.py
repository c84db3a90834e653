"""Density-matrix simulation of Grover's search under local Kraus noise."""

from .analysis import (
    ComplexityBudget,
    SweepResult,
    ThresholdResult,
    alpha_threshold,
    complexity_budget,
    p_min,
    rerun_budget,
    sweep,
)
from .channel import (
    KrausChannel,
    NoiseFamily,
    NoiseKind,
    apply_kraus,
    apply_local_noise,
    expand_local_kraus,
    make_family,
)
from .grover import (
    GroverInstance,
    closed_form_success,
    diffusion_matrix,
    grover_step,
    oracle_matrix,
    run_noisy,
)
from .state import (
    DensityMatrix,
    DensityReport,
    DensityValidationError,
    PureState,
    basis_state,
    density_from_pure,
    success_probability,
    uniform_superposition,
    validate_density,
)

__version__ = "0.1.0"
