"""Trigonometric polynomials, norms of uniformly convergent Fourier series,
and pointwise multiplier bounds."""

from .constructions import (
    KernelSpec,
    dirichlet,
    exponential,
    fejer,
    fejer_smooth,
    random_trig_poly,
    salem_g,
)
from .errors import (
    CoefficientFileError,
    DegreeTooLargeError,
    DomainError,
    GridTooSmallError,
    SpecParseError,
    ToleranceViolation,
    UCFourierError,
)
from .experiments import EXPERIMENTS, ExperimentTable, RunConfig, run_experiment
from .funcspec import parse_function, parse_n_list
from .kernels import BACKEND
from .multiplier import (
    MultiplierEstimate,
    commutator,
    commutator_sup_bound,
    estimate_multiplier,
    mu_lower_empirical,
    mu_upper_dini,
    mu_upper_log,
    mu_upper_omega,
)
from .norms import (
    NormReport,
    WeightSequence,
    a_gamma_norm,
    a_norm,
    c_norm,
    dini_integral,
    log_weighted_a_norm,
    modulus_of_continuity,
    norm_report,
    sin_log_integral,
    sobolev_half_norm,
    u_norm,
    u_norm_asym,
    uniform_dini,
    variation_norm,
)
from .trigpoly import (
    GridFunction,
    TrigPoly,
    analyze,
    derivative,
    evaluate,
    modulate,
    multiply,
    partial_sum,
    partial_sum_asym,
    read_coefficients,
    sup_norm,
    synthesize,
    write_coefficients,
)

__version__ = "0.1.0"
