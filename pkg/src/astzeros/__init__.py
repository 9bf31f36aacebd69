"""Analytic Stockwell transform of sampled signals, its zero set, and the
hyperbolic spatial statistics comparing those zeros to the zeros of the
hyperbolic Gaussian analytic function."""

from .geometry import (
    MetricConvention,
    cayley_from_disk,
    cayley_to_disk,
    hyperbolic_disk_area,
    hyperbolic_distance,
    hyperbolic_radius_from_pseudo,
    pseudo_hyperbolic_distance,
    pseudo_radius_from_hyperbolic,
)
from .windows import (
    WindowParams,
    basis_ft,
    cauchy_wavelet_ft,
    closed_form_ast_basis,
    eta_beta,
    laguerre,
    lambda_factor,
)
from .transform import (
    CauchyWindowKernel,
    DiscreteSignal,
    LogFreqGrid,
    TFMatrix,
    TimeGrid,
    cauchy_riemann_residual,
    dast_direct,
    dast_spectral,
    extract_analytic_part,
    make_grids,
    multiplier_cutoff,
    sample_white_noise,
)
from .zeros import GuardSpec, ZeroSet, detect_zeros, map_zeros_to_disk, time_guard_margin
from .gaf import (
    GafSample,
    expected_count,
    gaf_zeros,
    sample_gaf,
    theoretical_intensity,
    theoretical_pair_correlation,
    truncation_order,
)
from .spatial import (
    ObservationWindow,
    RadialStats,
    classify_inner,
    estimate_intensity,
    estimate_pair_correlation,
)
from .experiment import (
    ExperimentConfig,
    ResultBundle,
    compare_to_theory,
    run_experiment,
    write_bundle,
)

__version__ = "0.1.0"

__all__ = [
    "MetricConvention",
    "cayley_from_disk",
    "cayley_to_disk",
    "hyperbolic_disk_area",
    "hyperbolic_distance",
    "hyperbolic_radius_from_pseudo",
    "pseudo_hyperbolic_distance",
    "pseudo_radius_from_hyperbolic",
    "WindowParams",
    "basis_ft",
    "cauchy_wavelet_ft",
    "closed_form_ast_basis",
    "eta_beta",
    "laguerre",
    "lambda_factor",
    "CauchyWindowKernel",
    "DiscreteSignal",
    "LogFreqGrid",
    "TFMatrix",
    "TimeGrid",
    "cauchy_riemann_residual",
    "dast_direct",
    "dast_spectral",
    "extract_analytic_part",
    "make_grids",
    "multiplier_cutoff",
    "sample_white_noise",
    "GuardSpec",
    "ZeroSet",
    "detect_zeros",
    "map_zeros_to_disk",
    "time_guard_margin",
    "GafSample",
    "expected_count",
    "gaf_zeros",
    "sample_gaf",
    "theoretical_intensity",
    "theoretical_pair_correlation",
    "truncation_order",
    "ObservationWindow",
    "RadialStats",
    "classify_inner",
    "estimate_intensity",
    "estimate_pair_correlation",
    "ExperimentConfig",
    "ResultBundle",
    "compare_to_theory",
    "run_experiment",
    "write_bundle",
    "__version__",
]
