"""First-order averaging toolkit for perturbed planar linear centers.

Build perturbations of a linear center from signed-power homogeneous
fields, compute the averaged function via adaptive quadrature of the
angular integrals, synthesize coefficients realizing prescribed cycle
radii, verify the prediction against a polar-coordinate return map, and
certify small monomial systems cycle-free.
"""

from .averaging import (
    AveragedFunction,
    angular_integral,
    averaged_function,
    classify_nonzero,
    lower_bound_count,
    melnikov,
    melnikov_line_integral,
    wronskian_closed_form,
    wronskian_numeric,
)
from .errors import (
    AmbiguousIntegralError,
    AngularMonotonicityError,
    ClassifierError,
    ContinuationError,
    CountMismatchError,
    CycleAvgError,
    GuardBoundError,
    QuadratureError,
    RootError,
    SimulationError,
    SpecError,
    SynthesisError,
)
from .fields import (
    Fraction,
    HomogeneousField,
    PerturbationSpec,
    SignedPowerTerm,
    angular_components,
    eval_field,
    eval_term,
    field_from_json,
    field_to_json,
    homogeneity_residual,
    load_spec,
    monomial,
    normalize_ccw,
    reflect_diagonal,
    spec_from_json,
    spec_to_json,
    swap_orientation,
    term_from_json,
    term_to_json,
    with_b,
    with_epsilon,
)
from .flow import (
    DEFAULT_STEPS,
    GUARD,
    ContinuationRow,
    LimitCycleCertificate,
    ReturnMapSample,
    continuation_check,
    find_fixed_points,
    radial_rhs,
    return_map,
    scan_return_map,
    theta_speed,
)
from .monomials import (
    Check,
    MonomialSystem,
    NoCycleCertificate,
    certificate_to_json,
    classify,
    enumerate_systems,
    hilbert_monomial_lower_bound,
    lienard_family,
    monomial_from_json,
    monomial_to_json,
    reduce_common_factor,
)
from .pipeline import retune_b, run_pipeline
from .presets import (
    CBRT_MOMENT,
    SQRT_MOMENT,
    Preset,
    capillary,
    catalog,
    constant_field,
    example1,
    example2,
    herd,
    lienard,
    linear_field,
    signed_root_field,
    sir,
    vdp,
)
from .roots import (
    DEFAULT_BRACKET,
    PositiveRoot,
    RootReport,
    descartes_bound,
    interval_degree,
    positive_roots,
    synthesize_coefficients,
)

__version__ = "0.1.0"

__all__ = [
    "AmbiguousIntegralError",
    "AngularMonotonicityError",
    "AveragedFunction",
    "CBRT_MOMENT",
    "Check",
    "ClassifierError",
    "ContinuationError",
    "ContinuationRow",
    "CountMismatchError",
    "CycleAvgError",
    "DEFAULT_BRACKET",
    "DEFAULT_STEPS",
    "Fraction",
    "GUARD",
    "GuardBoundError",
    "HomogeneousField",
    "LimitCycleCertificate",
    "MonomialSystem",
    "NoCycleCertificate",
    "PerturbationSpec",
    "PositiveRoot",
    "Preset",
    "QuadratureError",
    "ReturnMapSample",
    "RootError",
    "RootReport",
    "SQRT_MOMENT",
    "SignedPowerTerm",
    "SimulationError",
    "SpecError",
    "SynthesisError",
    "angular_components",
    "angular_integral",
    "averaged_function",
    "capillary",
    "catalog",
    "certificate_to_json",
    "classify",
    "classify_nonzero",
    "constant_field",
    "continuation_check",
    "descartes_bound",
    "enumerate_systems",
    "example1",
    "example2",
    "eval_field",
    "eval_term",
    "field_from_json",
    "field_to_json",
    "find_fixed_points",
    "herd",
    "hilbert_monomial_lower_bound",
    "homogeneity_residual",
    "interval_degree",
    "lienard",
    "lienard_family",
    "linear_field",
    "load_spec",
    "lower_bound_count",
    "melnikov",
    "melnikov_line_integral",
    "monomial",
    "monomial_from_json",
    "monomial_to_json",
    "normalize_ccw",
    "positive_roots",
    "radial_rhs",
    "reduce_common_factor",
    "reflect_diagonal",
    "retune_b",
    "return_map",
    "run_pipeline",
    "scan_return_map",
    "signed_root_field",
    "sir",
    "spec_from_json",
    "spec_to_json",
    "swap_orientation",
    "synthesize_coefficients",
    "term_from_json",
    "term_to_json",
    "theta_speed",
    "vdp",
    "with_b",
    "with_epsilon",
    "wronskian_closed_form",
    "wronskian_numeric",
]
