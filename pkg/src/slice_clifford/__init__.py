"""Numerical toolkit for slice monogenic functions over the Clifford algebra R_n."""

from .clifford import (
    Multivector,
    conjugate,
    geometric_product,
    grade_project,
    inner_wedge,
    paravector,
    paravector_inverse,
    paravector_power,
)
from .errors import (
    DegenerateContourError,
    DivisionByZeroError,
    InvalidArgumentError,
    InvalidOperandsError,
    PreconditionError,
    SeriesParseError,
    SingularKernelError,
    SliceCliffordError,
)
from .kernel import (
    OperatorParavector,
    kernel_closed_form,
    kernel_inverse,
    kernel_series_sum,
    operator_kernel_sum,
    singularity_probe,
    verify_kernel_identity,
)
from .quadrature import (
    ContourSpec,
    QuadratureReport,
    annulus_cauchy_eval,
    cauchy_estimate_check,
    cauchy_eval,
    closed_curve_integral,
    exterior_cauchy_eval,
    laurent_coefficient,
    taylor_coefficient,
)
from .series import (
    LaurentSeries,
    PowerSeries,
    compose_inversion,
    compose_real,
    estimate_radius,
    eval_laurent,
    eval_series,
    extend_holomorphic,
    monogenicity_residual,
    multiply_real,
    recenter,
    s_derivative,
)
from .slices import (
    SliceFrame,
    SlicePoint,
    SphereClass,
    complete_frame,
    equivalence_class,
    slice_unit,
    sphere_sample,
    split,
    unit_vector,
    unsplit,
)
from .zeros import (
    alpha_beta,
    characteristic_quadratic,
    is_in_class,
    quadratic_counterexample_check,
    sphere_zero_test,
)

__version__ = "0.1.0"

__all__ = [
    "ContourSpec",
    "DegenerateContourError",
    "DivisionByZeroError",
    "InvalidArgumentError",
    "InvalidOperandsError",
    "LaurentSeries",
    "Multivector",
    "OperatorParavector",
    "PowerSeries",
    "PreconditionError",
    "QuadratureReport",
    "SeriesParseError",
    "SingularKernelError",
    "SliceCliffordError",
    "SliceFrame",
    "SlicePoint",
    "SphereClass",
    "alpha_beta",
    "annulus_cauchy_eval",
    "cauchy_estimate_check",
    "cauchy_eval",
    "characteristic_quadratic",
    "closed_curve_integral",
    "complete_frame",
    "compose_inversion",
    "compose_real",
    "conjugate",
    "equivalence_class",
    "estimate_radius",
    "eval_laurent",
    "eval_series",
    "extend_holomorphic",
    "exterior_cauchy_eval",
    "geometric_product",
    "grade_project",
    "inner_wedge",
    "is_in_class",
    "kernel_closed_form",
    "kernel_inverse",
    "kernel_series_sum",
    "laurent_coefficient",
    "monogenicity_residual",
    "multiply_real",
    "operator_kernel_sum",
    "paravector",
    "paravector_inverse",
    "paravector_power",
    "quadratic_counterexample_check",
    "recenter",
    "s_derivative",
    "singularity_probe",
    "slice_unit",
    "sphere_sample",
    "sphere_zero_test",
    "split",
    "taylor_coefficient",
    "unit_vector",
    "unsplit",
    "verify_kernel_identity",
]
