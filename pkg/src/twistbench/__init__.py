"""Exact workbench for modular fusion data with at most three distinct twists."""

from .cyclotomic import CycNumber, RootOfUnity, cyc, zeta
from .quadfield import (
    QuadFieldElement,
    d_numbers_q5_in_window,
    quad,
    sqrt2_obstruction_scan,
)
from .moddata import (
    ModularData,
    ValidationReport,
    central_charge,
    fs_exponent,
    galois_permutation,
    gauss_sum,
    product,
    twist_spectrum,
    validate,
    verlinde,
)
from .metricgroups import (
    FiniteAbelianGroup,
    QuadraticForm,
    abelian_group,
    cyclic_group,
    enumerate_forms,
    filter_by_twists,
    isometry_classes,
    metric_modular_data,
)
from .doubles import (
    ThreeCocycle,
    TwistedDouble,
    classify_doubles_by_twistcount,
    double_modular_data,
    enumerate_cocycle_classes,
    induction_trace_tests,
    slant,
)
from .sl2tables import (
    RepDescriptor,
    admissible_sums,
    rep_table,
    tensor_with_char,
    twist_candidates,
)
from .classify import (
    coprime_twist_check,
    gauss_geometry_solve,
    solve_three_twists,
    solve_two_twists,
    two_twist_discriminant_window,
)
from . import fixtures

__version__ = "0.1.0"
