"""Threshold disjunctive codes: construction, verification, rate bounds and the decision protocol."""

from .code_matrix import (
    BinaryCode,
    Property,
    VerificationReport,
    load_code,
    max_dot_product,
    response_vector,
    save_code,
    union_weight_distribution,
    verify_bounded_weight,
    verify_disjunctive,
    verify_threshold,
    weight,
)
from .finite_field import FieldElement, FieldSpec, eval_poly, field_new
from .gt_simulator import decide, exhaustive_accuracy, random_trials
from .ks_construction import KsFamilyParams, build_code, derive_params, family_rate_bound
from .rate_bounds import (
    BoundResult,
    asymptotic_objective,
    bonis_upper,
    exponent_A,
    exponent_A_prime,
    lower_rate_thr,
    lower_rate_tau,
    solve_y,
)

__version__ = "0.1.0"
