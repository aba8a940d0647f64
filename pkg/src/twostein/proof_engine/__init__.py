"""Symmetrization machinery for the quartic trace of a block-compatible
curvature tensor: symmetric functions on the restricted vector set,
coefficient forms and their aggregates, the vector-set solver, weight
selection, the positive semidefinite decomposition of the final quadratic
form, and the end-to-end constant-curvature deduction.
"""
from .symfuncs import (ZVector, CoefficientVector10, elementary_symmetric,
                       abc_coefficients)
from .ledger import (FormLedger, coefficient_forms, symmetrized_trace_direct,
                     symmetrized_trace_formula, rhs_identity_value,
                     CombinatorialGuardError, IdentityViolationError)
from .solver import VectorSet, solve_vector_set, UnreachableTargetError
from .quadform import (WeightPair, QuadDecomposition, Q4Certificate,
                       select_xi_eta, case2_prescription, final_quadratic_form,
                       case1_identity_check, q4_psd_witness)
from .deduction import (DeductionResult, HypothesisError,
                        constant_curvature_deduction, component_equalities)

__all__ = [
    "ZVector", "CoefficientVector10", "elementary_symmetric", "abc_coefficients",
    "FormLedger", "coefficient_forms", "symmetrized_trace_direct",
    "symmetrized_trace_formula", "rhs_identity_value",
    "CombinatorialGuardError", "IdentityViolationError",
    "VectorSet", "solve_vector_set", "UnreachableTargetError",
    "WeightPair", "QuadDecomposition", "Q4Certificate", "select_xi_eta",
    "case2_prescription", "final_quadratic_form", "case1_identity_check",
    "q4_psd_witness",
    "DeductionResult", "HypothesisError", "constant_curvature_deduction",
    "component_equalities",
]
