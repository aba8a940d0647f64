"""twostein: exact algebra for curvature tensors.

Construct, validate and serialize algebraic curvature tensors over exact
rational (or float) scalars; check Einstein, two-stein, trace and
block-compatibility conditions; and certify, through an exact positive
semidefinite decomposition, that a block-compatible tensor with trace
proportionality has constant curvature.
"""
from .fields import (Field, FieldError, GaussianRational, RATIONAL,
                     GAUSSIAN_RATIONAL, F64, C64, field_by_name)
from .core import (CurvatureTensor, SymmetricBilinear, JacobiOperator,
                   ParseError, SymmetryConflictError, SymmetryReport,
                   make_constant_curvature, validate_symmetries, ricci,
                   jacobi, shift, unshift, parse_tensor, emit_tensor,
                   pair_symmetrize, bianchi_project, tensor_max_abs)
from .conditions import (BlockSplit, SteinCertificate, PreconditionError,
                         einstein_deficit, two_stein_certificate, hc2_residual,
                         shift_equivalence_check, trace_derivative_identity,
                         block_condition_residual, block_condition_report)
from .zoo import (ZooSpec, complex_space_form, quaternionic_space_form,
                  su3_so3_tensor, product_sphere_tensor, random_tensor,
                  random_block_tensor, generate)
from . import proof_engine

__version__ = "0.1.0"

__all__ = [
    "Field", "FieldError", "GaussianRational",
    "RATIONAL", "GAUSSIAN_RATIONAL", "F64", "C64", "field_by_name",
    "CurvatureTensor", "SymmetricBilinear", "JacobiOperator",
    "ParseError", "SymmetryConflictError", "SymmetryReport",
    "make_constant_curvature", "validate_symmetries", "ricci", "jacobi",
    "shift", "unshift", "parse_tensor", "emit_tensor",
    "pair_symmetrize", "bianchi_project", "tensor_max_abs",
    "BlockSplit", "SteinCertificate", "PreconditionError",
    "einstein_deficit", "two_stein_certificate", "hc2_residual",
    "shift_equivalence_check", "trace_derivative_identity",
    "block_condition_residual", "block_condition_report",
    "ZooSpec", "complex_space_form", "quaternionic_space_form",
    "su3_so3_tensor", "product_sphere_tensor", "random_tensor",
    "random_block_tensor", "generate",
    "proof_engine",
    "__version__",
]
