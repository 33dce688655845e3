"""Exact obstruction calculus for naive lifting of DG modules.

The package decides, for a finitely generated semifree DG module N over a
free graded extension B = R<X_1,...,X_n>, whether the canonical surjection
from the extended module onto N splits, by computing the obstruction class
inside N (x) J for the diagonal ideal J of B^e and solving the resulting
exact linear systems over the ground field.  Every answer ships with a
machine-checkable witness: a lifting family on success, an inconsistency
certificate on failure.
"""

__version__ = "0.1.0"

from .coefficients import BaseRing, PrimeField, QQ, RingElement
from .dsl import (ProblemDescription, parse_algebra_element, parse_problem,
                  parse_ring, print_problem)
from .envelope import (DiagonalElement, EnvelopeElement, delta, diagonal_basis,
                       diagonal_homology_dim, op_inclusion, pi, rho, sigma)
from .errors import (CompositionNonzero, ConstructionError, CycleViolation,
                     DegreeMismatch, DGLiftError, DifferentialSquareNonzero,
                     ForwardReference, GradingViolation, ParseError,
                     TriangularityViolation, UndeclaredName)
from .free_dga import AlgebraElement, FreeDGAlgebra, Variable
from .linalg import BlockMatrix, homology_dim, kernel_basis, linear_solve, rank
from .obstruction import (Connection, ObstructionReport, canonical_connection,
                          check_lift, criterion_rhs, obstruction_apply,
                          obstruction_values, psi_apply, psi_values,
                          verify_certificate, verify_witness)
from .semifree import (ModuleElement, SemifreeModule, TensorEnvElement,
                       TensorJElement)

__all__ = [
    "__version__",
    "BaseRing", "PrimeField", "QQ", "RingElement",
    "ProblemDescription", "parse_algebra_element", "parse_problem",
    "parse_ring", "print_problem",
    "DiagonalElement", "EnvelopeElement", "delta", "diagonal_basis",
    "diagonal_homology_dim", "op_inclusion", "pi", "rho", "sigma",
    "CompositionNonzero", "ConstructionError", "CycleViolation",
    "DegreeMismatch", "DGLiftError", "DifferentialSquareNonzero",
    "ForwardReference", "GradingViolation", "ParseError",
    "TriangularityViolation", "UndeclaredName",
    "AlgebraElement", "FreeDGAlgebra", "Variable",
    "BlockMatrix", "homology_dim", "kernel_basis", "linear_solve", "rank",
    "Connection", "ObstructionReport", "canonical_connection", "check_lift",
    "criterion_rhs", "obstruction_apply", "obstruction_values", "psi_apply",
    "psi_values", "verify_certificate", "verify_witness",
    "ModuleElement", "SemifreeModule", "TensorEnvElement", "TensorJElement",
]
