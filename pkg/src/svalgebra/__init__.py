"""Exact window calculations in the two-parity extended Witt algebras.

The package works with the Lie algebras spanned by three integer- or
half-integer-indexed families L, Y, M.  Everything runs over the rationals
with no floating point anywhere: brackets, derivation and biderivation
checks and solvers, the coefficient-recurrence systems behind the
classification results, and the commutative post-Lie triviality machinery.
"""

from .algebra import (
    AlgebraConfig,
    Element,
    GeneratorId,
    ZERO,
    bracket,
    bracket_basis,
    format_element,
    gen,
    grade,
    jacobi_defect,
    validate_generator,
)
from .windows import DefectReport, Violation, Window, lie_axiom_defects
from .parsing import (
    DomainError,
    ParseError,
    parse_element,
    parse_generator,
    parse_omega_lines,
    parse_operator_lines,
    parse_rational,
    parse_tensor_lines,
)
from .linalg import SparseMatrix, SpanBasis, kernel_basis, rank, span_basis
from .operators import (
    DecompositionError,
    DerivationClassification,
    DerivationDecomposition,
    LinearOperator,
    builtin_derivation,
    classify_derivations,
    decompose_derivation,
    derivation_defect,
    inner_derivation,
    operator_from_action,
    predicted_derivation_operators,
    solve_derivations,
)
from .biderivations import (
    EMPTY_OMEGA,
    BiderivationClassification,
    BiderivationDecomposition,
    BiderivationForm,
    BilinearMap,
    OmegaSet,
    biderivation_constraint_matrix,
    biderivation_defects,
    bilinear_map_on_window,
    chi_omega,
    classify_biderivations,
    decompose_biderivation,
    match_form,
    realize,
    representable_shifts,
    skew_kernel_members,
)
from .propositions import (
    PropositionReport,
    prop1_solve,
    prop2_solve,
    prop3_solve,
    prop4_solve,
    representable_grid_shifts,
    solve_all_propositions,
)
from .postlie import (
    AXIOM_BRACKET_DERIVATION,
    AXIOM_COMMUTATIVITY,
    AXIOM_WEIGHTED_LEIBNIZ,
    PostLieAxiomError,
    PostLieBruteReport,
    TrivialityReport,
    TrivialityWitness,
    axiom_defect,
    biderivation_from_postlie,
    materialize_product,
    postlie_axiom_defects,
    solve_postlie_window,
    triviality_witness,
    verify_triviality_theorem,
)

__version__ = "1.0.0"

__all__ = [
    "AXIOM_BRACKET_DERIVATION",
    "AXIOM_COMMUTATIVITY",
    "AXIOM_WEIGHTED_LEIBNIZ",
    "AlgebraConfig",
    "BiderivationClassification",
    "BiderivationDecomposition",
    "BiderivationForm",
    "BilinearMap",
    "DecompositionError",
    "DefectReport",
    "DerivationClassification",
    "DerivationDecomposition",
    "DomainError",
    "EMPTY_OMEGA",
    "Element",
    "GeneratorId",
    "LinearOperator",
    "OmegaSet",
    "ParseError",
    "PostLieAxiomError",
    "PostLieBruteReport",
    "PropositionReport",
    "SpanBasis",
    "SparseMatrix",
    "TrivialityReport",
    "TrivialityWitness",
    "Violation",
    "Window",
    "ZERO",
    "axiom_defect",
    "biderivation_constraint_matrix",
    "biderivation_defects",
    "biderivation_from_postlie",
    "bilinear_map_on_window",
    "bracket",
    "bracket_basis",
    "builtin_derivation",
    "chi_omega",
    "classify_biderivations",
    "classify_derivations",
    "decompose_biderivation",
    "decompose_derivation",
    "derivation_defect",
    "format_element",
    "gen",
    "grade",
    "inner_derivation",
    "jacobi_defect",
    "kernel_basis",
    "lie_axiom_defects",
    "match_form",
    "materialize_product",
    "operator_from_action",
    "parse_element",
    "parse_generator",
    "parse_omega_lines",
    "parse_operator_lines",
    "parse_rational",
    "parse_tensor_lines",
    "postlie_axiom_defects",
    "predicted_derivation_operators",
    "prop1_solve",
    "prop2_solve",
    "prop3_solve",
    "prop4_solve",
    "rank",
    "realize",
    "representable_grid_shifts",
    "representable_shifts",
    "skew_kernel_members",
    "solve_all_propositions",
    "solve_derivations",
    "solve_postlie_window",
    "span_basis",
    "triviality_witness",
    "validate_generator",
    "verify_triviality_theorem",
]
