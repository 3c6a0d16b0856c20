"""Exact graded polynomial identities for block-triangular matrix algebras tensored with
graded division algebras, over finitely generated abelian grading groups."""

__version__ = "0.1.0"

from .algebra import (
    AlgebraElement,
    GradedAlgebra,
    GradingError,
    center_of,
    coarsen,
    direct_sum,
    is_division_grading,
    matrix_algebra,
    neutral_component,
    tensor,
    transport_grading,
    verify_associativity,
    verify_grading,
)
from .cyclotomic import CycScalar, cyclotomic_polynomial, root_of_unity
from .division import Bicharacter, DivisionFactor, DivisionSpec, bicharacter_of, build_pauli_division
from .groups import (
    FgAbelianGroup,
    GroupElement,
    GroupError,
    GroupHom,
    Subgroup,
    finite_reduction,
    quotient,
    subgroup_generated,
)
from .identities import (
    IdentityCheck,
    ResourceLimitError,
    StructuralAssumptionError,
    capelli_rank,
    capelli_support_test,
    identity_space,
    is_identity,
    recover_division_support,
    same_identities_upto,
)
from .isomorphism import (
    IsoWitness,
    PipelineVerdict,
    TensorModel,
    build_coarse_elementary,
    division_iso,
    ds_condition,
    elementary_tensor_iso,
    pipeline,
)
from .polynomials import (
    GradedPolynomial,
    GradedVariable,
    InadmissibleSubstitution,
    UnsupportedError,
    capelli,
    central_poly,
    evaluate,
)
from .specfile import SpecError, SpecFile, parse_spec
from .transfer import a_good, check_a_good, compose_transfer, division_transfer_check
from .ut import (
    ElementarySpec,
    block_invariance_subgroups,
    build_ut_elementary,
    decompose_neutral,
    normalize_representatives,
    omega_and_invariance,
    radical_power,
)

__all__ = [
    "__version__",
    "a_good",
    "AlgebraElement",
    "Bicharacter",
    "bicharacter_of",
    "block_invariance_subgroups",
    "build_coarse_elementary",
    "build_pauli_division",
    "build_ut_elementary",
    "capelli",
    "capelli_rank",
    "capelli_support_test",
    "center_of",
    "central_poly",
    "check_a_good",
    "coarsen",
    "compose_transfer",
    "cyclotomic_polynomial",
    "CycScalar",
    "decompose_neutral",
    "direct_sum",
    "division_iso",
    "division_transfer_check",
    "DivisionFactor",
    "DivisionSpec",
    "ds_condition",
    "elementary_tensor_iso",
    "ElementarySpec",
    "evaluate",
    "FgAbelianGroup",
    "finite_reduction",
    "GradedAlgebra",
    "GradedPolynomial",
    "GradedVariable",
    "GradingError",
    "GroupElement",
    "GroupError",
    "GroupHom",
    "identity_space",
    "IdentityCheck",
    "InadmissibleSubstitution",
    "is_division_grading",
    "is_identity",
    "IsoWitness",
    "matrix_algebra",
    "neutral_component",
    "normalize_representatives",
    "omega_and_invariance",
    "parse_spec",
    "pipeline",
    "PipelineVerdict",
    "quotient",
    "radical_power",
    "recover_division_support",
    "ResourceLimitError",
    "root_of_unity",
    "same_identities_upto",
    "SpecError",
    "SpecFile",
    "StructuralAssumptionError",
    "Subgroup",
    "subgroup_generated",
    "tensor",
    "TensorModel",
    "transport_grading",
    "UnsupportedError",
    "verify_associativity",
    "verify_grading",
]
