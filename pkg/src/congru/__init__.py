"""Congruence regularizing decomposition of square matrices over a
field with involution: exact rational, Gaussian-rational and prime
fields, a floating-point unitary path, and selfadjoint pencil
regularization.

Every transform X reported anywhere in this package acts on the left:
X * A * X.star equals the reported form.
"""

from .float_unitary import (
    FloatMode,
    FloatStageRecord,
    ReducedForm,
    block_slices,
    float_regularize,
    float_stage,
    parse_float_matrix,
    pattern_residual,
    render_float_matrix,
    required_zero_mask,
    unitarity_residual,
)
from .matrix import (
    Invariants,
    Matrix,
    MatrixParseError,
    conj_transpose,
    direct_sum,
    f_block,
    g_block,
    invariants,
    inverse,
    jordan_block,
    nullity,
    nullspace,
    permutation_matrix,
    rank,
    row_echelon_transform,
    solve,
)
from .pencil import (
    KroneckerBlock,
    PencilDecomposition,
    Replacement,
    SelfadjointPencil,
    lemma6_permutation,
    pencil_regularize,
    permuted_jordan_target,
    replace_block,
)
from .regularize import (
    BlockSum,
    RegularizationResult,
    StageRecord,
    assemble,
    multiplicities,
    regularize,
    stage,
)
from .scalar import FieldKind, FieldSpec, GaussianRational, Involution, ModInt
from .sparse_form import (
    SparseForm,
    canonical_sparse_form,
    full_decomposition,
    jordan_permutation,
    reduce_cde,
    sparse_nilpotent,
)
from .verify import (
    CheckReport,
    RandomSpec,
    SuiteReport,
    check_transform,
    invariance_suite,
    nilpotent_jordan_oracle,
    random_matrix,
    random_nonsingular,
    roundtrip_suite,
)

__all__ = [
    "BlockSum",
    "CheckReport",
    "FieldKind",
    "FieldSpec",
    "FloatMode",
    "FloatStageRecord",
    "GaussianRational",
    "Invariants",
    "KroneckerBlock",
    "Matrix",
    "MatrixParseError",
    "ModInt",
    "Involution",
    "PencilDecomposition",
    "RandomSpec",
    "ReducedForm",
    "RegularizationResult",
    "Replacement",
    "SelfadjointPencil",
    "SparseForm",
    "StageRecord",
    "SuiteReport",
    "assemble",
    "block_slices",
    "canonical_sparse_form",
    "check_transform",
    "conj_transpose",
    "direct_sum",
    "f_block",
    "float_regularize",
    "float_stage",
    "full_decomposition",
    "g_block",
    "invariance_suite",
    "invariants",
    "inverse",
    "jordan_block",
    "jordan_permutation",
    "lemma6_permutation",
    "multiplicities",
    "nilpotent_jordan_oracle",
    "nullity",
    "nullspace",
    "parse_float_matrix",
    "pattern_residual",
    "pencil_regularize",
    "permutation_matrix",
    "permuted_jordan_target",
    "random_matrix",
    "random_nonsingular",
    "rank",
    "reduce_cde",
    "regularize",
    "render_float_matrix",
    "replace_block",
    "required_zero_mask",
    "roundtrip_suite",
    "row_echelon_transform",
    "solve",
    "sparse_nilpotent",
    "stage",
    "unitarity_residual",
    "__version__",
]

__version__ = "0.1.0"
