"""Linear spaces with line-transitive automorphism groups.

The package builds the classical Hermitian unitals and the (63,28,4,9)
space acted on by PSL(2,8), checks linear-space axioms and transitivity
properties of permutation groups, and verifies the Weyl-group index
polynomial identities and gcd bounds used to rule out parameter sets.
"""

from .designs import (
    CnpReport,
    IncidenceStructure,
    LinearSpaceReport,
    NonUniformSpace,
    SpaceParams,
    build_hermitian_unital,
    build_ree_unital_3,
    check_flag_transitive,
    check_line_transitive,
    cnp_check,
    flag_action,
    flags,
    is_linear_space,
    line_action,
    significant_primes,
    space_params,
    structure_from_json,
    structure_to_json,
)
from .gf import FieldCtx, FieldElem, field_create, field_for_order
from .matrep import (
    FormSpec,
    Matrix,
    form_preserves,
    form_value,
    gen_sl2,
    gen_sp4,
    gen_su3,
    hermitian_isotropic_points,
    matrix_closure,
    proj_points,
    projectivize,
    vector_action,
)
from .permgroup import (
    DEFAULT_CAP,
    CapExceeded,
    PermGroup,
    closure_enumerate,
    group_from_json,
    group_to_json,
)
from .weyl import (
    InexactDivision,
    LemmaReport,
    RootSystem,
    WeylData,
    classical_order_poly,
    is_prime_power,
    lemma_report_to_json,
    order_poly,
    parabolic_index_poly,
    poincare_parabolic,
    poincare_poly,
    poly_divide_exact,
    poly_eval,
    poly_mul,
    root_system,
    verify_lemma,
    weyl_enumerate,
)

__version__ = "0.1.0"

__all__ = [
    "CnpReport",
    "IncidenceStructure",
    "LinearSpaceReport",
    "NonUniformSpace",
    "SpaceParams",
    "build_hermitian_unital",
    "build_ree_unital_3",
    "check_flag_transitive",
    "check_line_transitive",
    "cnp_check",
    "flag_action",
    "flags",
    "is_linear_space",
    "line_action",
    "significant_primes",
    "space_params",
    "structure_from_json",
    "structure_to_json",
    "FieldCtx",
    "FieldElem",
    "field_create",
    "field_for_order",
    "FormSpec",
    "Matrix",
    "form_preserves",
    "form_value",
    "gen_sl2",
    "gen_sp4",
    "gen_su3",
    "hermitian_isotropic_points",
    "matrix_closure",
    "proj_points",
    "projectivize",
    "vector_action",
    "DEFAULT_CAP",
    "CapExceeded",
    "PermGroup",
    "closure_enumerate",
    "group_from_json",
    "group_to_json",
    "InexactDivision",
    "LemmaReport",
    "RootSystem",
    "WeylData",
    "classical_order_poly",
    "is_prime_power",
    "lemma_report_to_json",
    "order_poly",
    "parabolic_index_poly",
    "poincare_parabolic",
    "poincare_poly",
    "poly_divide_exact",
    "poly_eval",
    "poly_mul",
    "root_system",
    "verify_lemma",
    "weyl_enumerate",
]
