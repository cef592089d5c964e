"""Joint invariants of linear symplectic group actions.

Exact evaluation of the pairwise invariants a_ij on point configurations,
symbolic verification of their Pfaffian syzygies, canonical forms and
signatures deciding equivalence under Sp/CSp/ASp and the contact lift, the
symmetric (unordered) invariant algebra, and floating-point discretizations
recovering the differential invariants as limits of joint ones.
"""

from .exact import (
    BACKEND,
    ExactMatrix,
    Rat,
    SkewMatrix,
    det,
    is_symplectic,
    nullspace,
    pfaffian,
    random_symplectic,
    rank,
    rat,
    rat_str,
    symp,
    symplectic_J,
)
from .field_generators import (
    BasicSet,
    basic_set,
    dim_d,
    eliminate_entry,
    generic_jacobian_rank,
    jacobian_rank,
    stabilizer_dim,
)
from .invariants import (
    GenericityError,
    GramTable,
    PointConfig,
    all_min_syzygies,
    config_from_dict,
    config_to_dict,
    gram,
    load_config,
    q_value,
    random_config,
    syzygy_value,
)
from .normal_form import (
    GenericityReport,
    Signature,
    canonical,
    equivalent,
    genericity,
    recover_transform,
    signature,
)
from .poly import (
    FreeModuleElt,
    MultiPoly,
    aux_var,
    avar,
    contact_var,
    evaluate,
    pfaffian_poly,
    q_poly,
    verify_pfaffian_expansion,
    verify_q_reduction,
    verify_resolution_tower,
    verify_weyl_reduction,
)
from .symmetric import (
    generator_search,
    graded_dim,
    named_generators,
    poincare_coeffs,
    q_sequence,
    reynolds,
    verify_R8,
)
from .variants import (
    ContactConfig,
    ContactPoint,
    asp_invariants,
    contact_absolute,
    contact_apply,
    contact_config_from_dict,
    contact_config_to_dict,
    contact_equivalent,
    contact_lift_symplectic,
    contact_relative,
    contact_transform,
    csp_signature,
    dim_bbar,
    load_contact_config,
)

__version__ = "0.1.0"
