"""Moving-frame rule tables and the certificates built on them."""

from .beta import swap_indices, verify_beta_vanishing
from .context import (
    Assumption,
    Constraint,
    FrameContext,
    MissingRule,
    bracket_defect,
    build_full_context,
    build_reduced_context,
    constraint_defects,
    constraint_preservation,
    derive,
    verify_identity,
)
from .elimination import (
    derive_dKdf,
    derive_first_pol,
    derive_x1f2,
    eliminate,
    eliminate_to_univariate,
    verify_degenerate_branches,
    verify_first_pol,
    verify_x1f2,
)
from .isoparametric import thm31_certificate, verify_isoparametric_identity
from .prelim import beta_free_context, verify_prelim_chain

__all__ = [
    "Assumption",
    "Constraint",
    "FrameContext",
    "MissingRule",
    "beta_free_context",
    "bracket_defect",
    "build_full_context",
    "build_reduced_context",
    "constraint_defects",
    "constraint_preservation",
    "derive",
    "derive_dKdf",
    "derive_first_pol",
    "derive_x1f2",
    "eliminate",
    "eliminate_to_univariate",
    "swap_indices",
    "thm31_certificate",
    "verify_beta_vanishing",
    "verify_degenerate_branches",
    "verify_first_pol",
    "verify_identity",
    "verify_isoparametric_identity",
    "verify_prelim_chain",
    "verify_x1f2",
]
