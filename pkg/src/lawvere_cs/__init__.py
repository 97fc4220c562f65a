"""Lawvere theories, l-bijective C-systems, and the translations between them."""

from .errors import (
    BudgetExceeded,
    DimensionError,
    MalformedTermError,
    ParseError,
    PreconditionError,
)
from .report import CheckReport, ProbeSpec
from .terms import (
    App,
    RewriteRule,
    RewriteSystem,
    Signature,
    Sub,
    TheoryPresentation,
    Var,
    apply_sub,
    compose,
    enumerate_terms,
    identity_sub,
    normalize,
    sub_eq,
    wf_term,
)
from .theory import FinFun, finfun_compose, ii1, ii2, term_lawvere, verify_lawvere
from .csystem import check_csystem, mediator, term_csystem
from .bridge import (
    OpAssignment,
    assignment_to_functor,
    check_cs_homomorphism,
    cl,
    cl_mor,
    lc,
    pi,
    roundtrip,
)
from .models import (
    Interpretation,
    check_model,
    clone,
    const_family,
    enumerate_models,
    eval_term,
    telescope_csystem,
)
from .subsystem import Tower, generate_subsystem, x_star
from .parsing import parse_sub, parse_term, parse_theory
