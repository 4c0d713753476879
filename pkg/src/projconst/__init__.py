"""Projection constants of hyperplanes in l_inf with atomic and singular parts."""

from .closed_form import (
    FamilyParams,
    blatter_cheney,
    curve_g,
    family_functional,
    h_an,
    lambda_f_nab,
    mixed_lambda,
)
from .designer import ExampleCertificate, design_for_target, verify_certificate
from .errors import (
    DegenerateFunctionalError,
    DomainError,
    HypothesisViolation,
    InfeasibleVectorError,
    MalformedInput,
    NotAProjectionError,
    ProjconstError,
    SolverError,
)
from .functional import (
    DiagonalIsometry,
    ExtendedVector,
    HyperplaneFunctional,
    clip_to_ball,
    conjugate_functional,
    conjugate_vector,
    normalize,
    sign_normalize,
)
from .projection_norm import (
    NormReport,
    brute_force_norm,
    lower_bound_witness,
    operator_norm,
    pairing,
    real_part_reduce,
)
from .solver import (
    GapSequence,
    SolverResult,
    attainment_decision,
    min_projection_norm,
    truncation_gaps,
)

__version__ = "0.1.0"
