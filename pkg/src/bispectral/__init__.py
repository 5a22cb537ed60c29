"""Exact construction of bisymmetric commuting differential operators.

Scalars live in Q(i); operators have rational-function coefficients.  The
solver takes a bispectral kernel (exp, Airy or Bessel, optionally after a
self-adjoint Darboux transformation) and contour endpoints, and returns the
space of operators that are formally symmetric on both sides with vanishing
boundary concomitants.
"""

from .concomitant import (
    EndpointSpec,
    SolveConfig,
    SolveResult,
    assemble_system,
    concomitant,
    solve,
    verify_bisymmetric,
)
from .context import Context, fourier_of_operator, make_context, parse_gen, sym_basis
from .darboux import CandidateBounds, CandidatePair, build_transform, candidate_space, trivial_transform
from .exactnum import GaussianRational, Poly, RatFunc
from .grassmannian import AdelicPlane, ConditionFunctional, QuasiExp, annihilator, to_darboux
from .linalg import nullspace
from .orealg import OreOp
from .parser import parse_op, print_op
from .problem import Problem

__all__ = [
    "AdelicPlane",
    "CandidateBounds",
    "CandidatePair",
    "ConditionFunctional",
    "Context",
    "EndpointSpec",
    "GaussianRational",
    "OreOp",
    "Poly",
    "Problem",
    "QuasiExp",
    "RatFunc",
    "SolveConfig",
    "SolveResult",
    "annihilator",
    "assemble_system",
    "build_transform",
    "candidate_space",
    "concomitant",
    "fourier_of_operator",
    "make_context",
    "nullspace",
    "parse_gen",
    "parse_op",
    "print_op",
    "solve",
    "sym_basis",
    "to_darboux",
    "trivial_transform",
    "verify_bisymmetric",
]
