"""Exact computational checks on the almost-commuting variety of sp_2n."""

from .linalg import ExactMatrix, UniPolynomial, char_poly, minimal_poly, nullspace, rank, solve_affine
from .scheme import ACVPoint, dimension_certificate, is_member, moment_residual, sample_regular_point, witness_point
from .symplectic import CartanPoint, PhaseVector, SignedPermutation, SpElement, SymplecticSpace
from .triangular import classify_closed_orbit, symplectic_triangularize

__version__ = "0.1.0"
