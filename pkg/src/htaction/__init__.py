"""Exact computation of basic polynomials and additive actions on projective
space attached to finite-dimensional local algebras."""

from .action import ActionMatrix, ProjectivePoint, action_matrix, apply, check_group_law, standard_action_matrix
from .cremona import (
    PolynomialMap,
    compose,
    invert_triangular,
    phi_from_algebra,
    phi_inverse_via_log,
    shear_automorphism,
    verify_conjugation,
)
from .groebner import IdealPresentation, algebra_from_presentation, buchberger, normal_form, quotient_basis
from .ht import BasicPolynomials, basic_polynomials, check_basic_subspace, is_triangular
from .localalg import AlgebraElement, GenericElement, LocalAlgebra, check_axioms, exp, log
from .parsing import parse_polynomial, parse_presentation
from .polyring import GREVLEX, GRLEX, LEX, MonomialOrder, Polynomial

__version__ = "0.1.0"
