"""Exact computations for germs, curve configurations and moduli of Kato surfaces."""

from .errors import (
    ConjugacyError,
    InputError,
    KappaError,
    KatoError,
    MathError,
    SingularError,
    TruncationError,
)
from .exact import ExactComplex, QuadExt, QuadraticField
from .series import Germ2, Series2, germ_compose, germ_inverse, jacobian_at_zero
from .model import BlowupStep, Chart, KatoSpec, Kind, SigmaGerm, spec_from_charts
from .builder import build_germ, fixed_point_analysis, trace_domain_check, trace_monomial
from .geometry import anticanonical_index, dimension_formulas, sequence_and_invariants
from .invariants import (
    FavreForm,
    kappa_by_functional_equation,
    kappa_from_favre,
    parse_favre,
    solve_conjugacy,
    twisted_vector_field_test,
    verify_conjugacy,
)
from .strata import enumerate_strata, h_i_membership, solve_h_i, stratum_of_point
from .appendix import (
    baum_bott_check,
    corner_matrix,
    cramer_determinant_closed,
    cramer_determinant_expanded,
)

__version__ = "0.1.0"
