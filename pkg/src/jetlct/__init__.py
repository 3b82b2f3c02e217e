"""Jet schemes of hypersurfaces, their dimensions, and log canonical thresholds."""

from .fporacle import FpCountRecord, count_points, dim_from_counts, oracle_dimension
from .groebner import (
    Budget,
    BudgetExceeded,
    GroebnerBasis,
    MonomialOrder,
    groebner_basis,
    ideal_membership,
    krull_dimension,
)
from .jetdim import fiber_dim, jet_scheme_dim
from .jets import Ideal, derivation_D, fiber_ideal_at, jet_ideal, jet_variables, taylor_jet_generators
from .lctlab import (
    DimRow,
    LctReport,
    Verdict,
    check_fiber_bound,
    check_isom_fiber,
    check_recursion,
    check_semicontinuity,
    equality_characterization,
    jet_dims,
    lct_estimate,
    multiplicity_at,
    singular_locus_dim,
    verify_lower_bound,
)
from .polyring import JetVariable, Monomial, ParseError, Polynomial, parse_poly
from .ruling import RulingResult, apply_change, detect_ruling

__version__ = "0.1.0"
