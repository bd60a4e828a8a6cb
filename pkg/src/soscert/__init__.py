"""Exact computer algebra for sums-of-squares certificates and local
non-SOS obstructions: rational-coefficient polynomials, Groebner bases,
truncated power series, and machine-checkable positivity evidence."""

from .errors import (
    BudgetExceededError,
    NotOnVarietyError,
    ParseError,
    SoscertError,
    VariableMismatchError,
)
from .poly import GaussRat, Poly, format_poly, newton_half_support, parse_gauss, parse_poly
from .groebner import (
    GREVLEX,
    Ideal,
    MembershipWitness,
    MonOrder,
    buchberger_criterion,
    dimension,
    groebner_basis,
    ideal_product,
    ideal_quotient,
    ideal_square,
    jacobian_rank_at,
    local_order_bound,
    member_localized,
    normal_form,
)
from .series import (
    AdicResult,
    HatChart,
    NotApplicable,
    SquareCompletion,
    TruncSeries,
    adic_decompose,
    complete_squares,
    hat_chart,
    hat_change,
    inverse_unit,
    nth_root_unit,
    reversion,
    sqrt_unit,
    substitute_series,
)
from .certificates import (
    AmGmCert,
    BadPointCert,
    ConeObstruction,
    DensityWitness,
    NonSosObstruction,
    SosCert,
    StructNonneg,
    birational_avoid,
    find_non_sos_obstruction,
    sample_nonnegativity,
    verify_amgm,
    verify_avoid_map,
    verify_bad_point,
    verify_cone_obstruction,
    verify_non_sos,
    verify_sos,
)
from .claims import Catalog, all_claims, run_claims

__version__ = "0.1.0"
