"""Exact non-Archimedean seminorms on formal balls and filters.

The library computes with exact rationals throughout: valued fields
with rational-valued ultrametric norms, formal balls and R-good
filters, seminorm values as computable upper reals, the round-trip
between seminorms and filters, and the classification pictures for
integer seminorms and trivially valued base fields.
"""

from .ballspace import (
    Chain,
    DiscPoint,
    FormalBall,
    RGoodFilter,
    Space,
    ball_equal,
    ball_included,
    check_R_good,
    filter_member,
    filter_radius,
)
from .classify import (
    ArchPower,
    Classification,
    IntegerSeminormSpec,
    PAdicPower,
    RadiusAndCenter,
    RadiusOnly,
    ResidueTrivial,
    Trivial,
    Undetermined,
    canonicalize_trivial,
    classify_integer_seminorm,
    eval_integer_spec,
    make_oracle,
)
from .errors import (
    FactorizationRequired,
    NotAFilter,
    OracleInconsistent,
    ParseError,
    SemanticError,
    UltraballError,
)
from .exactnum import (
    DEFAULT_DEPTH,
    INF,
    Exact,
    ExtRational,
    PlusInfinity,
    Stream,
    Top,
    UpperReal,
    to_exact,
    upper_inf,
    upper_lt,
    upper_max,
    upper_scale,
)
from .fields import PAdicQ, TAdicFunctionField, TrivialQ, ValuedField, in_K_R, norm
from .roundtrip import (
    max_modulus_oracle,
    seminorm_to_filter,
    verify_roundtrip_filter,
    verify_roundtrip_seminorm,
)
from .seminorms import (
    FilterSeminorm,
    GaussNorm,
    KSeminorm,
    LinPoly,
    Poly,
    TruncSeries,
    ball_seminorm_lin,
    filter_seminorm_lin,
    filter_seminorm_poly,
    gauss_norm_poly,
    hat_ball_poly,
    make_poly,
    poly_from_roots,
    product_ball_poly,
    series_enclosure,
    taylor_shift,
)

__version__ = "0.1.0"
