"""Exact truncated q-series arithmetic and an identity-verification harness."""

from .constructors import (
    AffineWeight,
    SpecMonomial,
    Unit,
    char_lambert,
    generalized_lambert,
    jk_partial_a,
    jk_product_form,
    jordan_kronecker,
    l_func,
    n_weighted_sum,
    pf_sum,
    phi_minus,
    poch_fin,
    poch_inf,
    term_series,
    theta_sum,
)
from .exactalg import LaurentPoly, Rational
from .exprs import eval_expr, format_expr, parse_expr, parse_spec_string
from .identities import (
    CheckReport,
    ParamAssignment,
    build_sides,
    check_identity,
    get_descriptor,
    list_identities,
    random_spec,
    run_suite,
    suite_ok,
)
from .numtheory import (
    predicted_rep_count,
    rep_count,
    signed_divisor_sum,
    verify_rep_range,
)
from .qring import QSeries, RATIONAL, SYMBOLIC

__all__ = [
    "AffineWeight",
    "CheckReport",
    "LaurentPoly",
    "ParamAssignment",
    "QSeries",
    "RATIONAL",
    "Rational",
    "SYMBOLIC",
    "SpecMonomial",
    "Unit",
    "build_sides",
    "char_lambert",
    "check_identity",
    "eval_expr",
    "format_expr",
    "generalized_lambert",
    "get_descriptor",
    "jk_partial_a",
    "jk_product_form",
    "jordan_kronecker",
    "l_func",
    "list_identities",
    "n_weighted_sum",
    "parse_expr",
    "parse_spec_string",
    "pf_sum",
    "phi_minus",
    "poch_fin",
    "poch_inf",
    "predicted_rep_count",
    "random_spec",
    "rep_count",
    "run_suite",
    "signed_divisor_sum",
    "suite_ok",
    "term_series",
    "theta_sum",
    "verify_rep_range",
]
