"""Numeric evaluation and symbolic reduction of nonlinear Euler sums."""

from .kernel import (
    AccelerationError,
    DivergentSumError,
    EulerSumError,
    PrecReal,
    Rational,
    SumSpecSyntaxError,
    UnsupportedReductionError,
)
from .sumspec import Factor, SumSpec, format_sumspec, parse_sumspec, partial_sum
from .engine import (
    eval_I,
    eval_R,
    eval_polylog,
    eval_series,
    eval_sum,
)
from .algebra import (
    Atom,
    Monomial,
    SymbolicValue,
    normalize,
    parse_symbolic,
    sv_from_json,
    sv_numeric,
    sv_text,
    sv_to_json,
    weight_of,
)
from .reduce import (
    Identity,
    SeriesIdentity,
    euler_linear,
    family_names,
    fs_odd_linear,
    identity_family,
    integral_I_closed,
    linear_lookup,
    pf_coeffs,
    product_expand,
    reduce_quadratic,
    regression_identities,
    regression_tags,
    resolve_tag,
)
from .verify import VerificationReport, run_suite, suite_ok, verify

__all__ = [
    "AccelerationError",
    "DivergentSumError",
    "EulerSumError",
    "PrecReal",
    "Rational",
    "SumSpecSyntaxError",
    "UnsupportedReductionError",
    "Factor",
    "SumSpec",
    "format_sumspec",
    "parse_sumspec",
    "partial_sum",
    "eval_I",
    "eval_R",
    "eval_polylog",
    "eval_series",
    "eval_sum",
    "Atom",
    "Monomial",
    "SymbolicValue",
    "normalize",
    "parse_symbolic",
    "sv_from_json",
    "sv_numeric",
    "sv_text",
    "sv_to_json",
    "weight_of",
    "Identity",
    "SeriesIdentity",
    "euler_linear",
    "family_names",
    "fs_odd_linear",
    "identity_family",
    "integral_I_closed",
    "linear_lookup",
    "pf_coeffs",
    "product_expand",
    "reduce_quadratic",
    "regression_identities",
    "regression_tags",
    "resolve_tag",
    "VerificationReport",
    "run_suite",
    "suite_ok",
    "verify",
]

__version__ = "0.1.0"
