"""Riemann-Liouville integro-differential operators on generalized power
series, Hadamard finite-part quadrature, the fractional Leibniz rule, and
the second solution of Kummer's confluent hypergeometric equation."""

from rlkummer.errors import DivergentBoundaryError, DomainError
from rlkummer.gamma import gamma, gen_binomial, pochhammer, recip_gamma
from rlkummer.hadamard import (
    FinitePartResult,
    SmoothFunction,
    finite_part,
    rl_derivative_fp,
)
from rlkummer.kummer import (
    KummerParams,
    ResidualReport,
    kummer_1f1,
    kummer_transform_check,
    reduced_factor,
    second_solution_closed,
    second_solution_series,
    verify_solution,
)
from rlkummer.leibniz import LeibnizExpansion, frac_leibniz
from rlkummer.operator import (
    CompositionDefect,
    CompositionLaw,
    FracOrder,
    composition_defect,
    rl_monomial,
    rl_series,
)
from rlkummer.series import (
    GenPowerSeries,
    exp_series,
    gps_add,
    gps_eval,
    gps_mul,
    monomial,
    polynomial,
)

__all__ = [
    "CompositionDefect",
    "CompositionLaw",
    "DivergentBoundaryError",
    "DomainError",
    "FinitePartResult",
    "FracOrder",
    "GenPowerSeries",
    "KummerParams",
    "LeibnizExpansion",
    "ResidualReport",
    "SmoothFunction",
    "composition_defect",
    "exp_series",
    "finite_part",
    "frac_leibniz",
    "gamma",
    "gen_binomial",
    "gps_add",
    "gps_eval",
    "gps_mul",
    "kummer_1f1",
    "kummer_transform_check",
    "monomial",
    "pochhammer",
    "polynomial",
    "recip_gamma",
    "reduced_factor",
    "rl_derivative_fp",
    "rl_monomial",
    "rl_series",
    "second_solution_closed",
    "second_solution_series",
    "verify_solution",
]
