"""Hartman-Watson functions, exact series and Asian option pricing."""

from ._hwkit import (
    ConvergenceError,
    DomainError,
    Error,
    Evaluator,
    F_exact,
    G_exact,
    JBS_exact,
    ParseError,
    SeriesError,
    asymptotic_constants,
    bessel_k,
    coeff_values,
    coeffs,
    critical_points,
    diagnostic_epsilon,
    f0_density,
    norm_factor,
    price_call_reduced,
    price_put_reduced,
    price_scenario,
    rate_I,
    rate_J,
    run_cli,
    table3,
    theta_asympt,
    theta_hw,
)

__all__ = [
    "ConvergenceError",
    "DomainError",
    "Error",
    "Evaluator",
    "F_exact",
    "G_exact",
    "JBS_exact",
    "ParseError",
    "SeriesError",
    "asymptotic_constants",
    "bessel_k",
    "coeff_values",
    "coeffs",
    "critical_points",
    "diagnostic_epsilon",
    "f0_density",
    "norm_factor",
    "price_call_reduced",
    "price_put_reduced",
    "price_scenario",
    "rate_I",
    "rate_J",
    "run_cli",
    "table3",
    "theta_asympt",
    "theta_hw",
]
