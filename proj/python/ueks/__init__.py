"""U-empirical Kolmogorov-Smirnov statistics, large-deviation rates and
local Bahadur efficiencies."""

from ueks._core import (
    NullSimulation,
    SizeError,
    TieError,
    UeksError,
    arcones_bound,
    binomial_tail_bound,
    cdf,
    draw,
    kernel,
    kl_divergence,
    kolmogorov_f,
    kolmogorov_f0,
    leading_coeff,
    local_efficiency,
    maximize_variance,
    min_kl_to_null,
    population_limit,
    projection,
    quantile,
    simulate_null,
    statistic,
    test_ids,
    variance,
)

__all__ = [
    "NullSimulation",
    "SizeError",
    "TieError",
    "UeksError",
    "arcones_bound",
    "binomial_tail_bound",
    "cdf",
    "draw",
    "kernel",
    "kl_divergence",
    "kolmogorov_f",
    "kolmogorov_f0",
    "leading_coeff",
    "local_efficiency",
    "maximize_variance",
    "min_kl_to_null",
    "population_limit",
    "projection",
    "quantile",
    "simulate_null",
    "statistic",
    "test_ids",
    "variance",
]
