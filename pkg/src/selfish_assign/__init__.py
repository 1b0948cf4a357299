"""Exact solvers and equilibrium analysis for selfish resource assignment
under the utilitarian (sum-of-loads) social cost."""

from .algorithms import (
    DEFAULT_DISTINCT_VALUES,
    DPSolution,
    FractionalOptimum,
    RoundedInstance,
    approx_solve_delays,
    approx_solve_weights,
    dp_few_delays,
    dp_few_weights,
    dp_identical_delays,
    find_opt,
    find_opt_nash,
    fractional_opt,
    greedy_nash,
    round_delays,
    round_weights,
)
from .instances import (
    SplitMix64,
    gen_big_nash,
    gen_nash_ratio_lb,
    gen_random,
    gen_uniform_gap,
)
from .model import (
    Assignment,
    CountAssignment,
    Instance,
    Rational,
    RatioReport,
    cost,
    dumps_instance,
    format_rational,
    improving_moves,
    instance_from_jsonable,
    instance_to_jsonable,
    is_nash,
    loads_instance,
    parse_rational,
    resource_load,
    task_load,
)
from .oracle import (
    BoundCheck,
    BudgetExceededError,
    EnumerationBudget,
    enumerate_extremes,
    enumerate_nash_count_vectors,
    iter_count_vectors,
    verify_bounds,
)

__version__ = "0.1.0"

__all__ = [
    "Assignment",
    "BoundCheck",
    "BudgetExceededError",
    "CountAssignment",
    "DEFAULT_DISTINCT_VALUES",
    "DPSolution",
    "EnumerationBudget",
    "FractionalOptimum",
    "Instance",
    "Rational",
    "RatioReport",
    "RoundedInstance",
    "SplitMix64",
    "approx_solve_delays",
    "approx_solve_weights",
    "cost",
    "dp_few_delays",
    "dp_few_weights",
    "dp_identical_delays",
    "dumps_instance",
    "enumerate_extremes",
    "enumerate_nash_count_vectors",
    "find_opt",
    "find_opt_nash",
    "format_rational",
    "fractional_opt",
    "gen_big_nash",
    "gen_nash_ratio_lb",
    "gen_random",
    "gen_uniform_gap",
    "greedy_nash",
    "improving_moves",
    "instance_from_jsonable",
    "instance_to_jsonable",
    "is_nash",
    "iter_count_vectors",
    "loads_instance",
    "parse_rational",
    "resource_load",
    "round_delays",
    "round_weights",
    "task_load",
    "verify_bounds",
]
