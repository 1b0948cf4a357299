"""Brute-force ground truth for small instances.

Enumerates every assignment (or, for identical-weight tasks, every
per-resource count vector) to find the exact optimum, the cheapest and the
most expensive Nash equilibrium, and the ratios between them.  Also checks
the equilibrium-quality bounds that hold for restricted instance families.
"""

import itertools
from dataclasses import dataclass
from fractions import Fraction
from math import comb
from typing import NamedTuple

from .model import (
    Assignment,
    CountAssignment,
    Instance,
    RatioReport,
    cost,
    is_nash,
)

DEFAULT_MAX_STATES = 10**7


@dataclass(frozen=True)
class EnumerationBudget:
    """Upper bound on the number of states an enumeration may visit."""

    max_states: int = DEFAULT_MAX_STATES

    def __post_init__(self):
        if self.max_states < 1:
            raise ValueError("max_states must be positive")


class BudgetExceededError(RuntimeError):
    """Raised instead of silently truncating an enumeration."""

    def __init__(self, required: int, allowed: int):
        super().__init__(
            f"enumeration needs {required} states, budget allows {allowed}"
        )
        self.required = required
        self.allowed = allowed


def _check_budget(required: int, budget: EnumerationBudget):
    if required > budget.max_states:
        raise BudgetExceededError(required, budget.max_states)


def iter_count_vectors(n: int, m: int):
    """All ways to split n tasks over m resources, largest-first-coordinate
    order (so materialized assignments appear in ascending lexicographic
    order)."""
    if m == 1:
        yield (n,)
        return
    for first in range(n, -1, -1):
        for rest in iter_count_vectors(n - first, m - 1):
            yield (first,) + rest


def enumerate_nash_count_vectors(inst: Instance, budget: EnumerationBudget = None):
    """Exactly the Nash count vectors of an identical-weight instance."""
    if not inst.identical_weights:
        raise ValueError("count-vector enumeration needs identical task weights")
    budget = budget or EnumerationBudget()
    _check_budget(comb(inst.n + inst.m - 1, inst.m - 1), budget)
    return [
        CountAssignment(vec)
        for vec in iter_count_vectors(inst.n, inst.m)
        if is_nash(inst, CountAssignment(vec))
    ]


class _Extreme:
    """Running (cost, witness) extremum with lexicographic tie-breaking.

    The update is associative and commutative, so a partitioned enumeration
    reduced with it gives the same result as a sequential scan.
    """

    def __init__(self, prefer_high: bool):
        self.prefer_high = prefer_high
        self.cost = None
        self.witness = None

    def offer(self, value: Fraction, witness: tuple):
        if self.cost is None:
            self.cost, self.witness = value, witness
            return
        better = value > self.cost if self.prefer_high else value < self.cost
        if better or (value == self.cost and witness < self.witness):
            self.cost, self.witness = value, witness


def enumerate_extremes(inst: Instance, budget: EnumerationBudget = None) -> RatioReport:
    """Exact extreme costs over all assignments and over the Nash subset.

    Identical-weight instances are enumerated as count vectors (the cost and
    the equilibrium test only depend on counts), everything else as full
    m^n assignments.  Witnesses with tied costs resolve to the
    lexicographically smallest assignment.
    """
    budget = budget or EnumerationBudget()
    best = _Extreme(prefer_high=False)
    best_nash = _Extreme(prefer_high=False)
    worst_nash = _Extreme(prefer_high=True)

    if inst.identical_weights:
        _check_budget(comb(inst.n + inst.m - 1, inst.m - 1), budget)
        for vec in iter_count_vectors(inst.n, inst.m):
            counts = CountAssignment(vec)
            value = cost(inst, counts)
            witness = counts.to_assignment().target
            best.offer(value, witness)
            if is_nash(inst, counts):
                best_nash.offer(value, witness)
                worst_nash.offer(value, witness)
    else:
        _check_budget(inst.m**inst.n, budget)
        for target in itertools.product(range(1, inst.m + 1), repeat=inst.n):
            a = Assignment(target)
            value = cost(inst, a)
            best.offer(value, target)
            if is_nash(inst, a):
                best_nash.offer(value, target)
                worst_nash.offer(value, target)

    if best_nash.cost is None:
        raise AssertionError("a pure Nash assignment always exists; enumeration is broken")
    return RatioReport(
        min_cost=best.cost,
        min_nash_cost=best_nash.cost,
        max_nash_cost=worst_nash.cost,
        coordination_ratio=worst_nash.cost / best.cost,
        nash_gap=worst_nash.cost / best_nash.cost,
        opt_gap=best_nash.cost / best.cost,
        min_cost_witness=Assignment(best.witness),
        min_nash_witness=Assignment(best_nash.witness),
        max_nash_witness=Assignment(worst_nash.witness),
    )


class BoundCheck(NamedTuple):
    """Outcome of one bound: slack = bound minus achieved value (>= 0 iff ok)."""

    name: str
    satisfied: bool
    slack: Fraction


def verify_bounds(inst: Instance, report: RatioReport):
    """Check every equilibrium-quality bound whose hypothesis the instance meets.

    Bounds: worst-Nash/optimum at most 4x the weight spread (for weights all
    at least 1); worst-Nash/best-Nash at most 3 for identical delays and at
    most 4/3 for identical weights.  Raises if the report does not belong to
    the instance (witnesses are re-evaluated).
    """
    if cost(inst, report.min_cost_witness) != report.min_cost:
        raise ValueError("report does not match instance: optimum witness re-costs differently")
    for witness, claimed in (
        (report.min_nash_witness, report.min_nash_cost),
        (report.max_nash_witness, report.max_nash_cost),
    ):
        if cost(inst, witness) != claimed:
            raise ValueError("report does not match instance: Nash witness re-costs differently")
        if not is_nash(inst, witness):
            raise ValueError("report does not match instance: Nash witness is not a Nash assignment")

    checks = []
    if min(inst.weights) >= 1:
        bound = 4 * inst.weight_spread
        checks.append(
            BoundCheck(
                "coordination-ratio-weight-range",
                report.coordination_ratio <= bound,
                bound - report.coordination_ratio,
            )
        )
    if inst.identical_delays:
        bound = Fraction(3)
        checks.append(
            BoundCheck(
                "nash-gap-identical-delays",
                report.nash_gap <= bound,
                bound - report.nash_gap,
            )
        )
    if inst.identical_weights:
        bound = Fraction(4, 3)
        checks.append(
            BoundCheck(
                "nash-gap-identical-weights",
                report.nash_gap <= bound,
                bound - report.nash_gap,
            )
        )
    return checks
