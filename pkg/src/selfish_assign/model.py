"""Exact model of the selfish resource-assignment game under the sum-of-loads cost.

Each task carries a positive rational weight and picks exactly one resource.
A resource with delay d and total assigned weight S imposes load d*S on every
task that uses it; the social cost is the sum of the loads incurred by the
individual tasks.  Equilibrium checks hinge on exact ties, so every quantity
is a fractions.Fraction and nothing is ever rounded.
"""

import json
from dataclasses import dataclass
from fractions import Fraction
from typing import Union

#: Exact rational number: p/q in lowest terms, q > 0.  All weights, delays,
#: loads, costs and ratios in this package are Rationals.
Rational = Fraction


def parse_rational(value) -> Fraction:
    """Parse a number from an instance file.

    Accepted forms: a JSON integer, a "p/q" string, or a decimal string
    (decimals convert exactly: "0.5" -> 1/2).  Non-integer JSON floats are
    rejected because their binary representation is inexact.
    """
    if isinstance(value, bool):
        raise ValueError(f"not a rational number: {value!r}")
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, float):
        if value.is_integer():
            return Fraction(int(value))
        raise ValueError(
            f"non-integer JSON number {value!r} is inexact; quote it as a string"
        )
    if isinstance(value, str):
        try:
            return Fraction(value.strip())
        except (ValueError, ZeroDivisionError) as exc:
            raise ValueError(f"not a rational number: {value!r}") from exc
    raise ValueError(f"not a rational number: {value!r}")


def format_rational(x: Fraction) -> str:
    """Render a rational as "p/q", always with an explicit denominator."""
    return f"{x.numerator}/{x.denominator}"


def _json_number(x: Fraction):
    """Canonical instance-file encoding: plain int when integral, else "p/q"."""
    if x.denominator == 1:
        return x.numerator
    return f"{x.numerator}/{x.denominator}"


@dataclass(frozen=True)
class Instance:
    """A problem instance: task weights plus resource delays.

    Delays are sorted non-decreasing on construction, so resource 1 is always
    a fastest resource.  Task order is preserved (assignments are indexed by
    task).  Immutable; safe to share between threads.
    """

    weights: tuple
    delays: tuple

    def __post_init__(self):
        weights = tuple(Fraction(w) for w in self.weights)
        delays = tuple(sorted(Fraction(d) for d in self.delays))
        if not weights:
            raise ValueError("an instance needs at least one task")
        if not delays:
            raise ValueError("an instance needs at least one resource")
        if any(w <= 0 for w in weights):
            raise ValueError("task weights must be positive")
        if any(d <= 0 for d in delays):
            raise ValueError("resource delays must be positive")
        object.__setattr__(self, "weights", weights)
        object.__setattr__(self, "delays", delays)

    @property
    def n(self) -> int:
        return len(self.weights)

    @property
    def m(self) -> int:
        return len(self.delays)

    @property
    def total_weight(self) -> Fraction:
        return sum(self.weights, Fraction(0))

    @property
    def throughput(self) -> Fraction:
        """Sum of reciprocal delays; the fractional optimum loads every
        resource to n/throughput."""
        return sum((Fraction(1, 1) / d for d in self.delays), Fraction(0))

    @property
    def average_load(self) -> Fraction:
        """Total weight divided by the number of resources (the per-resource
        load every assignment averages to when delays are all 1)."""
        return self.total_weight / self.m

    @property
    def weight_spread(self) -> Fraction:
        """Ratio of the largest task weight to the smallest."""
        return max(self.weights) / min(self.weights)

    @property
    def delay_spread(self) -> Fraction:
        """Ratio of the largest resource delay to the smallest."""
        return self.delays[-1] / self.delays[0]

    @property
    def identical_weights(self) -> bool:
        return min(self.weights) == max(self.weights)

    @property
    def unit_weights(self) -> bool:
        return all(w == 1 for w in self.weights)

    @property
    def identical_delays(self) -> bool:
        return self.delays[0] == self.delays[-1]

    @property
    def distinct_weight_values(self) -> tuple:
        return tuple(sorted(set(self.weights)))

    @property
    def distinct_delay_values(self) -> tuple:
        return tuple(sorted(set(self.delays)))


@dataclass(frozen=True)
class Assignment:
    """A pure-strategy profile: entry i is the 1-based resource task i uses."""

    target: tuple

    def __post_init__(self):
        target = tuple(self.target)
        for entry in target:
            if not isinstance(entry, int) or isinstance(entry, bool) or entry < 1:
                raise ValueError(f"resource indices are 1-based ints, got {entry!r}")
        object.__setattr__(self, "target", target)

    def __len__(self) -> int:
        return len(self.target)


@dataclass(frozen=True)
class CountAssignment:
    """Per-resource task counts; a sufficient description of an assignment
    when all task weights are identical."""

    counts: tuple

    def __post_init__(self):
        counts = tuple(self.counts)
        if not counts:
            raise ValueError("a count vector needs at least one resource")
        for c in counts:
            if not isinstance(c, int) or isinstance(c, bool) or c < 0:
                raise ValueError(f"task counts are non-negative ints, got {c!r}")
        object.__setattr__(self, "counts", counts)

    @property
    def total(self) -> int:
        return sum(self.counts)

    def to_assignment(self) -> Assignment:
        """Materialize: tasks in index order fill resources in index order."""
        target = []
        for resource, c in enumerate(self.counts, start=1):
            target.extend([resource] * c)
        return Assignment(tuple(target))


AnyAssignment = Union[Assignment, CountAssignment]


def _as_counts(inst: Instance, a: CountAssignment) -> tuple:
    if len(a.counts) != inst.m:
        raise ValueError(f"count vector has {len(a.counts)} entries, instance has {inst.m} resources")
    if a.total != inst.n:
        raise ValueError(f"count vector places {a.total} tasks, instance has {inst.n}")
    if not inst.identical_weights:
        raise ValueError("count vectors only describe assignments of identical-weight tasks")
    return a.counts


def _weight_on_resources(inst: Instance, a: Assignment):
    """Per-resource (count, weight sum) pairs, validating the assignment."""
    if len(a.target) != inst.n:
        raise ValueError(f"assignment has {len(a.target)} entries, instance has {inst.n} tasks")
    counts = [0] * inst.m
    sums = [Fraction(0)] * inst.m
    for i, resource in enumerate(a.target):
        if resource > inst.m:
            raise ValueError(f"task {i + 1} uses resource {resource}, instance has {inst.m}")
        counts[resource - 1] += 1
        sums[resource - 1] += inst.weights[i]
    return counts, sums


def resource_load(inst: Instance, a: AnyAssignment, resource: int) -> Fraction:
    """Load of the 1-based `resource`: its delay times the weight assigned to it."""
    if not 1 <= resource <= inst.m:
        raise IndexError(f"resource index {resource} out of range 1..{inst.m}")
    if isinstance(a, CountAssignment):
        counts = _as_counts(inst, a)
        return inst.delays[resource - 1] * counts[resource - 1] * inst.weights[0]
    _, sums = _weight_on_resources(inst, a)
    return inst.delays[resource - 1] * sums[resource - 1]


def task_load(inst: Instance, a: Assignment, task: int) -> Fraction:
    """Load incurred by the 1-based `task`: the load of the resource it uses."""
    if not 1 <= task <= inst.n:
        raise IndexError(f"task index {task} out of range 1..{inst.n}")
    _, sums = _weight_on_resources(inst, a)
    resource = a.target[task - 1]
    return inst.delays[resource - 1] * sums[resource - 1]


def cost(inst: Instance, a: AnyAssignment) -> Fraction:
    """Social cost: the sum over tasks of the load each task incurs.

    For a count vector with common task weight w this is w * sum(c_l^2 * d_l).
    """
    if isinstance(a, CountAssignment):
        counts = _as_counts(inst, a)
        unit = sum((Fraction(c * c) * d for c, d in zip(counts, inst.delays)), Fraction(0))
        return inst.weights[0] * unit
    counts, sums = _weight_on_resources(inst, a)
    return sum(
        (c * d * s for c, d, s in zip(counts, inst.delays, sums)),
        Fraction(0),
    )


def is_nash(inst: Instance, a: AnyAssignment) -> bool:
    """True iff no task can strictly lower its own load by moving alone.

    A move to a resource where the task would incur an equal load does not
    break equilibrium.  For count vectors this reduces to
    c_i * d_i <= (c_j + 1) * d_j for all resource pairs i, j.
    """
    if isinstance(a, CountAssignment):
        counts = _as_counts(inst, a)
        occupied = [(c, d) for c, d in zip(counts, inst.delays) if c > 0]
        best_move = min((c + 1) * d for c, d in zip(counts, inst.delays))
        return all(c * d <= best_move for c, d in occupied)
    counts, sums = _weight_on_resources(inst, a)
    for i, resource in enumerate(a.target):
        own = inst.delays[resource - 1] * sums[resource - 1]
        w = inst.weights[i]
        for other in range(inst.m):
            if other == resource - 1:
                continue
            if inst.delays[other] * (sums[other] + w) < own:
                return False
    return True


def improving_moves(inst: Instance, a: Assignment):
    """One best improving move per deviating task: (task, resource, new load).

    Empty iff the assignment is a Nash equilibrium.  The witness move is the
    one minimizing the task's new load, lowest resource index on ties.
    """
    _, sums = _weight_on_resources(inst, a)
    moves = []
    for i, resource in enumerate(a.target):
        own = inst.delays[resource - 1] * sums[resource - 1]
        w = inst.weights[i]
        best = None
        for other in range(inst.m):
            if other == resource - 1:
                continue
            new_load = inst.delays[other] * (sums[other] + w)
            if new_load < own and (best is None or new_load < best[1]):
                best = (other + 1, new_load)
        if best is not None:
            moves.append((i + 1, best[0], best[1]))
    return moves


@dataclass(frozen=True)
class RatioReport:
    """Extreme costs over all assignments and over the Nash subset.

    Ratios: coordination_ratio = worst Nash / optimum, nash_gap = worst Nash /
    best Nash, opt_gap = best Nash / optimum.  Each extreme value comes with a
    witness assignment that re-evaluates to it.
    """

    min_cost: Fraction
    min_nash_cost: Fraction
    max_nash_cost: Fraction
    coordination_ratio: Fraction
    nash_gap: Fraction
    opt_gap: Fraction
    min_cost_witness: Assignment
    min_nash_witness: Assignment
    max_nash_witness: Assignment

    def __post_init__(self):
        if not self.min_cost <= self.min_nash_cost <= self.max_nash_cost:
            raise ValueError("extreme costs violate min <= min Nash <= max Nash")
        if self.coordination_ratio != self.max_nash_cost / self.min_cost:
            raise ValueError("coordination_ratio inconsistent with extreme costs")
        if self.nash_gap != self.max_nash_cost / self.min_nash_cost:
            raise ValueError("nash_gap inconsistent with extreme costs")
        if self.opt_gap != self.min_nash_cost / self.min_cost:
            raise ValueError("opt_gap inconsistent with extreme costs")


# ---------------------------------------------------------------------------
# Instance files.  Schema: {"weights": [rat, ...], "delays": [rat, ...]}
# where rat is an integer, a decimal string, or a "p/q" string.  Generators
# may add a "reference_assignments" object of named 1-based index arrays.
# ---------------------------------------------------------------------------

def instance_to_jsonable(inst: Instance, reference_assignments=None) -> dict:
    """Canonical JSON-ready document for an instance."""
    doc = {
        "weights": [_json_number(w) for w in inst.weights],
        "delays": [_json_number(d) for d in inst.delays],
    }
    if reference_assignments:
        doc["reference_assignments"] = {
            name: list(a.target) for name, a in reference_assignments.items()
        }
    return doc


def instance_from_jsonable(obj):
    """Parse an instance document; returns (Instance, reference assignments)."""
    if not isinstance(obj, dict):
        raise ValueError("instance document must be a JSON object")
    for key in ("weights", "delays"):
        if key not in obj or not isinstance(obj[key], list):
            raise ValueError(f'instance document needs a "{key}" array')
    inst = Instance(
        weights=tuple(parse_rational(w) for w in obj["weights"]),
        delays=tuple(parse_rational(d) for d in obj["delays"]),
    )
    references = {}
    for name, target in (obj.get("reference_assignments") or {}).items():
        if not isinstance(target, list):
            raise ValueError(f"reference assignment {name!r} must be an array")
        references[name] = Assignment(tuple(target))
    return inst, references


def dumps_instance(inst: Instance, reference_assignments=None) -> str:
    return json.dumps(instance_to_jsonable(inst, reference_assignments), indent=2) + "\n"


def loads_instance(text: str):
    return instance_from_jsonable(json.loads(text))
