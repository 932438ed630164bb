"""Empirical models: probability and possibility tables over a scenario.

Probability entries may be floats or exact :class:`fractions.Fraction`
values; exact inputs propagate exactly through marginals and the locality
LP.  Every operation here is a pure function of immutable inputs.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from numbers import Rational
from typing import Mapping, Sequence

from .errors import ShapeMismatch
from .scenario import Context, JointOutcome, Scenario

DEFAULT_EPSILON = 1e-9
DEFAULT_TOLERANCE = 1e-9

Number = "float | Fraction"


def _validate_table(scenario: Scenario, table: Mapping[Context, Sequence]) -> dict:
    out = {}
    for context in scenario.contexts():
        if context not in table:
            raise ShapeMismatch(f"missing context {context}")
        row = tuple(table[context])
        if len(row) != scenario.table_size(context):
            raise ShapeMismatch(
                f"context {context} has {len(row)} entries, "
                f"expected {scenario.table_size(context)}"
            )
        out[context] = row
    if len(table) != scenario.context_count():
        extra = set(table) - set(out)
        raise ShapeMismatch(f"unexpected contexts {sorted(extra)}")
    return out


@dataclass(frozen=True)
class ProbabilityModel:
    """Per-context outcome distributions, row-major (site 0 most significant).

    Each row must be non-negative and sum to 1 within 1e-9.  Rows whose
    entries are all ``Fraction`` stay exact through downstream arithmetic.
    """

    scenario: Scenario
    table: Mapping[Context, tuple]

    def __post_init__(self) -> None:
        rows = _validate_table(self.scenario, self.table)
        for context, row in rows.items():
            total = sum(row)
            for value in row:
                if value < 0:
                    raise ShapeMismatch(f"negative probability {value} at {context}")
            if abs(total - 1) > DEFAULT_TOLERANCE:
                raise ShapeMismatch(f"context {context} sums to {total}, not 1")
        object.__setattr__(self, "table", rows)

    def probability(self, context: Context, outcome: JointOutcome):
        context = self.scenario.validate_context(context)
        outcome = self.scenario.validate_outcome(context, outcome)
        return self.table[context][self.scenario.flatten(context, outcome)]

    def is_exact(self) -> bool:
        """True when every entry is rational, so arithmetic stays exact."""
        return all(
            isinstance(value, Rational) for row in self.table.values() for value in row
        )


@dataclass(frozen=True)
class PossibilityModel:
    """Boolean support per context: which joint outcomes are possible.

    Every context must have at least one possible outcome.
    """

    scenario: Scenario
    table: Mapping[Context, tuple]

    def __post_init__(self) -> None:
        rows = _validate_table(self.scenario, self.table)
        coerced = {}
        for context, row in rows.items():
            flags = tuple(bool(v) for v in row)
            if not any(flags):
                raise ShapeMismatch(f"context {context} has no possible outcome")
            coerced[context] = flags
        object.__setattr__(self, "table", coerced)

    def possible(self, context: Context, outcome: JointOutcome) -> bool:
        context = self.scenario.validate_context(context)
        outcome = self.scenario.validate_outcome(context, outcome)
        return self.table[context][self.scenario.flatten(context, outcome)]

    def support(self, context: Context) -> tuple[JointOutcome, ...]:
        """Possible joint outcomes of ``context`` in canonical order."""
        row = self.table[context]
        return tuple(
            o for i, o in enumerate(self.scenario.joint_outcomes(context)) if row[i]
        )

    def possible_entries(self) -> list[tuple[Context, JointOutcome]]:
        """All (context, outcome) pairs with a possible entry, sorted."""
        return [(c, o) for c in self.scenario.contexts() for o in self.support(c)]


def collapse(model: ProbabilityModel, epsilon: float = DEFAULT_EPSILON) -> PossibilityModel:
    """Possibilistic collapse: an entry is possible iff its probability
    exceeds ``epsilon``.

    With ``epsilon`` below 1/(max outcome count), every context keeps at
    least one possible outcome (pigeonhole on a normalized row).
    """
    if epsilon < 0:
        raise ShapeMismatch(f"epsilon must be non-negative, got {epsilon}")
    table = {
        context: tuple(value > epsilon for value in row)
        for context, row in model.table.items()
    }
    return PossibilityModel(model.scenario, table)


def deterministic_probability_model(model: PossibilityModel) -> ProbabilityModel:
    """Uniform distribution on each context's support (exact rationals).

    For a deterministic-grid support this is the grid's point distribution;
    in general it is the uniform no-signalling companion used for
    hierarchy tests on supports that admit one.
    """
    table = {}
    for context in model.scenario.contexts():
        row = model.table[context]
        weight = Fraction(1, sum(row))
        table[context] = tuple(weight if flag else Fraction(0) for flag in row)
    return ProbabilityModel(model.scenario, table)


# -- no-signalling ---------------------------------------------------------


def _proper_subsets(n: int):
    sites = range(n)
    for size in range(1, n):
        yield from itertools.combinations(sites, size)


def _possibilistic_marginal(
    model: PossibilityModel, context: Context, subset: tuple[int, ...]
) -> frozenset:
    scenario = model.scenario
    row = model.table[context]
    seen = set()
    for i, outcome in enumerate(scenario.joint_outcomes(context)):
        if row[i]:
            seen.add(tuple(outcome[s] for s in subset))
    return frozenset(seen)


def _probabilistic_marginal(
    model: ProbabilityModel, context: Context, subset: tuple[int, ...]
) -> dict:
    scenario = model.scenario
    row = model.table[context]
    sums: dict = {}
    for i, outcome in enumerate(scenario.joint_outcomes(context)):
        key = tuple(outcome[s] for s in subset)
        sums[key] = sums.get(key, 0) + row[i]
    return sums


def is_no_signalling(model, tol: float = DEFAULT_TOLERANCE) -> bool:
    """Whether the model's marginals are independent of remote settings.

    Checked for every proper nonempty subset of sites.  For a
    :class:`PossibilityModel` the marginal supports must coincide exactly;
    for a :class:`ProbabilityModel` the marginal distributions must agree
    within ``tol`` across all choices of measurements outside the subset.
    """
    scenario = model.scenario
    possibilistic = isinstance(model, PossibilityModel)
    for subset in _proper_subsets(scenario.sites):
        reference: dict = {}
        for context in scenario.contexts():
            key = tuple(context[s] for s in subset)
            if possibilistic:
                marginal = _possibilistic_marginal(model, context, subset)
                if key not in reference:
                    reference[key] = marginal
                elif reference[key] != marginal:
                    return False
            else:
                marginal = _probabilistic_marginal(model, context, subset)
                if key not in reference:
                    reference[key] = marginal
                else:
                    base = reference[key]
                    for outcome_key in marginal:
                        if abs(marginal[outcome_key] - base.get(outcome_key, 0)) > tol:
                            return False
    return True
