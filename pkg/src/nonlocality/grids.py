"""Deterministic grids and the brute-force locality oracle.

A deterministic grid assigns one outcome to every (site, measurement) cell;
it is consistent with a possibility model when every context's induced
joint outcome is possible.  Locality of a support means every possible
entry lies on some consistent grid; strong nonlocality means no entry does
(equivalently, no consistent grid exists at all).

The search enumerates cell assignments depth-first and aborts a partial
assignment as soon as some fully-determined context is impossible, which
keeps the oracle usable well past the scenario sizes the polynomial
deciders cover.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterator, Sequence

from .errors import NotPossible
from .models import PossibilityModel, ProbabilityModel
from .scenario import Context, JointOutcome, Scenario


@dataclass(frozen=True)
class DeterministicGrid:
    """One outcome per (site, measurement): ``assignment[site][measurement]``."""

    assignment: tuple[tuple[int, ...], ...]

    def outcome_for(self, context: Context) -> JointOutcome:
        return tuple(self.assignment[site][m] for site, m in enumerate(context))

    def is_consistent_with(self, model: PossibilityModel) -> bool:
        return all(
            model.possible(context, self.outcome_for(context))
            for context in model.scenario.contexts()
        )


def grid_count(scenario: Scenario) -> int:
    return math.prod(count for counts in scenario.outcomes for count in counts)


def iter_grids(scenario: Scenario) -> Iterator[DeterministicGrid]:
    """All grids, in lexicographic order of the flattened assignment."""
    widths = [len(counts) for counts in scenario.outcomes]
    cells = [count for counts in scenario.outcomes for count in counts]
    for flat in itertools.product(*(range(c) for c in cells)):
        assignment = []
        pos = 0
        for width in widths:
            assignment.append(tuple(flat[pos : pos + width]))
            pos += width
        yield DeterministicGrid(tuple(assignment))


class _GridSearch:
    """Shared DFS over (site, measurement) cells with context pruning."""

    def __init__(self, model: PossibilityModel):
        self.model = model
        scenario = model.scenario
        self.cells: list[tuple[int, int]] = [
            (site, m)
            for site in range(scenario.sites)
            for m in range(len(scenario.outcomes[site]))
        ]
        self.cell_index = {cell: i for i, cell in enumerate(self.cells)}
        self.domains = [scenario.outcomes[site][m] for site, m in self.cells]
        # A context becomes checkable once its last needed cell is assigned.
        self.triggers: list[list[Context]] = [[] for _ in self.cells]
        for context in scenario.contexts():
            needed = [self.cell_index[(site, m)] for site, m in enumerate(context)]
            self.triggers[max(needed)].append(context)

    def _violates(self, values: list, depth: int) -> bool:
        scenario = self.model.scenario
        for context in self.triggers[depth]:
            outcome = tuple(
                values[self.cell_index[(site, m)]] for site, m in enumerate(context)
            )
            if not self.model.table[context][scenario.flatten(context, outcome)]:
                return True
        return False

    def solutions(self, seed: dict | None = None) -> Iterator[DeterministicGrid]:
        seed = seed or {}
        pinned = {self.cell_index[cell]: value for cell, value in seed.items()}
        values: list = [None] * len(self.cells)
        scenario = self.model.scenario
        widths = [len(counts) for counts in scenario.outcomes]

        def descend(depth: int) -> Iterator[DeterministicGrid]:
            if depth == len(self.cells):
                assignment = []
                pos = 0
                for width in widths:
                    assignment.append(tuple(values[pos : pos + width]))
                    pos += width
                yield DeterministicGrid(tuple(assignment))
                return
            choices = (
                (pinned[depth],) if depth in pinned else range(self.domains[depth])
            )
            for value in choices:
                values[depth] = value
                if not self._violates(values, depth):
                    yield from descend(depth + 1)
            values[depth] = None

        yield from descend(0)


def iter_consistent_grids(model: PossibilityModel) -> Iterator[DeterministicGrid]:
    return _GridSearch(model).solutions()


def extends_to_grid(
    model: PossibilityModel, context: Context, outcome: JointOutcome
) -> DeterministicGrid | None:
    """Complete a possible entry to a consistent grid, or report that none
    exists.  The search is exhaustive over all completions."""
    context = model.scenario.validate_context(context)
    outcome = model.scenario.validate_outcome(context, outcome)
    if not model.possible(context, outcome):
        raise NotPossible(f"entry {outcome} at context {context} is impossible")
    seed = {(site, m): outcome[site] for site, m in enumerate(context)}
    return next(_GridSearch(model).solutions(seed), None)


def is_local(model: PossibilityModel) -> bool:
    """True iff every possible entry extends to a consistent grid."""
    scenario = model.scenario
    uncovered = {
        (context, outcome)
        for context in scenario.contexts()
        for outcome in model.support(context)
    }
    for grid in iter_consistent_grids(model):
        for context in scenario.contexts():
            uncovered.discard((context, grid.outcome_for(context)))
        if not uncovered:
            return True
    return not uncovered


def is_strongly_nonlocal(model: PossibilityModel) -> bool:
    """True iff no possible entry extends to a grid, i.e. no consistent
    grid exists at all."""
    return next(iter_consistent_grids(model), None) is None


def grid_possibility_model(scenario: Scenario, grid: DeterministicGrid) -> PossibilityModel:
    table = {}
    for context in scenario.contexts():
        hit = scenario.flatten(context, grid.outcome_for(context))
        table[context] = tuple(
            i == hit for i in range(scenario.table_size(context))
        )
    return PossibilityModel(scenario, table)


def grid_probability_model(scenario: Scenario, grid: DeterministicGrid) -> ProbabilityModel:
    table = {}
    for context in scenario.contexts():
        hit = scenario.flatten(context, grid.outcome_for(context))
        table[context] = tuple(
            Fraction(1) if i == hit else Fraction(0)
            for i in range(scenario.table_size(context))
        )
    return ProbabilityModel(scenario, table)
