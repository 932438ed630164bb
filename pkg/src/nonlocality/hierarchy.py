"""Deciding where a model sits in the nonlocality hierarchy.

Levels, strictly ordered: LOCAL < PROBABILISTIC < LOGICAL < STRONG, where
membership of a level implies membership of every lower one (a strongly
nonlocal model is in particular logically and probabilistically nonlocal).

Two polynomial deciders cover the scenarios where the per-entry paradox
check is complete: two settings per site with any outcome counts, and any
number of two-outcome settings per site.  Both agree with the brute-force
grid oracle; the oracle remains available for everything else.
"""

from __future__ import annotations

import enum
from fractions import Fraction

from .errors import ShapeMismatch, TooLarge
from .grids import grid_count, iter_grids, is_local, is_strongly_nonlocal
from .hardy import CoarseHardyWitness, check_coarse_witness, find_hardy_witnesses
from .lp import min_l1_mixture_deviation
from .models import (
    DEFAULT_EPSILON,
    DEFAULT_TOLERANCE,
    PossibilityModel,
    ProbabilityModel,
    collapse,
)
from .scenario import Context, JointOutcome

GRID_ENUMERATION_CAP = 10**6


class HierarchyLevel(enum.IntEnum):
    LOCAL = 0
    PROBABILISTIC = 1
    LOGICAL = 2
    STRONG = 3


def decide_22l(
    model: PossibilityModel,
) -> tuple[bool, tuple[tuple[Context, JointOutcome], ...]]:
    """Locality of a two-site, two-settings-per-site support.

    Returns (local, non-extendable entries).  An entry (a, b) at context
    (x, y) extends to a grid iff some pair from U_A x U_B is possible at
    the double-alternate context; checking that directly per entry is
    quadratic in the outcome count and agrees exactly with the oracle.
    """
    scenario = model.scenario
    if scenario.sites != 2 or scenario.measurements_per_site != (2, 2):
        raise ShapeMismatch("decide_22l needs two sites with two settings each")
    failures = []
    for context in scenario.contexts():
        alice_pair = (context[0], 1 - context[0])
        bob_pair = (context[1], 1 - context[1])
        for outcome in model.support(context):
            if check_coarse_witness(model, alice_pair, bob_pair, outcome) is not None:
                failures.append((context, outcome))
    return (not failures, tuple(failures))


def decide_2k2(
    model: PossibilityModel,
) -> tuple[bool, tuple[CoarseHardyWitness, ...]]:
    """Locality of a two-site support with binary outcomes everywhere.

    Logically nonlocal iff some pair-of-settings sub-table carries a Hardy
    configuration; the per-subtable test is the coarse witness check.
    """
    scenario = model.scenario
    if scenario.sites != 2 or any(
        count != 2 for counts in scenario.outcomes for count in counts
    ):
        raise ShapeMismatch("decide_2k2 needs two sites with binary outcomes")
    witnesses = tuple(find_hardy_witnesses(model))
    return (not witnesses, witnesses)


def is_probabilistically_local(
    model: ProbabilityModel, tol: float = DEFAULT_TOLERANCE
) -> bool:
    """Whether the table is a convex combination of deterministic grids.

    LP feasibility over grid weights; exact (zero deviation demanded) when
    every entry is rational, otherwise total absolute deviation up to
    ``tol`` is accepted.  Raises TooLarge past the grid-count guard.
    """
    scenario = model.scenario
    count = grid_count(scenario)
    if count > GRID_ENUMERATION_CAP:
        raise TooLarge(f"{count} grids exceed the cap of {GRID_ENUMERATION_CAP}")
    contexts = list(scenario.contexts())
    offsets = {}
    total = 0
    for context in contexts:
        offsets[context] = total
        total += scenario.table_size(context)
    target = [0] * total
    for context in contexts:
        base = offsets[context]
        for i, value in enumerate(model.table[context]):
            target[base + i] = Fraction(value)
    columns = []
    for grid in iter_grids(scenario):
        column = [0] * total
        for context in contexts:
            column[offsets[context] + scenario.flatten(context, grid.outcome_for(context))] = 1
        columns.append(column)
    deviation = min_l1_mixture_deviation(columns, target)
    if model.is_exact():
        return deviation == 0
    return deviation <= Fraction(tol)


def classify_support(model: PossibilityModel) -> HierarchyLevel:
    """Possibilistic part of the hierarchy: LOCAL, LOGICAL, or STRONG."""
    if is_strongly_nonlocal(model):
        return HierarchyLevel.STRONG
    if not is_local(model):
        return HierarchyLevel.LOGICAL
    return HierarchyLevel.LOCAL


def classify(
    model: ProbabilityModel,
    epsilon: float = DEFAULT_EPSILON,
    tol: float = DEFAULT_TOLERANCE,
) -> HierarchyLevel:
    """Hierarchy level of a probability model.

    The possibilistic levels are decided on the collapsed support; the LP
    only runs when the support is local, which is the only case where the
    probabilistic level is still in question.
    """
    support = collapse(model, epsilon)
    level = classify_support(support)
    if level is not HierarchyLevel.LOCAL:
        return level
    if not is_probabilistically_local(model, tol):
        return HierarchyLevel.PROBABILISTIC
    return HierarchyLevel.LOCAL
