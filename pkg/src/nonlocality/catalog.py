"""Canonical constructors for the named models used as golden fixtures.

Every entry is exact (rational probabilities or plain supports) and passes
its documented structural checks at construction time.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .errors import NonlocalityError
from .models import (
    PossibilityModel,
    ProbabilityModel,
    deterministic_probability_model,
    is_no_signalling,
)
from .grids import DeterministicGrid, grid_probability_model
from .quantum import ghz_rule
from .scenario import Scenario


@dataclass(frozen=True)
class CatalogEntry:
    name: str
    model: "ProbabilityModel | PossibilityModel"
    provenance: str


def pr_box() -> ProbabilityModel:
    """The extremal no-signalling box: p(ab|xy) = 1/2 when a xor b = x.y,
    else 0, as exact rationals."""
    scenario = Scenario.uniform(2, 2, 2)
    half = Fraction(1, 2)
    table = {}
    for x, y in scenario.contexts():
        table[(x, y)] = tuple(
            half if (a ^ b) == (x & y) else Fraction(0)
            for a in range(2)
            for b in range(2)
        )
    return ProbabilityModel(scenario, table)


def hardy_support() -> PossibilityModel:
    """The minimal bipartite paradox support: one pinned possible entry and
    three pinned zeros; all unspecified entries are taken possible, the
    weakest (and no-signalling) completion."""
    scenario = Scenario.uniform(2, 2, 2)
    impossible = {
        ((0, 1), (0, 1)),
        ((1, 0), (1, 0)),
        ((1, 1), (0, 0)),
    }
    table = {}
    for context in scenario.contexts():
        table[context] = tuple(
            (context, outcome) not in impossible
            for outcome in scenario.joint_outcomes(context)
        )
    return PossibilityModel(scenario, table)


def table_iv_d() -> PossibilityModel:
    """The unique outcome-symmetric support (up to relabelling) that is
    logically but not strongly nonlocal: three perfectly correlated
    contexts and one full-support context."""
    scenario = Scenario.uniform(2, 2, 2)
    diag = (True, False, False, True)
    full = (True, True, True, True)
    table = {
        (0, 0): diag,
        (0, 1): diag,
        (1, 0): full,
        (1, 1): diag,
    }
    return PossibilityModel(scenario, table)


def table_iv_d_uniform() -> ProbabilityModel:
    """No-signalling probability companion of :func:`table_iv_d`: uniform
    on each context's support (one member of the family realizing it)."""
    return deterministic_probability_model(table_iv_d())


def ghz_mermin_possibilistic() -> PossibilityModel:
    """The three-qubit X/Y parity support: even-1s outcomes at XXX, odd-1s
    at the two-Y contexts, full support at odd-Y contexts."""
    scenario = Scenario.uniform(3, 2, 2)
    table = {}
    for context in scenario.contexts():
        table[context] = tuple(
            ghz_rule(3, context, outcome)[0]
            for outcome in scenario.joint_outcomes(context)
        )
    return PossibilityModel(scenario, table)


def ghz_parity_model(qubits: int = 3) -> ProbabilityModel:
    """Exact-rational GHZ X/Y model from the parity counting rule (equal to
    the Born model within float tolerance)."""
    scenario = Scenario.uniform(qubits, 2, 2)
    table = {}
    for context in scenario.contexts():
        table[context] = tuple(
            ghz_rule(qubits, context, outcome)[1]
            for outcome in scenario.joint_outcomes(context)
        )
    return ProbabilityModel(scenario, table)


def deterministic_example() -> ProbabilityModel:
    """A deterministic grid as a point-mass probability model."""
    scenario = Scenario.uniform(2, 2, 2)
    grid = DeterministicGrid(((0, 0), (0, 0)))
    return grid_probability_model(scenario, grid)


def entries() -> list[CatalogEntry]:
    """All catalog entries, each checked for no-signalling on construction."""
    built = [
        CatalogEntry("pr-box", pr_box(), "extremal no-signalling box"),
        CatalogEntry("hardy-support", hardy_support(), "minimal bipartite paradox support"),
        CatalogEntry("table-iv-d", table_iv_d(), "symmetric logically-nonlocal non-strong support"),
        CatalogEntry("table-iv-d-uniform", table_iv_d_uniform(), "uniform companion of the symmetric support"),
        CatalogEntry("ghz-mermin", ghz_mermin_possibilistic(), "three-qubit X/Y parity support"),
        CatalogEntry("ghz3", ghz_parity_model(3), "three-qubit X/Y parity model, exact"),
        CatalogEntry("deterministic", deterministic_example(), "deterministic grid point mass"),
    ]
    for entry in built:
        if not is_no_signalling(entry.model):
            raise NonlocalityError(f"catalog entry {entry.name} is signalling")
    return built
