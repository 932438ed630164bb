"""Hardy-paradox detection: bipartite coarse witnesses, the n-partite
variant, star-pattern (staircase) models, and paradox probabilities.

A coarse witness fixes a base measurement pair and a base outcome (a, b).
With U_A the outcomes Alice can see at her alternate measurement alongside
Bob's b, and U_B the mirror set for Bob, the entry witnesses a paradox
exactly when every pair in U_A x U_B is impossible at the double-alternate
context.  For a (2,2,l) scenario that condition is literally the failure
of the entry to extend to a deterministic grid, which is what makes the
per-entry check a complete decision procedure there.

The n-partite form on (n,2,2) scenarios replaces the blocked rectangle by
one designated flip outcome per site: flipping any single site's
measurement together with its flip outcome must be impossible, and the
fully-flipped context must exclude the complement of the flip vector.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Iterator, Sequence

import numpy as np

from .errors import InvalidWitness, InvalidStars, ShapeMismatch
from .models import PossibilityModel, ProbabilityModel, collapse, DEFAULT_EPSILON
from .scenario import Context, JointOutcome, Scenario


@dataclass(frozen=True, order=True)
class CoarseHardyWitness:
    """A bipartite (coarse-grained) Hardy paradox certificate.

    ``alice_pair`` and ``bob_pair`` are (base, alternate) measurement
    indices; ``blocked_sets`` records the computed (U_A, U_B).
    """

    alice_pair: tuple[int, int]
    bob_pair: tuple[int, int]
    base_outcome: tuple[int, int]
    blocked_sets: tuple[tuple[int, ...], tuple[int, ...]]

    @property
    def base_context(self) -> Context:
        return (self.alice_pair[0], self.bob_pair[0])


@dataclass(frozen=True, order=True)
class NPartiteHardyWitness:
    """An n-partite Hardy paradox certificate on an (n,2,2) scenario."""

    base_context: tuple[int, ...]
    base_outcome: tuple[int, ...]
    flip_outcomes: tuple[int, ...]


@dataclass(frozen=True)
class ChenPattern:
    """Staircase zero pattern on a (2,2,l) support: star cells are the
    strictly-upper-triangle cells of the base block that remain possible."""

    outcome_count: int
    star_cells: tuple[tuple[int, int], ...]


def _require_bipartite(model: PossibilityModel) -> None:
    if model.scenario.sites != 2:
        raise ShapeMismatch(f"expected 2 sites, got {model.scenario.sites}")


def check_coarse_witness(
    model: PossibilityModel,
    alice_pair: tuple[int, int],
    bob_pair: tuple[int, int],
    base_outcome: tuple[int, int],
) -> CoarseHardyWitness | None:
    """Evaluate one role assignment and base outcome; return the witness
    with its computed blocked sets, or None."""
    _require_bipartite(model)
    x_base, x_alt = alice_pair
    y_base, y_alt = bob_pair
    a, b = base_outcome
    if not model.possible((x_base, y_base), (a, b)):
        return None
    scenario = model.scenario
    row_alt_base = model.table[(x_alt, y_base)]
    row_base_alt = model.table[(x_base, y_alt)]
    row_alt_alt = model.table[(x_alt, y_alt)]
    u_a = tuple(
        ap
        for ap in range(scenario.outcomes[0][x_alt])
        if row_alt_base[scenario.flatten((x_alt, y_base), (ap, b))]
    )
    u_b = tuple(
        bp
        for bp in range(scenario.outcomes[1][y_alt])
        if row_base_alt[scenario.flatten((x_base, y_alt), (a, bp))]
    )
    for ap in u_a:
        for bp in u_b:
            if row_alt_alt[scenario.flatten((x_alt, y_alt), (ap, bp))]:
                return None
    return CoarseHardyWitness(alice_pair, bob_pair, base_outcome, (u_a, u_b))


def _role_assignments(scenario: Scenario) -> Iterator[tuple[tuple[int, int], tuple[int, int]]]:
    k_a = len(scenario.outcomes[0])
    k_b = len(scenario.outcomes[1])
    for x_base, x_alt in itertools.permutations(range(k_a), 2):
        for y_base, y_alt in itertools.permutations(range(k_b), 2):
            yield (x_base, x_alt), (y_base, y_alt)


def find_hardy_witnesses(model: PossibilityModel) -> list[CoarseHardyWitness]:
    """All coarse witnesses over all ordered role assignments and base
    outcomes, in canonical order.  Empty iff no coarse-grained Hardy
    paradox occurs."""
    _require_bipartite(model)
    scenario = model.scenario
    witnesses = []
    for alice_pair, bob_pair in _role_assignments(scenario):
        base_context = (alice_pair[0], bob_pair[0])
        for outcome in model.support(base_context):
            witness = check_coarse_witness(model, alice_pair, bob_pair, outcome)
            if witness is not None:
                witnesses.append(witness)
    witnesses.sort(key=lambda w: (w.base_context, w.base_outcome, w.alice_pair, w.bob_pair))
    return witnesses


def has_hardy_witness(model: PossibilityModel) -> bool:
    """Early-exit version of :func:`find_hardy_witnesses` nonemptiness."""
    _require_bipartite(model)
    for alice_pair, bob_pair in _role_assignments(model.scenario):
        base_context = (alice_pair[0], bob_pair[0])
        for outcome in model.support(base_context):
            if check_coarse_witness(model, alice_pair, bob_pair, outcome) is not None:
                return True
    return False


# -- n-partite form ---------------------------------------------------------


def _binary_shape(model: PossibilityModel) -> int:
    shape = model.scenario.uniform_shape()
    if shape is None or shape[1] != 2 or shape[2] != 2:
        raise ShapeMismatch("n-partite witness search needs an (n,2,2) scenario")
    return shape[0]


def possibility_matrix(model: PossibilityModel) -> np.ndarray:
    """Support as a bool array indexed [context bits, outcome bits]
    (site 0 most significant), for (n,2,2) scenarios."""
    n = _binary_shape(model)
    size = 1 << n
    out = np.zeros((size, size), dtype=bool)
    for index, context in enumerate(model.scenario.contexts()):
        out[index, :] = model.table[context]
    return out


def _bits_to_tuple(value: int, n: int) -> tuple[int, ...]:
    return tuple((value >> (n - 1 - i)) & 1 for i in range(n))


def find_npartite_witnesses(model: PossibilityModel) -> list[NPartiteHardyWitness]:
    """Exhaustive search over base contexts, base outcomes, and flip
    vectors of an (n,2,2) model.  Any witness's base entry fails grid
    extension, so a nonempty result certifies logical nonlocality."""
    n = _binary_shape(model)
    possible = possibility_matrix(model)
    size = 1 << n
    full = size - 1
    outcome_grid, flip_grid = np.meshgrid(
        np.arange(size), np.arange(size), indexing="ij"
    )
    witnesses = []
    for base in range(size):
        ok = possible[base, outcome_grid].copy()
        if not ok.any():
            continue
        for i in range(n):
            bit = 1 << (n - 1 - i)
            flipped_outcome = (outcome_grid & ~bit) | (flip_grid & bit)
            ok &= ~possible[base ^ bit, flipped_outcome]
            if not ok.any():
                break
        else:
            ok &= ~possible[base ^ full, np.bitwise_xor(flip_grid, full)]
            for o, u in np.argwhere(ok):
                witnesses.append(
                    NPartiteHardyWitness(
                        base_context=_bits_to_tuple(base, n),
                        base_outcome=_bits_to_tuple(int(o), n),
                        flip_outcomes=_bits_to_tuple(int(u), n),
                    )
                )
    return witnesses


def check_npartite_witness(
    model: PossibilityModel, witness: NPartiteHardyWitness
) -> bool:
    n = _binary_shape(model)
    a = witness.base_context
    o = witness.base_outcome
    u = witness.flip_outcomes
    if len(a) != n or len(o) != n or len(u) != n:
        raise ShapeMismatch("witness length does not match model")
    if not model.possible(a, o):
        return False
    for i in range(n):
        context = a[:i] + (1 - a[i],) + a[i + 1 :]
        outcome = o[:i] + (u[i],) + o[i + 1 :]
        if model.possible(context, outcome):
            return False
    all_alt = tuple(1 - m for m in a)
    complement = tuple(1 - f for f in u)
    return not model.possible(all_alt, complement)


# -- paradox probabilities ---------------------------------------------------


def _witness_holds(support: PossibilityModel, witness) -> bool:
    if isinstance(witness, CoarseHardyWitness):
        found = check_coarse_witness(
            support, witness.alice_pair, witness.bob_pair, witness.base_outcome
        )
        return found is not None
    if isinstance(witness, NPartiteHardyWitness):
        return check_npartite_witness(support, witness)
    raise InvalidWitness(f"unknown witness type {type(witness).__name__}")


def paradoxical_probability(
    model: ProbabilityModel, witness, epsilon: float = DEFAULT_EPSILON
):
    """Probability of the witnessing base outcome in its base context."""
    support = collapse(model, epsilon)
    if not _witness_holds(support, witness):
        raise InvalidWitness("witness does not hold in the collapsed model")
    return model.probability(witness.base_context, witness.base_outcome)


def witness_base_outcomes(
    support: PossibilityModel, context: Context
) -> set[JointOutcome]:
    """Distinct outcomes at ``context`` that witness some Hardy paradox
    (coarse form for two sites, n-partite form otherwise)."""
    scenario = support.scenario
    context = scenario.validate_context(context)
    bases: set[JointOutcome] = set()
    if scenario.sites == 2:
        k_a = len(scenario.outcomes[0])
        k_b = len(scenario.outcomes[1])
        for x_alt in range(k_a):
            if x_alt == context[0]:
                continue
            for y_alt in range(k_b):
                if y_alt == context[1]:
                    continue
                for outcome in support.support(context):
                    if outcome in bases:
                        continue
                    witness = check_coarse_witness(
                        support, (context[0], x_alt), (context[1], y_alt), outcome
                    )
                    if witness is not None:
                        bases.add(outcome)
    else:
        for witness in find_npartite_witnesses(support):
            if witness.base_context == context:
                bases.add(witness.base_outcome)
    return bases


def certainty_probability(
    model: ProbabilityModel, context: Context, epsilon: float = DEFAULT_EPSILON
):
    """Probability that the obtained outcome at ``context`` witnesses some
    Hardy paradox.  Value 1 means Hardy nonlocality is witnessed with
    certainty at that context.  Each outcome counts once even when it
    witnesses several paradoxes."""
    support = collapse(model, epsilon)
    bases = witness_base_outcomes(support, context)
    return sum(
        (model.probability(context, outcome) for outcome in sorted(bases)),
        start=0,
    )


# -- staircase (star-pattern) models ----------------------------------------


def _square_bipartite_shape(model: PossibilityModel) -> int:
    shape = model.scenario.uniform_shape()
    if shape is None or shape[0] != 2 or shape[1] != 2:
        raise ShapeMismatch("need a (2,2,l) scenario with equal outcome counts")
    return shape[2]


def _validate_stars(outcome_count: int, stars) -> tuple[tuple[int, int], ...]:
    cleaned = []
    for cell in stars:
        i, j = cell
        if not (0 <= i < j < outcome_count):
            raise InvalidStars(
                f"star {cell} is not strictly above the diagonal of a "
                f"{outcome_count}x{outcome_count} block"
            )
        cleaned.append((i, j))
    return tuple(sorted(set(cleaned)))


def all_star_cells(outcome_count: int) -> tuple[tuple[int, int], ...]:
    return tuple(
        (i, j) for i in range(outcome_count) for j in range(i + 1, outcome_count)
    )


def chen_generate(outcome_count: int, stars=None) -> PossibilityModel:
    """Build the staircase (2,2,l) support: above-diagonal zeros in the two
    mixed blocks, below-diagonal zeros in the double-alternate block, and
    exactly the given star cells possible above the diagonal of the base
    block.  Unconstrained entries are possible."""
    if outcome_count < 2:
        raise ShapeMismatch("need at least two outcomes")
    if stars is None:
        stars = all_star_cells(outcome_count)
    stars = _validate_stars(outcome_count, stars)
    star_set = set(stars)
    scenario = Scenario.uniform(2, 2, outcome_count)

    def entry(context, r, c):
        if context == (0, 0):
            return c <= r or (r, c) in star_set
        if context in ((0, 1), (1, 0)):
            return c <= r
        return r <= c

    table = {}
    for context in scenario.contexts():
        table[context] = tuple(
            entry(context, r, c)
            for r in range(outcome_count)
            for c in range(outcome_count)
        )
    return PossibilityModel(scenario, table)


def chen_check(
    model: PossibilityModel,
) -> tuple[ChenPattern, list[CoarseHardyWitness]] | None:
    """Detect the staircase zero pattern, trying all measurement-role
    relabellings against the fixed main-diagonal convention.  When found,
    returns the possible star cells together with one verified coarse
    witness per star."""
    outcome_count = _square_bipartite_shape(model)
    scenario = model.scenario

    def block(x, y):
        row = model.table[(x, y)]
        return [
            [row[scenario.flatten((x, y), (r, c))] for c in range(outcome_count)]
            for r in range(outcome_count)
        ]

    for a_base, b_base in itertools.product(range(2), range(2)):
        a_alt, b_alt = 1 - a_base, 1 - b_base
        upper_zero_1 = block(a_base, b_alt)
        upper_zero_2 = block(a_alt, b_base)
        lower_zero = block(a_alt, b_alt)
        ok = True
        for r in range(outcome_count):
            for c in range(outcome_count):
                if c > r and (upper_zero_1[r][c] or upper_zero_2[r][c]):
                    ok = False
                    break
                if r > c and lower_zero[r][c]:
                    ok = False
                    break
            if not ok:
                break
        if not ok:
            continue
        base_block = block(a_base, b_base)
        stars = tuple(
            (r, c)
            for r in range((outcome_count))
            for c in range(r + 1, outcome_count)
            if base_block[r][c]
        )
        witnesses = []
        for star in stars:
            witness = check_coarse_witness(
                model, (a_base, a_alt), (b_base, b_alt), star
            )
            if witness is None:
                raise InvalidWitness(
                    f"star {star} fails its witness check despite the zero pattern"
                )
            witnesses.append(witness)
        return ChenPattern(outcome_count, stars), witnesses
    return None
