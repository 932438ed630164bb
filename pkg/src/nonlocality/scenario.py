"""Measurement scenarios for Bell-type experiments.

A scenario fixes the number of sites (parties), the number of measurements
available at each site, and the number of outcomes of each measurement.
Contexts (one measurement choice per site) and joint outcomes are plain
tuples of indices; this module owns their validation and the canonical
flattening order used everywhere else.

Flattening convention: joint outcomes for a context are enumerated
row-major with site 0 most significant.  Context keys in the file format
are the comma-joined measurement indices.  One canonical order prevents
cross-module drift.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from typing import Iterator, Sequence

from .errors import ShapeMismatch

Context = tuple[int, ...]
JointOutcome = tuple[int, ...]


@dataclass(frozen=True)
class Scenario:
    """Shape of a Bell-type measurement scenario.

    ``outcomes[i][m]`` is the outcome count of measurement ``m`` at site
    ``i``; the per-site measurement counts are the row lengths.  All counts
    must be strictly positive.  Instances are immutable and hashable.
    """

    outcomes: tuple[tuple[int, ...], ...]

    def __post_init__(self) -> None:
        if len(self.outcomes) < 1:
            raise ShapeMismatch("a scenario needs at least one site")
        for site, counts in enumerate(self.outcomes):
            if len(counts) < 1:
                raise ShapeMismatch(f"site {site} has no measurements")
            for m, count in enumerate(counts):
                if count < 1:
                    raise ShapeMismatch(
                        f"measurement {m} at site {site} has outcome count {count}"
                    )

    @classmethod
    def uniform(cls, sites: int, measurements: int, outcome_count: int) -> "Scenario":
        """The (n, k, l) scenario: every site has ``measurements`` settings
        with ``outcome_count`` outcomes each."""
        return cls(tuple(tuple([outcome_count] * measurements) for _ in range(sites)))

    @property
    def sites(self) -> int:
        return len(self.outcomes)

    @property
    def measurements_per_site(self) -> tuple[int, ...]:
        return tuple(len(counts) for counts in self.outcomes)

    def uniform_shape(self) -> tuple[int, int, int] | None:
        """Return (n, k, l) if the scenario is uniform, else None."""
        ks = {len(counts) for counts in self.outcomes}
        ls = {count for counts in self.outcomes for count in counts}
        if len(ks) == 1 and len(ls) == 1:
            return (self.sites, ks.pop(), ls.pop())
        return None

    # -- contexts ---------------------------------------------------------

    def contexts(self) -> Iterator[Context]:
        """All contexts in lexicographic order (site 0 most significant)."""
        return itertools.product(*(range(len(counts)) for counts in self.outcomes))

    def context_count(self) -> int:
        return math.prod(self.measurements_per_site)

    def validate_context(self, context: Sequence[int]) -> Context:
        context = tuple(context)
        if len(context) != self.sites:
            raise ShapeMismatch(
                f"context has {len(context)} entries for {self.sites} sites"
            )
        for site, m in enumerate(context):
            if not 0 <= m < len(self.outcomes[site]):
                raise ShapeMismatch(f"measurement index {m} out of range at site {site}")
        return context

    # -- joint outcomes ---------------------------------------------------

    def outcome_counts(self, context: Sequence[int]) -> tuple[int, ...]:
        """Per-site outcome counts of the measurements chosen by ``context``."""
        return tuple(self.outcomes[site][m] for site, m in enumerate(context))

    def table_size(self, context: Sequence[int]) -> int:
        """Number of joint outcomes of ``context``."""
        return math.prod(self.outcome_counts(context))

    def joint_outcomes(self, context: Sequence[int]) -> Iterator[JointOutcome]:
        """All joint outcomes of ``context`` in the canonical (row-major) order."""
        return itertools.product(*(range(c) for c in self.outcome_counts(context)))

    def validate_outcome(self, context: Sequence[int], outcome: Sequence[int]) -> JointOutcome:
        outcome = tuple(outcome)
        counts = self.outcome_counts(context)
        if len(outcome) != self.sites:
            raise ShapeMismatch(
                f"outcome has {len(outcome)} entries for {self.sites} sites"
            )
        for site, (o, count) in enumerate(zip(outcome, counts)):
            if not 0 <= o < count:
                raise ShapeMismatch(f"outcome index {o} out of range at site {site}")
        return outcome

    def flatten(self, context: Sequence[int], outcome: Sequence[int]) -> int:
        """Row-major flat index of ``outcome`` within ``context``'s table row."""
        counts = self.outcome_counts(context)
        index = 0
        for o, count in zip(outcome, counts):
            index = index * count + o
        return index

    def unflatten(self, context: Sequence[int], index: int) -> JointOutcome:
        """Inverse of :meth:`flatten`."""
        counts = self.outcome_counts(context)
        outcome = [0] * len(counts)
        for site in range(len(counts) - 1, -1, -1):
            index, outcome[site] = divmod(index, counts[site])
        return tuple(outcome)


def context_key(context: Sequence[int]) -> str:
    """Comma-joined context key used in model files and reports."""
    return ",".join(str(m) for m in context)


def parse_context_key(key: str) -> Context:
    """Inverse of :func:`context_key` (raises ValueError on junk)."""
    return tuple(int(part) for part in key.split(","))
