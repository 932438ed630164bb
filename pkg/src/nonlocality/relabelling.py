"""Relabellings of sites, measurements, and outcomes, and support isomorphism.

A relabelling sends entry coordinates ``(site i, measurement m, outcome o)``
to ``(sigma(i), pi_i(m), rho_{i,m}(o))``.  Site permutations are excluded
from isomorphism checks by default and enabled by flag.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Sequence

from .errors import ShapeMismatch
from .models import PossibilityModel, ProbabilityModel
from .scenario import Scenario


def _check_permutation(perm: Sequence[int], size: int, what: str) -> tuple[int, ...]:
    perm = tuple(perm)
    if sorted(perm) != list(range(size)):
        raise ShapeMismatch(f"{what} {perm} is not a permutation of range({size})")
    return perm


def _invert(perm: tuple[int, ...]) -> tuple[int, ...]:
    out = [0] * len(perm)
    for i, p in enumerate(perm):
        out[p] = i
    return tuple(out)


@dataclass(frozen=True)
class Relabelling:
    """A joint permutation of sites, per-site measurements, and outcomes.

    ``site_permutation`` may be None for the identity.
    ``measurement_permutations[i][m]`` is the new index of measurement ``m``
    at (old) site ``i``; ``outcome_permutations[i][m][o]`` the new index of
    outcome ``o`` of that measurement.
    """

    site_permutation: tuple[int, ...] | None
    measurement_permutations: tuple[tuple[int, ...], ...]
    outcome_permutations: tuple[tuple[tuple[int, ...], ...], ...]

    @classmethod
    def identity(cls, scenario: Scenario) -> "Relabelling":
        return cls(
            site_permutation=None,
            measurement_permutations=tuple(
                tuple(range(len(counts))) for counts in scenario.outcomes
            ),
            outcome_permutations=tuple(
                tuple(tuple(range(count)) for count in counts)
                for counts in scenario.outcomes
            ),
        )

    def sites(self) -> int:
        return len(self.measurement_permutations)

    def site_map(self) -> tuple[int, ...]:
        if self.site_permutation is None:
            return tuple(range(self.sites()))
        return self.site_permutation

    def validate_for(self, scenario: Scenario) -> None:
        n = scenario.sites
        if self.sites() != n or len(self.outcome_permutations) != n:
            raise ShapeMismatch("relabelling site count does not match scenario")
        sigma = self.site_map()
        _check_permutation(sigma, n, "site permutation")
        for i, counts in enumerate(scenario.outcomes):
            pi = _check_permutation(
                self.measurement_permutations[i], len(counts), f"measurement permutation at site {i}"
            )
            if len(self.outcome_permutations[i]) != len(counts):
                raise ShapeMismatch(f"outcome permutations at site {i} have wrong length")
            for m, count in enumerate(counts):
                _check_permutation(
                    self.outcome_permutations[i][m], count, f"outcome permutation at ({i},{m})"
                )
                del pi

    def target_scenario(self, scenario: Scenario) -> Scenario:
        """Scenario obtained by pushing ``scenario``'s shape through this map."""
        self.validate_for(scenario)
        sigma = self.site_map()
        n = scenario.sites
        shape: list[list[int]] = [[] for _ in range(n)]
        for i, counts in enumerate(scenario.outcomes):
            row = [0] * len(counts)
            for m, count in enumerate(counts):
                row[self.measurement_permutations[i][m]] = count
            shape[sigma[i]] = row
        return Scenario(tuple(tuple(row) for row in shape))

    def inverse(self) -> "Relabelling":
        sigma = self.site_map()
        sigma_inv = _invert(sigma)
        n = self.sites()
        meas = [None] * n
        outs = [None] * n
        for j in range(n):
            i = sigma_inv[j]
            pi_inv = _invert(self.measurement_permutations[i])
            meas[j] = pi_inv
            outs[j] = tuple(
                _invert(self.outcome_permutations[i][pi_inv[m_new]])
                for m_new in range(len(pi_inv))
            )
        return Relabelling(
            site_permutation=None if self.site_permutation is None else sigma_inv,
            measurement_permutations=tuple(meas),
            outcome_permutations=tuple(outs),
        )

    def compose(self, then: "Relabelling") -> "Relabelling":
        """The relabelling 'apply self, then apply ``then``'."""
        sigma1 = self.site_map()
        sigma2 = then.site_map()
        n = self.sites()
        sigma = tuple(sigma2[sigma1[i]] for i in range(n))
        meas = []
        outs = []
        for i in range(n):
            j = sigma1[i]
            pi1 = self.measurement_permutations[i]
            pi2 = then.measurement_permutations[j]
            meas.append(tuple(pi2[pi1[m]] for m in range(len(pi1))))
            row = []
            for m in range(len(pi1)):
                rho1 = self.outcome_permutations[i][m]
                rho2 = then.outcome_permutations[j][pi1[m]]
                row.append(tuple(rho2[rho1[o]] for o in range(len(rho1))))
            outs.append(tuple(row))
        identity_sites = self.site_permutation is None and then.site_permutation is None
        return Relabelling(
            site_permutation=None if identity_sites else sigma,
            measurement_permutations=tuple(meas),
            outcome_permutations=tuple(outs),
        )


def apply_relabelling(model, relabelling: Relabelling):
    """Relabel a probability or possibility model; returns the same kind.

    The entry at the relabelled coordinates equals the original entry, so
    applying a relabelling followed by its inverse is the identity.
    """
    scenario = model.scenario
    target = relabelling.target_scenario(scenario)
    sigma = relabelling.site_map()
    n = scenario.sites
    table = {}
    for context in scenario.contexts():
        new_context = [0] * n
        for i, m in enumerate(context):
            new_context[sigma[i]] = relabelling.measurement_permutations[i][m]
        new_context = tuple(new_context)
        row = model.table[context]
        new_row = [None] * len(row)
        for index, outcome in enumerate(scenario.joint_outcomes(context)):
            new_outcome = [0] * n
            for i, o in enumerate(outcome):
                new_outcome[sigma[i]] = relabelling.outcome_permutations[i][context[i]][o]
            new_row[target.flatten(new_context, tuple(new_outcome))] = row[index]
        table[new_context] = tuple(new_row)
    kind = type(model)
    return kind(target, table)


def _context_count_signature(model: PossibilityModel) -> dict:
    return {
        context: sum(model.table[context]) for context in model.scenario.contexts()
    }


def _site_permutations(a: Scenario, b: Scenario, allow: bool):
    n = a.sites
    if not allow:
        yield tuple(range(n))
        return
    if b.sites != n:
        return
    for sigma in itertools.permutations(range(n)):
        ok = True
        for i in range(n):
            if sorted(a.outcomes[i]) != sorted(b.outcomes[sigma[i]]):
                ok = False
                break
        if ok:
            yield sigma


def _measurement_permutations(a: Scenario, b: Scenario, sigma):
    """Tuples of per-site measurement permutations compatible with shapes."""
    per_site = []
    for i in range(a.sites):
        counts_a = a.outcomes[i]
        counts_b = b.outcomes[sigma[i]]
        valid = [
            pi
            for pi in itertools.permutations(range(len(counts_a)))
            if all(counts_a[m] == counts_b[pi[m]] for m in range(len(counts_a)))
        ]
        per_site.append(valid)
    return itertools.product(*per_site)


def are_isomorphic(
    a: PossibilityModel,
    b: PossibilityModel,
    allow_site_permutation: bool = False,
):
    """Search the finite relabelling group for a map sending ``a`` onto ``b``.

    Returns the relabelling, or None if the supports are not isomorphic.
    Raises ShapeMismatch when no site permutation can reconcile the shapes.
    """
    if not allow_site_permutation and a.scenario != b.scenario:
        raise ShapeMismatch("models live on different scenarios")
    found_shape = False
    target_signature = _context_count_signature(b)
    for sigma in _site_permutations(a.scenario, b.scenario, allow_site_permutation):
        for meas_perms in _measurement_permutations(a.scenario, b.scenario, sigma):
            found_shape = True
            skeleton = Relabelling(
                site_permutation=None if sigma == tuple(range(a.scenario.sites)) else sigma,
                measurement_permutations=meas_perms,
                outcome_permutations=tuple(
                    tuple(tuple(range(count)) for count in counts)
                    for counts in a.scenario.outcomes
                ),
            )
            # Possible-entry counts per context are invariant under outcome
            # relabels, so mismatches prune the outcome search entirely.
            relabelled = apply_relabelling(a, skeleton)
            if _context_count_signature(relabelled) != target_signature:
                continue
            outcome_choices = [
                [
                    tuple(rho)
                    for rho in itertools.permutations(range(a.scenario.outcomes[i][m]))
                ]
                for i in range(a.scenario.sites)
                for m in range(len(a.scenario.outcomes[i]))
            ]
            sites = a.scenario.sites
            widths = [len(a.scenario.outcomes[i]) for i in range(sites)]
            for flat in itertools.product(*outcome_choices):
                outs = []
                pos = 0
                for i in range(sites):
                    outs.append(tuple(flat[pos : pos + widths[i]]))
                    pos += widths[i]
                candidate = Relabelling(
                    site_permutation=skeleton.site_permutation,
                    measurement_permutations=meas_perms,
                    outcome_permutations=tuple(outs),
                )
                image = apply_relabelling(a, candidate)
                if image.scenario == b.scenario and image.table == b.table:
                    return candidate
    if not found_shape:
        raise ShapeMismatch("scenarios are not compatible, even up to site permutation")
    return None
