"""Analysis reports: everything the `analyze` command knows about a model.

Reports are deterministic for fixed inputs; wall-clock timing is kept out
of the JSON payload so that identical inputs produce byte-identical JSON.
"""

from __future__ import annotations

import time
from dataclasses import dataclass

from .errors import NonlocalityError
from .hardy import (
    CoarseHardyWitness,
    NPartiteHardyWitness,
    find_hardy_witnesses,
    find_npartite_witnesses,
    witness_base_outcomes,
)
from .hierarchy import HierarchyLevel, classify, classify_support
from .models import (
    DEFAULT_EPSILON,
    DEFAULT_TOLERANCE,
    PossibilityModel,
    ProbabilityModel,
    collapse,
    is_no_signalling,
)
from .modelfile import model_hash
from .scenario import context_key


def round12(value) -> float:
    """Numeric report values carry 12 significant digits."""
    return float(f"{float(value):.12g}")


def witness_to_dict(witness, probability=None) -> dict:
    if isinstance(witness, CoarseHardyWitness):
        payload = {
            "type": "coarse",
            "base_context": list(witness.base_context),
            "base_outcome": list(witness.base_outcome),
            "roles": {
                "alice": list(witness.alice_pair),
                "bob": list(witness.bob_pair),
            },
            "blocked": [list(witness.blocked_sets[0]), list(witness.blocked_sets[1])],
        }
    elif isinstance(witness, NPartiteHardyWitness):
        payload = {
            "type": "n-partite",
            "base_context": list(witness.base_context),
            "base_outcome": list(witness.base_outcome),
            "flips": list(witness.flip_outcomes),
        }
    else:
        raise NonlocalityError(f"unknown witness type {type(witness).__name__}")
    if probability is not None:
        payload["paradoxical_probability"] = round12(probability)
    return payload


@dataclass
class AnalysisReport:
    model_hash: str
    kind: str
    scenario: list
    no_signalling_possibilistic: bool
    no_signalling_probabilistic: bool | None
    level: str
    witness_search: str
    witnesses: list
    certainty: dict
    epsilon: float
    elapsed_seconds: float

    def to_dict(self) -> dict:
        return {
            "schema": 1,
            "hash": self.model_hash,
            "kind": self.kind,
            "scenario": self.scenario,
            "no_signalling": {
                "possibilistic": self.no_signalling_possibilistic,
                "probabilistic": self.no_signalling_probabilistic,
            },
            "level": self.level,
            "witness_search": self.witness_search,
            "witnesses": self.witnesses,
            "certainty": self.certainty,
            "epsilon": round12(self.epsilon),
        }

    def to_text(self) -> str:
        lines = [
            f"model hash:      {self.model_hash}",
            f"kind:            {self.kind}",
            f"scenario:        {self.scenario}",
            f"no-signalling:   possibilistic={self.no_signalling_possibilistic}"
            + (
                f" probabilistic={self.no_signalling_probabilistic}"
                if self.no_signalling_probabilistic is not None
                else ""
            ),
            f"level:           {self.level}",
            f"witnesses:       {len(self.witnesses)} ({self.witness_search} search)",
        ]
        for witness in self.witnesses:
            parts = [
                f"  base {witness['base_outcome']} @ context {witness['base_context']}"
            ]
            if "roles" in witness:
                parts.append(f"roles a={witness['roles']['alice']} b={witness['roles']['bob']}")
            if "flips" in witness:
                parts.append(f"flips {witness['flips']}")
            if "paradoxical_probability" in witness:
                parts.append(f"p={witness['paradoxical_probability']:.12g}")
            lines.append(" ".join(parts))
        if self.certainty:
            lines.append("certainty per context:")
            for key, value in self.certainty.items():
                lines.append(f"  {key}: {value:.12g}")
        lines.append(f"elapsed seconds: {self.elapsed_seconds:.3f}")
        return "\n".join(lines)


def analyze_model(
    model,
    epsilon: float = DEFAULT_EPSILON,
    tol: float = DEFAULT_TOLERANCE,
) -> AnalysisReport:
    """Full report: identity, no-signalling, hierarchy level, witnesses,
    and per-context certainty probabilities (probability models only)."""
    start = time.perf_counter()
    probabilistic = isinstance(model, ProbabilityModel)
    support = collapse(model, epsilon) if probabilistic else model
    scenario = model.scenario

    if probabilistic:
        level = classify(model, epsilon=epsilon, tol=tol)
        ns_prob = is_no_signalling(model, tol)
    else:
        level = classify_support(model)
        ns_prob = None
    ns_poss = is_no_signalling(support)

    shape = scenario.uniform_shape()
    if scenario.sites == 2:
        search = "coarse"
        witnesses = find_hardy_witnesses(support)
    elif shape is not None and shape[1] == 2 and shape[2] == 2:
        search = "n-partite"
        witnesses = find_npartite_witnesses(support)
    else:
        search = "unavailable"
        witnesses = []

    if witnesses and level.value < HierarchyLevel.LOGICAL.value:
        raise NonlocalityError(
            "inconsistent report: witnesses found in a possibilistically local model"
        )

    payload = []
    for witness in witnesses:
        probability = (
            model.probability(witness.base_context, witness.base_outcome)
            if probabilistic
            else None
        )
        payload.append(witness_to_dict(witness, probability))

    certainty = {}
    if probabilistic and search != "unavailable":
        for context in scenario.contexts():
            bases = witness_base_outcomes(support, context)
            value = sum(
                (model.probability(context, outcome) for outcome in sorted(bases)),
                start=0,
            )
            certainty[context_key(context)] = round12(value)

    elapsed = time.perf_counter() - start
    return AnalysisReport(
        model_hash=model_hash(model),
        kind="probability" if probabilistic else "possibility",
        scenario=[list(counts) for counts in scenario.outcomes],
        no_signalling_possibilistic=ns_poss,
        no_signalling_probabilistic=ns_prob,
        level=level.name,
        witness_search=search,
        witnesses=payload,
        certainty=certainty,
        epsilon=epsilon,
        elapsed_seconds=elapsed,
    )
