"""Randomized and adversarial searches over measurement angles.

The anomaly search throws projective measurement pairs at the maximally
entangled two-qubit state and checks two things on every sampled model:
the per-context outcome symmetry, and the absence of logical nonlocality
in the collapsed support.  Random sampling alone mostly produces
full-support (trivially local) tables, so an adversarial stage runs
coordinate descent on the angle quadruple, driving the three must-be-zero
entries of a candidate paradox configuration toward zero while keeping
the base entry's probability above a floor.  The best objective found is
reported; it staying bounded away from zero is the falsifiable claim.

The family scan sweeps the paradox family parameter and refines the
maximum paradoxical probability with a golden-section bracket.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass

import numpy as np

from .census import mask_bit, mask_has_hardy_witness
from .hardy import paradoxical_probability
from .models import DEFAULT_EPSILON, DEFAULT_TOLERANCE
from .quantum import CONSTRUCTION_EPSILON, HardyFamilyParams, hardy_family_model

GOLDEN = (math.sqrt(5) - 1) / 2


def _context_probs(bras_a, bras_b) -> np.ndarray:
    """probs[x, y] is the 2x2 outcome table of context (x, y) on the
    maximally entangled pair: amplitudes are W_a W_b^T / sqrt(2)."""
    out = np.empty((2, 2, 2, 2))
    for x in range(2):
        for y in range(2):
            amp = bras_a[x] @ bras_b[y].T / math.sqrt(2)
            out[x, y] = np.abs(amp) ** 2
    return out


def _bras(angles: np.ndarray) -> list[np.ndarray]:
    """Outcome-bra matrices for two measurements given [t0, p0, t1, p1]."""
    out = []
    for theta, phi in (angles[0:2], angles[2:4]):
        half = theta / 2.0
        phase = np.exp(1j * phi)
        basis = np.array(
            [
                [math.cos(half), math.sin(half)],
                [phase * math.sin(half), -phase * math.cos(half)],
            ]
        )
        out.append(basis.conj().T)
    return out


def _support_mask(probs: np.ndarray, epsilon: float) -> int:
    mask = 0
    for x, y, a, b in itertools.product(range(2), repeat=4):
        if probs[x, y, a, b] > epsilon:
            mask |= 1 << mask_bit(x, y, a, b)
    return mask


_CONFIGS = tuple(itertools.product(range(2), repeat=6))


def _paradox_objective(probs: np.ndarray, base_floor: float) -> float:
    """Minimum, over paradox configurations whose base entry clears the
    floor, of the sum of the three must-be-zero probabilities."""
    best = math.inf
    for x, y, a, b, u, v in _CONFIGS:
        if probs[x, y, a, b] <= base_floor:
            continue
        total = (
            probs[1 - x, y, u, b]
            + probs[x, 1 - y, a, v]
            + probs[1 - x, 1 - y, 1 - u, 1 - v]
        )
        if total < best:
            best = total
    return best


@dataclass
class BellAnomalyReport:
    samples: int
    restarts: int
    seed: int
    epsilon: float
    nonlocal_count: int
    symmetry_failures: int
    best_objective: float
    best_angles: tuple[float, ...]

    @property
    def symmetry_pass_rate(self) -> float:
        return 1.0 - self.symmetry_failures / self.samples if self.samples else 1.0


def _symmetry_ok(probs: np.ndarray, tol: float) -> bool:
    for x in range(2):
        for y in range(2):
            p = probs[x, y]
            if abs(p[0, 1] - p[1, 0]) > tol or abs(p[0, 0] - p[1, 1]) > tol:
                return False
    return True


def _random_angles(rng: np.random.Generator) -> np.ndarray:
    angles = np.empty(8)
    angles[0::2] = rng.uniform(0.0, math.pi, size=4)
    angles[1::2] = rng.uniform(0.0, 2 * math.pi, size=4)
    return angles


def _clip_angles(angles: np.ndarray) -> None:
    angles[0::2] = np.clip(angles[0::2], 0.0, math.pi)
    angles[1::2] = np.mod(angles[1::2], 2 * math.pi)


def bell_anomaly_search(
    samples: int,
    restarts: int,
    seed: int = 0,
    epsilon: float = DEFAULT_EPSILON,
    base_floor: float = 1e-3,
    symmetry_tol: float = DEFAULT_TOLERANCE,
) -> BellAnomalyReport:
    """Randomized plus adversarial sweep over entangled-pair models."""
    if samples < 1 or restarts < 1:
        raise ValueError("samples and restarts must be positive")
    rng = np.random.default_rng(seed)
    nonlocal_count = 0
    symmetry_failures = 0
    for _ in range(samples):
        angles = _random_angles(rng)
        probs = _context_probs(_bras(angles[:4]), _bras(angles[4:]))
        if not _symmetry_ok(probs, symmetry_tol):
            symmetry_failures += 1
        if mask_has_hardy_witness(_support_mask(probs, epsilon)):
            nonlocal_count += 1

    def objective(angles: np.ndarray) -> float:
        probs = _context_probs(_bras(angles[:4]), _bras(angles[4:]))
        return _paradox_objective(probs, base_floor)

    best_value = math.inf
    best_angles = None
    for _ in range(restarts):
        angles = _random_angles(rng)
        value = objective(angles)
        step = 0.4
        while step > 1e-4:
            improved = False
            for coordinate in range(8):
                for delta in (step, -step):
                    trial = angles.copy()
                    trial[coordinate] += delta
                    _clip_angles(trial)
                    trial_value = objective(trial)
                    if trial_value < value:
                        angles, value = trial, trial_value
                        improved = True
            if not improved:
                step /= 2.0
        if value < best_value:
            best_value = value
            best_angles = angles
    return BellAnomalyReport(
        samples=samples,
        restarts=restarts,
        seed=seed,
        epsilon=epsilon,
        nonlocal_count=nonlocal_count,
        symmetry_failures=symmetry_failures,
        best_objective=float(best_value),
        best_angles=tuple(float(a) for a in best_angles),
    )


@dataclass
class HardyScanReport:
    steps: int
    best_t: float
    best_probability: float
    witness_failures: int
    evaluations: int


def _family_probability(t: float) -> float:
    model, witness = hardy_family_model(HardyFamilyParams(t))
    return float(
        paradoxical_probability(model, witness, epsilon=CONSTRUCTION_EPSILON)
    )


def hardy_scan(steps: int) -> HardyScanReport:
    """Grid sweep of the family parameter plus golden-section refinement
    around the best grid point.  Every scanned member must carry its
    witness (the family construction verifies it)."""
    if steps < 3:
        raise ValueError("need at least three grid steps")
    upper = math.pi / 2
    excluded = math.pi / 4
    ts = []
    for i in range(steps):
        t = (i + 1) * upper / (steps + 1)
        if abs(t - excluded) < 1e-9:
            t += 1e-7
        ts.append(t)
    values = [_family_probability(t) for t in ts]
    evaluations = len(ts)
    best_index = max(range(len(ts)), key=values.__getitem__)
    lo = ts[best_index - 1] if best_index > 0 else ts[0] / 2
    hi = ts[best_index + 1] if best_index + 1 < len(ts) else (ts[-1] + upper) / 2

    # Golden-section maximization on [lo, hi]; the family's paradoxical
    # probability is unimodal in t, so the bracket is sound.
    a, b = lo, hi
    c = b - GOLDEN * (b - a)
    d = a + GOLDEN * (b - a)
    fc, fd = _family_probability(c), _family_probability(d)
    evaluations += 2
    for _ in range(80):
        if b - a < 1e-12:
            break
        if fc > fd:
            b, d, fd = d, c, fc
            c = b - GOLDEN * (b - a)
            fc = _family_probability(c)
        else:
            a, c, fc = c, d, fd
            d = a + GOLDEN * (b - a)
            fd = _family_probability(d)
        evaluations += 1
    best_t = c if fc > fd else d
    best_value = max(fc, fd, values[best_index])
    if values[best_index] >= best_value:
        best_t = ts[best_index]
    return HardyScanReport(
        steps=steps,
        best_t=float(best_t),
        best_probability=float(best_value),
        witness_failures=0,
        evaluations=evaluations,
    )
