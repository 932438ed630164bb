"""Quantum model generation: Born rule on n-qubit states with Bloch-angle
projective measurements, the entangled-pair workhorses, and the
incompatibility construction.

Measurement convention: outcome 0 projects onto
``cos(theta/2)|0> + e^{i phi} sin(theta/2)|1>``; outcome 1 onto the
orthogonal complement ``sin(theta/2)|0> - e^{i phi} cos(theta/2)|1>``.
The sign of the second vector is a global phase choice; probabilities are
unaffected.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

import numpy as np

from .errors import Commuting, DegenerateParams, ShapeMismatch, TooLarge
from .hardy import CoarseHardyWitness, check_coarse_witness
from .models import DEFAULT_TOLERANCE, ProbabilityModel, collapse
from .scenario import Context, JointOutcome, Scenario

QUBIT_CAP = 12
NORM_TOLERANCE = 1e-12
# Verification threshold for the state-family constructions.  Their exact
# zeros land near 1e-34 in double precision (squared cancellation error),
# while the genuinely small base probability shrinks like t^4 towards the
# family's endpoints; 1e-30 separates the two for any desk-scale parameter
# grid, where the general-purpose 1e-9 would not.
CONSTRUCTION_EPSILON = 1e-30


@dataclass(frozen=True, eq=False)
class StateVector:
    """An n-qubit pure state; amplitudes indexed with qubit 0 most
    significant, squared norm 1 within 1e-12."""

    amplitudes: np.ndarray

    def __post_init__(self) -> None:
        amps = np.asarray(self.amplitudes, dtype=complex)
        n = amps.size.bit_length() - 1
        if amps.ndim != 1 or amps.size != 1 << n or amps.size < 2:
            raise ShapeMismatch(f"amplitude vector of size {amps.size} is not 2^n")
        norm = float(np.sum(np.abs(amps) ** 2))
        if abs(norm - 1.0) > NORM_TOLERANCE:
            raise ShapeMismatch(f"state norm^2 is {norm}, not 1")
        amps = amps.copy()
        amps.flags.writeable = False
        object.__setattr__(self, "amplitudes", amps)

    @property
    def qubits(self) -> int:
        return int(self.amplitudes.size).bit_length() - 1


def ghz_state(qubits: int) -> StateVector:
    """(|0...0> + |1...1>)/sqrt(2); the two-qubit case is the Bell pair."""
    if qubits < 2:
        raise ShapeMismatch("need at least two qubits")
    amps = np.zeros(1 << qubits, dtype=complex)
    amps[0] = amps[-1] = 1 / math.sqrt(2)
    return StateVector(amps)


def phi_plus_state() -> StateVector:
    return ghz_state(2)


@dataclass(frozen=True)
class ProjectiveQubitMeasurement:
    """A projective qubit measurement given by the Bloch angles of its
    outcome-0 eigenvector: theta in [0, pi], phi in [0, 2 pi)."""

    theta: float
    phi: float = 0.0

    def __post_init__(self) -> None:
        if not 0.0 <= self.theta <= math.pi:
            raise ShapeMismatch(f"theta {self.theta} outside [0, pi]")
        if not 0.0 <= self.phi < 2 * math.pi:
            raise ShapeMismatch(f"phi {self.phi} outside [0, 2 pi)")

    @classmethod
    def from_direction(cls, vector: Sequence[complex]) -> "ProjectiveQubitMeasurement":
        """Measurement whose outcome-0 eigenvector is the given unit vector
        (up to global phase)."""
        v = np.asarray(vector, dtype=complex)
        if v.shape != (2,):
            raise ShapeMismatch("direction must be a 2-vector")
        norm = float(np.linalg.norm(v))
        if abs(norm - 1.0) > 1e-9:
            raise ShapeMismatch(f"direction norm {norm} is not 1")
        theta = 2.0 * math.atan2(abs(v[1]), abs(v[0]))
        if abs(v[0]) < 1e-15 or abs(v[1]) < 1e-15:
            phi = 0.0
        else:
            phi = (cmath.phase(v[1]) - cmath.phase(v[0])) % (2 * math.pi)
        theta = min(max(theta, 0.0), math.pi)
        return cls(theta, phi)

    def basis(self) -> np.ndarray:
        """2x2 matrix whose columns are the outcome-0 and outcome-1
        eigenvectors (orthonormal)."""
        half = self.theta / 2.0
        phase = cmath.exp(1j * self.phi)
        return np.array(
            [
                [math.cos(half), math.sin(half)],
                [phase * math.sin(half), -phase * math.cos(half)],
            ],
            dtype=complex,
        )


def x_measurement() -> ProjectiveQubitMeasurement:
    return ProjectiveQubitMeasurement(math.pi / 2, 0.0)


def y_measurement() -> ProjectiveQubitMeasurement:
    return ProjectiveQubitMeasurement(math.pi / 2, math.pi / 2)


def born_model(
    psi: StateVector,
    measurements: Sequence[Sequence[ProjectiveQubitMeasurement]],
) -> ProbabilityModel:
    """Empirical model of local projective measurements on ``psi``:
    p(o|c) = |<v_{o_1} ... v_{o_n}|psi>|^2, rows normalized within 1e-9."""
    n = psi.qubits
    if len(measurements) != n:
        raise ShapeMismatch(f"{len(measurements)} measurement lists for {n} qubits")
    if any(len(site) < 1 for site in measurements):
        raise ShapeMismatch("every site needs at least one measurement")
    scenario = Scenario(tuple(tuple([2] * len(site)) for site in measurements))
    # Conjugate-transposed bases: row o is the bra of outcome o.
    bras = [[m.basis().conj().T for m in site] for site in measurements]
    psi_tensor = psi.amplitudes.reshape([2] * n)
    table = {}
    for context in scenario.contexts():
        amp = psi_tensor
        for site, choice in enumerate(context):
            amp = np.moveaxis(np.tensordot(bras[site][choice], amp, axes=(1, site)), 0, site)
        table[context] = tuple(float(p) for p in np.abs(amp.reshape(-1)) ** 2)
    return ProbabilityModel(scenario, table)


def bell_symmetry_check(model: ProbabilityModel, tol: float = DEFAULT_TOLERANCE) -> bool:
    """Per-context outcome symmetry of maximally-entangled-pair models:
    p(01) = p(10) and p(00) = p(11) within ``tol`` for every context."""
    scenario = model.scenario
    if scenario.sites != 2 or any(
        count != 2 for counts in scenario.outcomes for count in counts
    ):
        raise ShapeMismatch("symmetry check needs a two-site binary-outcome model")
    for row in model.table.values():
        p00, p01, p10, p11 = row
        if abs(p01 - p10) > tol or abs(p00 - p11) > tol:
            return False
    return True


# -- GHZ models --------------------------------------------------------------


def ghz_model(qubits: int, qubit_cap: int = QUBIT_CAP) -> ProbabilityModel:
    """GHZ state with measurement 0 = Pauli X and measurement 1 = Pauli Y
    at every site."""
    if qubits < 2:
        raise ShapeMismatch("need at least two qubits")
    if qubits > qubit_cap:
        raise TooLarge(f"{qubits} qubits exceed the cap of {qubit_cap}")
    site = [x_measurement(), y_measurement()]
    return born_model(ghz_state(qubits), [list(site) for _ in range(qubits)])


def ghz_rule(qubits: int, context: Context, outcome: JointOutcome) -> tuple[bool, Fraction]:
    """Closed-form GHZ X/Y entry without state vectors.

    Contexts with an odd number of Y's have full support at 1/2^n.  With
    the Y-count 0 mod 4, outcomes are possible iff they contain an even
    number of 1's; with Y-count 2 mod 4, iff odd; possible entries there
    carry 1/2^(n-1).
    """
    if len(context) != qubits or len(outcome) != qubits:
        raise ShapeMismatch("context/outcome length does not match qubit count")
    if any(m not in (0, 1) for m in context) or any(o not in (0, 1) for o in outcome):
        raise ShapeMismatch("X/Y contexts and binary outcomes only")
    y_count = sum(context)
    ones = sum(outcome)
    if y_count % 2 == 1:
        return True, Fraction(1, 2**qubits)
    wants_even = y_count % 4 == 0
    if (ones % 2 == 0) == wants_even:
        return True, Fraction(1, 2 ** (qubits - 1))
    return False, Fraction(0)


# -- the paradoxical state family --------------------------------------------


@dataclass(frozen=True)
class HardyFamilyParams:
    """Parameters of the two-qubit paradox family.

    ``t`` fixes alpha = cos t and beta = sin t, which serve both as the
    state coefficients and as the overlap of the two measurement
    directions u and d = alpha u + beta u_perp.  Degenerate points
    {0, pi/4, pi/2} are rejected.
    """

    t: float

    def __post_init__(self) -> None:
        for excluded in (0.0, math.pi / 4, math.pi / 2):
            if abs(self.t - excluded) < 1e-12:
                raise DegenerateParams(f"t = {self.t} is a degenerate parameter")
        if not 0.0 < self.t < math.pi / 2:
            raise DegenerateParams(f"t = {self.t} outside (0, pi/2)")

    @property
    def alpha(self) -> float:
        return math.cos(self.t)

    @property
    def beta(self) -> float:
        return math.sin(self.t)

    @property
    def normalization(self) -> float:
        a2 = self.alpha**2
        b2 = self.beta**2
        return 1.0 / math.sqrt(2 * a2 * b2 + a2 * a2)

    @property
    def u(self) -> np.ndarray:
        return np.array([1.0, 0.0], dtype=complex)

    @property
    def u_perp(self) -> np.ndarray:
        return np.array([0.0, 1.0], dtype=complex)

    @property
    def d(self) -> np.ndarray:
        return np.array([self.alpha, self.beta], dtype=complex)


def _family_model(alpha: float, beta: float, u: np.ndarray, u_perp: np.ndarray,
                  d: np.ndarray) -> tuple[ProbabilityModel, CoarseHardyWitness]:
    """Shared constructor: the no-|uu> state with per-site measurements
    [u-basis, d-basis], plus its verified witness at the double-d context."""
    norm = 1.0 / math.sqrt(2 * (alpha * beta) ** 2 + alpha**4)
    psi = norm * (
        -alpha * beta * np.kron(u, u_perp)
        - alpha * beta * np.kron(u_perp, u)
        + alpha**2 * np.kron(u_perp, u_perp)
    )
    site = [
        ProjectiveQubitMeasurement.from_direction(u),
        ProjectiveQubitMeasurement.from_direction(d),
    ]
    model = born_model(StateVector(psi), [list(site), list(site)])
    witness = check_coarse_witness(
        collapse(model, CONSTRUCTION_EPSILON),
        alice_pair=(1, 0),
        bob_pair=(1, 0),
        base_outcome=(0, 0),
    )
    if witness is None:
        raise DegenerateParams("construction failed to produce its witness")
    return model, witness


def hardy_family_model(
    params: HardyFamilyParams,
) -> tuple[ProbabilityModel, CoarseHardyWitness]:
    """The (2,2,2) paradox model of the family member ``params``: each site
    measures along u or d, and the base outcome (d, d) at the double-d
    context witnesses a Hardy paradox, verified before return."""
    return _family_model(
        params.alpha, params.beta, params.u, params.u_perp, params.d
    )


def hardy_from_projections(
    u: Sequence[complex], d: Sequence[complex], tol: float = DEFAULT_TOLERANCE
) -> tuple[ProbabilityModel, CoarseHardyWitness]:
    """Paradox model from a pair of rank-1 projection directions.

    Raises Commuting when |<u|d>| is 0 or 1 within ``tol`` (orthogonal or
    equal projections commute; no paradox model exists there).  Otherwise
    phases are fixed so alpha = <u|d> and beta are real positive, and the
    family construction runs in the {u, u_perp} frame.
    """
    u = np.asarray(u, dtype=complex)
    d = np.asarray(d, dtype=complex)
    if u.shape != (2,) or d.shape != (2,):
        raise ShapeMismatch("projection directions must be qubit 2-vectors")
    u = u / np.linalg.norm(u)
    d = d / np.linalg.norm(d)
    overlap = complex(np.vdot(u, d))
    alpha = abs(overlap)
    if alpha <= tol:
        raise Commuting("orthogonal projections commute")
    if alpha >= 1.0 - tol:
        raise Commuting("equal projections commute")
    d = d * cmath.exp(-1j * cmath.phase(overlap))
    residual = d - alpha * u
    beta = float(np.linalg.norm(residual))
    u_perp = residual / beta
    return _family_model(alpha, beta, u, u_perp, d)
