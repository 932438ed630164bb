"""Bell-scenario empirical models: locality deciders, paradox detectors,
quantum model generators, and exhaustive censuses."""

from .errors import (
    Commuting,
    DegenerateParams,
    InvalidStars,
    InvalidWitness,
    NonlocalityError,
    NotPossible,
    ParseError,
    ShapeMismatch,
    TooLarge,
    ValidationError,
)
from .scenario import Context, JointOutcome, Scenario, context_key, parse_context_key
from .models import (
    DEFAULT_EPSILON,
    DEFAULT_TOLERANCE,
    PossibilityModel,
    ProbabilityModel,
    collapse,
    deterministic_probability_model,
    is_no_signalling,
)
from .relabelling import Relabelling, apply_relabelling, are_isomorphic
from .grids import (
    DeterministicGrid,
    extends_to_grid,
    grid_count,
    grid_possibility_model,
    grid_probability_model,
    is_local,
    is_strongly_nonlocal,
    iter_consistent_grids,
    iter_grids,
)
from .hierarchy import (
    HierarchyLevel,
    classify,
    classify_support,
    decide_22l,
    decide_2k2,
    is_probabilistically_local,
)
from .hardy import (
    ChenPattern,
    CoarseHardyWitness,
    NPartiteHardyWitness,
    certainty_probability,
    check_coarse_witness,
    check_npartite_witness,
    chen_check,
    chen_generate,
    find_hardy_witnesses,
    find_npartite_witnesses,
    has_hardy_witness,
    paradoxical_probability,
)
from .quantum import (
    HardyFamilyParams,
    ProjectiveQubitMeasurement,
    StateVector,
    bell_symmetry_check,
    born_model,
    ghz_model,
    ghz_rule,
    ghz_state,
    hardy_family_model,
    hardy_from_projections,
    phi_plus_state,
    x_measurement,
    y_measurement,
)
from .catalog import (
    CatalogEntry,
    deterministic_example,
    entries,
    ghz_mermin_possibilistic,
    ghz_parity_model,
    hardy_support,
    pr_box,
    table_iv_d,
    table_iv_d_uniform,
)
from .census import census_222, census_symmetric
from .searches import bell_anomaly_search, hardy_scan
from .report import AnalysisReport, analyze_model
from . import modelfile

__version__ = "0.1.0"

__all__ = [name for name in dir() if not name.startswith("_")]
