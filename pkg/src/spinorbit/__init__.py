"""Spin-orbit photon state simulator.

Models q-plate generated cylindrical vector polarizations, the
hyperentangled two-photon source, post-selected spin-orbit Bell states,
coincidence fringes, and CHSH Bell tests, exactly and at desk scale.
"""

from .bell import (
    ChshSettings,
    FringeFit,
    calibration_offset,
    chsh_S,
    coincidence,
    coincidence_raw,
    collapse_partner,
    correlation_E,
    fringe_fit,
    fringe_peak,
    fringe_visibility,
    optimal_settings,
    optimize_chsh,
    postselect_bell,
    schmidt_coefficients,
)
from .devices import (
    Analyzer,
    QPlate,
    analyzer_state,
    analyzer_state_chain,
    hwp_apply,
    polarizer_project,
    qplate_apply,
)
from .errors import (
    DegenerateNormalizationError,
    EmptyProjectionError,
    IllConditionedFitError,
    OrthogonalAnalyzerError,
    SimulationError,
    TruncationOverflowError,
    UnsupportedShapeError,
    ZeroDenominatorError,
)
from .hilbert import (
    DEFAULT_M_MAX,
    BiphotonState,
    PhotonState,
    Spin,
    SpinOrbitMode,
    as_circular,
    biphoton_to_circular_basis,
    biphoton_to_linear_basis,
    fidelity,
    inner_product,
    linear_state,
    partial_inner,
    tensor_product,
    to_circular_basis,
    to_linear_basis,
)
from .source import OamSpectrum, hyper_state, make_spectrum, spin_bell_state
from .stochastic import CountTable, count_table, estimate_S, sample_counts
from .vectorfield import (
    FieldSample,
    conjugate_fields,
    field_at,
    pattern_period,
    sample_field,
)

__version__ = "0.1.0"
