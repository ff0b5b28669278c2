"""Exception types raised by numeric failures during a simulation run.

Argument and parameter validation raises plain ValueError; the classes
here mark conditions that arise from the physics of a configured run
(state truncation, degenerate fringes, empty projections) and map to a
distinct process exit code in the CLI.
"""


class SimulationError(Exception):
    """Base class for numeric failures in state construction or analysis."""


class TruncationOverflowError(SimulationError):
    """An operation produced an OAM index outside the |m| <= m_max window."""


class OrthogonalAnalyzerError(SimulationError):
    """Projecting an analyzer onto a pair state left the zero vector."""


class DegenerateNormalizationError(SimulationError):
    """The coincidence fringe has zero amplitude, so no unit peak exists."""


class EmptyProjectionError(SimulationError):
    """Post-selection removed every amplitude of the state."""


class UnsupportedShapeError(SimulationError):
    """The state support does not fit the 2x2 product form required."""


class IllConditionedFitError(SimulationError):
    """The fringe fit could not identify its parameters from the samples."""


class ZeroDenominatorError(SimulationError):
    """A correlator or count normalisation summed to zero."""
