"""Exception types shared across the toolkit.

Verifiers never raise on a failed inequality (that is a finding, reported in
the verdict); these exceptions mark inputs or solver states that make an
operation meaningless.
"""


class GeometryError(Exception):
    """Base class for all toolkit errors."""


class InvalidInput(GeometryError, ValueError):
    """Arguments violate an operation's preconditions."""


class AmbiguousGeodesic(InvalidInput):
    """The connecting geodesic is not unique (e.g. antipodal points)."""


class NumericalInfeasibility(GeometryError):
    """A construction is unrealizable beyond tolerance.

    Carries the offending sample index when one exists.
    """

    def __init__(self, message, index=None):
        super().__init__(message)
        self.index = index


class SearchFailure(GeometryError):
    """A solver exhausted its search budget without an answer."""


class HypothesisViolation(GeometryError):
    """A comparison lemma was invoked with its hypothesis numerically false."""


class RefinementStall(GeometryError):
    """The triangle-refinement engine could not certify any branch.

    ``diagnostics`` holds the full candidate state for post-mortem analysis.
    """

    def __init__(self, message, diagnostics=None):
        super().__init__(message)
        self.diagnostics = diagnostics or {}


class ConfigError(GeometryError):
    """Experiment configuration failed validation."""
