"""Exception and warning types shared across the package."""


class VortexFlowError(Exception):
    """Base class for all errors raised by this package."""


class NonpositiveRadiusError(VortexFlowError):
    """A cylinder was given a radius that is zero or negative."""


class OverlapError(VortexFlowError):
    """Two cylinders violate the disjointness rule of the domain mode."""


class SeedInsideCylinderError(VortexFlowError):
    """A finite seed point (other than a center) lies inside or on a cylinder."""


class BudgetExceededError(VortexFlowError):
    """The requested tree depth would generate more points than the budget allows."""


class DegenerateCompositionError(VortexFlowError):
    """The composed reflection map degenerated and has no isolated fixed points."""


class NonconvergentConfigurationError(VortexFlowError):
    """An error bound was requested for a configuration with q >= 1."""


class NonconvergentConfigurationWarning(UserWarning):
    """The configuration has q >= 1; sums are computed but carry no certificate."""


class CirculationSystemError(VortexFlowError):
    """The closed-form circulation solve failed its residual check."""


class SingularPointError(VortexFlowError):
    """A pointwise velocity was requested exactly at a source position."""


class ContourThroughSingularityError(VortexFlowError):
    """A quadrature contour passes through (or hugs) a source position."""


class ParseError(VortexFlowError):
    """A configuration document is not valid JSON."""


class SchemaError(VortexFlowError):
    """A configuration document is valid JSON but violates the schema."""
