"""Exception hierarchy used across the package."""


class RisSopError(Exception):
    """Base class for all package errors."""


class ParameterDomainError(RisSopError, ValueError):
    """A parameter lies outside the domain where a quantity is defined."""


class FitError(RisSopError, ValueError):
    """Moment matching produced a degenerate (non-positive variance) fit."""


class ModeError(RisSopError, ValueError):
    """A closed-form path was requested for parameters it cannot serve.

    The quadrature or Monte-Carlo paths remain available in that case.
    """


class CapacityError(RisSopError, RuntimeError):
    """A combinatorial expansion would exceed the configured size guard."""


class ContourError(RisSopError, ValueError):
    """No admissible Mellin-Barnes contour separates the pole families."""


class ConvergenceError(RisSopError, RuntimeError):
    """A numerical procedure failed to reach its accuracy target."""


class QuadratureError(ConvergenceError):
    """Adaptive quadrature did not converge."""


class DegenerateParameterError(RisSopError, ValueError):
    """Two pole families coincide, so a residue formula hits a Gamma pole."""
