"""Exception types raised across the package."""


class ToricError(Exception):
    """Base class for all errors raised by monotoric."""


class InputError(ToricError, ValueError):
    """Malformed or inconsistent input (dimension mismatch, unknown ray, ...)."""


class NormalizationError(InputError):
    """A ray generator is not a primitive integer vector."""


class FanError(InputError):
    """The cones do not form a fan (e.g. two cones meet outside a common face)."""


class PreconditionError(ToricError, ValueError):
    """An operation was called on data outside its domain (non-ample, empty, ...)."""


class EffectivenessError(PreconditionError):
    """A divisor was required to be effective but has a negative coefficient."""


class BoundednessError(PreconditionError):
    """A bounded polyhedron was required."""


class DimensionError(PreconditionError):
    """Wrong (affine) dimension for the requested operation."""


class UnsupportedError(ToricError):
    """The input is valid but outside what is implemented (non-simplicial, dim > 4)."""


class IntegrityError(ToricError):
    """Internal invariant violated, e.g. d∘d ≠ 0 in a cochain complex."""


class ConstructionError(ToricError):
    """A constructive routine could not produce a valid object."""


class BoundViolationError(IntegrityError):
    """A weight in the enumeration shell carries nonzero cohomology."""


class ModelDisagreementError(ToricError):
    """Two cohomology models disagree at some (weight, degree)."""

    def __init__(self, message, offending=()):
        super().__init__(message)
        self.offending = list(offending)


class DegeneracyError(ToricError):
    """Singular Jacobian at a critical point."""


class ContinuationError(ToricError):
    """Path tracking lost a critical point or two paths collided."""
