"""Exception types shared across the package."""


class ShapeMismatch(ValueError):
    pass


class OutOfRange(ValueError):
    pass


class InvalidAnchor(ValueError):
    pass


class SizeCapExceeded(ValueError):
    pass


class NonRationalParameter(ValueError):
    pass


class PreconditionViolated(ValueError):
    pass


class IdentityViolation(AssertionError):
    """An identity that must hold exactly was found to fail."""
