"""Exception hierarchy shared by all modules."""


class LntxError(ValueError):
    """Base class for every error raised by the package."""


class DomainError(LntxError):
    """Argument outside the domain of a special function or operator."""


class ValidityError(LntxError):
    """A transform pair, query or problem violates its stated validity region."""


class QuadratureError(LntxError):
    """Numerical integration failed to converge."""


class InversionError(LntxError):
    """Residue or series inversion could not be carried out."""
