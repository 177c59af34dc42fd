"""Shared exception types."""


class ResourceBudgetError(RuntimeError):
    """A configured memory or table budget would be exceeded."""


class OutOfRangeError(ValueError):
    """An argument lies outside the range a table was built for."""


class UnsupportedModulusError(ValueError):
    """The modulus is outside the family an operation supports."""


class DegenerateCensusError(ValueError):
    """A census with no qualifying integers cannot be normalized."""


class GammaPoleError(ArithmeticError):
    """Gamma requested at a nonpositive integer."""


class EvenModulusWarning(UserWarning):
    """An average was requested at an even modulus, outside its main use."""
