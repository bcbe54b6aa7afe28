"""Exception hierarchy shared by every module of the package."""


class LFError(Exception):
    """Base class for all errors raised by lfhh."""


class DomainError(LFError, ValueError):
    """Argument outside the domain of an operation."""


class ConvergenceError(LFError, ArithmeticError):
    """A series did not reach its truncation tolerance."""


class SignChangeError(LFError, ValueError):
    """A power base changes sign strictly inside an integration interval."""


class DegenerateBaseError(LFError, ValueError):
    """Zero-slope base where a non-constant primitive is required."""


class RecursionDepthError(LFError, ValueError):
    """Integration-by-parts reduction would exceed the depth cap."""


class ClassClosureError(LFError, ValueError):
    """An operation would leave the closed term class."""


class ExponentError(LFError, ValueError):
    """Hölder exponents are not a conjugate pair with p, q > 1."""


class UnsupportedError(LFError, TypeError):
    """Operation is not defined for this function variant."""
