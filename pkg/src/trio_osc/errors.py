"""Exception hierarchy shared by every module of the package."""


class TrioError(Exception):
    """Base class for all package errors."""


class DomainError(TrioError, ValueError):
    """Input lies outside the real domain of a formula."""


class PoleError(DomainError):
    """Input sits on (or within the guard of) a genuine pole."""


class DegenerateEigenvalues(TrioError, ArithmeticError):
    """Two eigenvalues coincide where an identity divides by their difference."""


class BranchError(TrioError, ZeroDivisionError):
    """A branch formula hit a vanishing denominator."""


class CapMismatch(TrioError, ValueError):
    """Series operands carry different variable caps."""


class OutOfCaps(TrioError, IndexError):
    """Requested exponent exceeds the series truncation caps."""


class ZeroConstantTerm(TrioError, ZeroDivisionError):
    """Series reciprocal requested for a series with vanishing constant term."""


class CapError(TrioError, ValueError):
    """Fock state exceeds the configured excitation budget."""


class GridTooCoarse(TrioError, RuntimeError):
    """Quadrature convergence check failed."""


class CutoffTooSmall(TrioError, RuntimeError):
    """Fock-space cutoff convergence check failed."""


class PurityRangeError(TrioError, ArithmeticError):
    """A computed purity left (0, 1]; signals a transcription or sign error."""
