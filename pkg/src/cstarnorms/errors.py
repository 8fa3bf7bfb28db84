"""Exception types raised across the package."""


class CstarnormsError(Exception):
    """Base class for all package errors."""


class NotHermitian(CstarnormsError):
    """Input matrix fails the Hermitian symmetry check."""


class NoConvergence(CstarnormsError):
    """An iterative scheme exhausted its budget before reaching tolerance."""


class NotPositive(CstarnormsError):
    """Operation requires a positive semidefinite input."""


class SingularPower(CstarnormsError):
    """Nonpositive exponent requested for a singular positive matrix."""


class StructureMismatch(CstarnormsError):
    """Operands live on different block structures."""


class IndexOutOfRange(CstarnormsError):
    """Block index outside the structure."""


class NotUnitVector(CstarnormsError):
    """Vector is not normalized to unit length."""


class NotInvertible(CstarnormsError):
    """Operation requires an invertible positive element."""


class ZeroElement(CstarnormsError):
    """Operation undefined on the zero element."""


class BadExponents(CstarnormsError):
    """Exponent pair violates the operation's preconditions."""


class BadSpec(CstarnormsError):
    """Malformed generator specification."""
