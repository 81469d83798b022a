"""Exception hierarchy shared by every cliffalg module."""


class AlgebraError(Exception):
    """Base class for errors raised by cliffalg."""


class UndeclaredIndexError(AlgebraError, KeyError):
    """An index was used that the signature does not declare."""

    def __init__(self, index):
        super().__init__(index)
        self.index = index

    def __str__(self):
        return f"index {self.index} is not declared in the signature"


class SignatureMismatchError(AlgebraError, ValueError):
    """Two operands live over different signatures."""


class MorphismError(AlgebraError, ValueError):
    """Generator images do not satisfy the Clifford relations."""


class BasisError(AlgebraError, ValueError):
    """A proposed basis is not orthogonal, not square or not invertible."""


class ScalarKindError(AlgebraError, TypeError):
    """An operation was asked to run over a scalar kind it does not support."""
