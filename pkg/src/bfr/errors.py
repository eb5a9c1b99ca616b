"""Exception hierarchy shared across the package."""


class BfrError(Exception):
    """Base class for all errors raised by this package."""


class ParameterError(BfrError, ValueError):
    """A parameter set violates a documented constraint.

    The message names the violated constraint.
    """


class FieldMismatchError(ParameterError):
    """Operands or codes belong to incompatible fields."""


class UnrecoverableErasureError(BfrError):
    """Not enough surviving data to decode."""


class RankErasureError(UnrecoverableErasureError):
    """Surviving evaluation points span too small a subspace.

    Carries the rank actually achieved and the rank that decoding needs.
    """

    def __init__(self, message, achieved_rank=None, needed_rank=None):
        super().__init__(message)
        self.achieved_rank = achieved_rank
        self.needed_rank = needed_rank


class CorruptionError(BfrError):
    """Available symbols are mutually inconsistent with any codeword."""


class SingularMatrixError(BfrError):
    """A matrix expected to be invertible is singular."""


class EnumerationGuardError(BfrError):
    """An exhaustive enumeration would exceed its configured guard."""
