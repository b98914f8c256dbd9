# factor_graph/errors.py


class FactorGraphError(ValueError):
    """Base class for every input or model error raised by this project."""


class InvalidPotentialError(FactorGraphError):
    pass


class NonPositivePotentialError(InvalidPotentialError):
    pass


class InvalidVariableError(FactorGraphError):
    pass


class InvalidFactorError(FactorGraphError):
    pass


class LengthMismatchError(FactorGraphError):
    pass


class DuplicateArgumentError(InvalidFactorError):
    pass


class InvalidGraphError(FactorGraphError):
    pass


class UnknownNameError(FactorGraphError):
    pass


class InvalidAssignmentError(FactorGraphError):
    pass


class InvalidSubsetError(FactorGraphError):
    pass


class InvalidPermutationError(FactorGraphError):
    pass


class MixedRangesError(FactorGraphError):
    pass


class NotCommutativeError(FactorGraphError):
    pass


class SubsetTooSmallError(FactorGraphError):
    pass


class ArityLimitExceededError(FactorGraphError):
    pass


class InvalidKError(FactorGraphError):
    pass
