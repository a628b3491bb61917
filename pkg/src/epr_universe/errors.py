"""Exception hierarchy shared by every module.

Each domain error derives from :class:`EprError` so the CLI can turn any of
them into a machine-readable error object.
"""


class EprError(Exception):
    """Base class for domain errors."""


# complexes

class SelfLoopError(EprError, ValueError):
    pass


class DuplicateEdgeError(EprError, ValueError):
    pass


class EndpointOutsideObjectsError(EprError, ValueError):
    pass


class ObjectOutOfRangeError(EprError, ValueError):
    pass


class ObjectNotInComplexError(EprError, KeyError):
    def __str__(self):
        return Exception.__str__(self)


class EnumerationTooLargeError(EprError):
    """Raised when enumeration would exceed the configured limit.

    The exact count is still available as ``count``.
    """

    def __init__(self, count, free_pairs, limit):
        super().__init__(
            f"{free_pairs} free pairs exceeds enumeration limit {limit} "
            f"({count} aspects)"
        )
        self.count = count
        self.free_pairs = free_pairs
        self.limit = limit


class PartNotBelowAspectError(EprError, ValueError):
    pass


class NotAnAspectError(EprError, ValueError):
    pass


# symmetry

class TooLargeForBruteForceError(EprError):
    pass


class GroupTooLargeError(EprError):
    pass


class NotAPermutationError(EprError, ValueError):
    pass


# spectral

class ConvergenceFailureError(EprError, ArithmeticError):
    pass


class NotSymmetricError(EprError, ValueError):
    pass


class CarrierMismatchError(EprError, ValueError):
    pass


class BadCutoffError(EprError, ValueError):
    pass


# macro-time

class PolicyError(EprError, ValueError):
    pass


class PolicyExhaustsBasisError(PolicyError):
    pass


class BasisNotBelowAspectError(EprError, ValueError):
    pass


class StepOutOfRangeError(EprError, IndexError):
    pass


class DisconnectedInitialBasisError(EprError, ValueError):
    pass


class UnknownMeasureError(EprError, ValueError):
    pass


# cosmology

class NotACycleCarrierError(EprError, ValueError):
    pass


class DisconnectedError(EprError, ValueError):
    pass


class NotNormalizedError(EprError, ValueError):
    pass
