"""
Exceptions raised by the analysis library.

InputError covers caller mistakes and unmet preconditions (CLI exit 2);
AnalysisFailure covers negative analysis outcomes (CLI exit 1).
"""


class TopologyError(Exception):
    """Base class for every error raised by splitting_structures."""


class InputError(TopologyError, ValueError):
    """The input or a precondition is invalid."""


class AnalysisFailure(TopologyError):
    """The analysis ran but produced a negative result."""


# space construction

class OutOfRange(InputError):
    pass


class SelfLoop(InputError):
    pass


class DuplicateEdge(InputError):
    pass


class IsolatedVertex(InputError):
    pass


class EmptyBasisSet(InputError):
    pass


class BasisDoesNotCover(InputError):
    pass


# ground sets and preconditions

class NotInGround(InputError):
    pass


class GroundDisconnected(InputError):
    pass


class SingletonGround(InputError):
    pass


class PreconditionViolated(InputError):
    pass


class BadParams(InputError):
    pass


class UnknownFamily(InputError):
    pass


class FamilyTooLarge(InputError):
    pass


class ValueOutsideCodomain(InputError):
    pass


# analysis outcomes

class LemmaViolated(AnalysisFailure):
    pass


class AnchorDoesNotSplit(AnalysisFailure):
    def __init__(self, anchor: int, count: int):
        super().__init__(f"anchor {anchor} splits its domain into {count} components, expected 2")
        self.anchor = anchor
        self.count = count


class NotTotalOrder(AnalysisFailure):
    pass


class ComponentNotOrderable(AnalysisFailure):
    pass


class NotBetweennessRealizable(AnalysisFailure):
    pass


class BoundaryNotTwo(AnalysisFailure):
    pass


class NoPierceableSubset(AnalysisFailure):
    pass


class OverlapInconsistent(AnalysisFailure):
    pass
