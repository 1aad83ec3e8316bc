"""
Custom exceptions for the multi-label AutoML engine.
"""


class AutoMLError(Exception):
    """Base exception for all engine errors."""
    pass


class ConfigurationError(AutoMLError):
    """Exception raised when configuration is invalid."""
    pass


class ShapeMismatch(AutoMLError, ValueError):
    """Exception raised when matrix shapes disagree."""
    pass


# Dataset errors

class DatasetError(AutoMLError):
    """Exception raised when a dataset cannot be read or split."""
    pass


class MissingLabelCount(DatasetError):
    """The relation name carries no usable '-C <int>' option."""
    pass


class NonBinaryLabel(DatasetError):
    """A label attribute is not nominal over {0,1}."""
    pass


class MalformedRow(DatasetError):
    """A data row does not match the declared attributes."""
    pass


class UnknownCategory(DatasetError):
    """A nominal value is not among the declared categories."""
    pass


class UnsupportedAttributeType(DatasetError):
    """The attribute type (string, date, ...) is not supported."""
    pass


class DegenerateSplit(DatasetError):
    """A split would leave the train or the test portion empty."""
    pass


# Learner errors

class LearnerError(AutoMLError):
    """Exception raised by learner construction or decoding."""
    pass


class UnsupportedSpec(LearnerError):
    """Unknown algorithm name or malformed nesting."""
    pass


class UnknownClassId(LearnerError):
    """A class id is outside the label powerset codebook."""
    pass


class InvalidK(LearnerError):
    """Label subset size or count out of range."""
    pass


# Search space errors

class SpaceError(AutoMLError):
    """Exception raised by the component space."""
    pass


class SimpleTaskHasNoMethods(SpaceError):
    """Decomposition was requested for a simple task."""
    pass


class IncompletePlan(SpaceError):
    """A plan does not replay to a goal node."""
    pass


class UnboundedSpace(SpaceError):
    """The task grammar is recursive or exceeds the layer bound."""
    pass


class SpaceDefinitionError(SpaceError):
    """A declarative space file is malformed."""
    pass


# Search errors

class SearchError(AutoMLError):
    """Exception raised by the optimizers."""
    pass


class EvaluationFailed(SearchError):
    """A candidate produced no completed validation repetition."""
    pass


class NoCandidateFound(SearchError):
    """The budget expired before any successful evaluation."""
    pass


class TimeLimitExceeded(SearchError):
    """A fit ran past its hard time limit and was interrupted."""
    pass


# Statistics errors

class StatisticsError(AutoMLError):
    """Exception raised by significance tests."""
    pass


class SampleTooSmall(StatisticsError):
    """A sample has fewer observations than the test needs."""
    pass
