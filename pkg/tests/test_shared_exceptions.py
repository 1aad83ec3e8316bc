"""
Tests for shared exceptions.
"""

import pytest
from automl.shared.exceptions import (
    AutoMLError, ConfigurationError, ShapeMismatch,
    DatasetError, MissingLabelCount, NonBinaryLabel, MalformedRow, UnknownCategory,
    UnsupportedAttributeType, DegenerateSplit,
    LearnerError, UnsupportedSpec, UnknownClassId, InvalidK,
    SpaceError, SimpleTaskHasNoMethods, IncompletePlan, UnboundedSpace, SpaceDefinitionError,
    SearchError, EvaluationFailed, NoCandidateFound, TimeLimitExceeded,
    StatisticsError, SampleTooSmall,
)


class TestExceptions:
    """Test custom exceptions."""

    def test_automl_error(self):
        """Test AutoMLError exception."""
        error = AutoMLError("Test error")
        assert str(error) == "Test error"
        assert isinstance(error, Exception)

    def test_configuration_error(self):
        """Test ConfigurationError exception."""
        error = ConfigurationError("Configuration failed")
        assert str(error) == "Configuration failed"
        assert isinstance(error, AutoMLError)

    def test_shape_mismatch_is_value_error(self):
        """Test ShapeMismatch is both an AutoMLError and a ValueError."""
        error = ShapeMismatch("3x2 vs 3x4")
        assert isinstance(error, AutoMLError)
        assert isinstance(error, ValueError)

    @pytest.mark.parametrize("cls", [
        MissingLabelCount, NonBinaryLabel, MalformedRow, UnknownCategory,
        UnsupportedAttributeType, DegenerateSplit,
    ])
    def test_dataset_errors(self, cls):
        """Test dataset errors inherit from DatasetError."""
        assert isinstance(cls("x"), DatasetError)
        assert isinstance(cls("x"), AutoMLError)

    @pytest.mark.parametrize("cls", [UnsupportedSpec, UnknownClassId, InvalidK])
    def test_learner_errors(self, cls):
        """Test learner errors inherit from LearnerError."""
        assert isinstance(cls("x"), LearnerError)

    @pytest.mark.parametrize("cls", [
        SimpleTaskHasNoMethods, IncompletePlan, UnboundedSpace, SpaceDefinitionError,
    ])
    def test_space_errors(self, cls):
        """Test space errors inherit from SpaceError."""
        assert isinstance(cls("x"), SpaceError)

    @pytest.mark.parametrize("cls", [EvaluationFailed, NoCandidateFound, TimeLimitExceeded])
    def test_search_errors(self, cls):
        """Test search errors inherit from SearchError."""
        assert isinstance(cls("x"), SearchError)

    def test_statistics_error(self):
        """Test SampleTooSmall inherits from StatisticsError."""
        assert isinstance(SampleTooSmall("x"), StatisticsError)
        assert isinstance(SampleTooSmall("x"), AutoMLError)

    def test_exception_chaining(self):
        """Test exception chaining."""
        original_error = KeyError("bad value")
        try:
            raise UnknownCategory("Unknown category") from original_error
        except DatasetError as dataset_error:
            assert str(dataset_error) == "Unknown category"
            assert dataset_error.__cause__ == original_error
