"""
Pytest configuration and shared fixtures.
"""

import pytest
import shutil
import tempfile
from pathlib import Path
from unittest.mock import Mock

import numpy as np

from automl.data import FeatureEncoder, chained_labels, independent_labels
from automl.planning import Budget, build_space, default_space, load_space_file
from automl.shared.models import MultiLabelData

FIXTURE_DIR = Path(__file__).resolve().parent.parent / "data" / "fixtures"


def pytest_configure(config):
    config.addinivalue_line("markers", "slow: long-running acceptance checks (deselect with -m 'not slow')")


@pytest.fixture
def temp_dir():
    """Create a temporary directory for test data."""
    temp_dir = tempfile.mkdtemp()
    yield temp_dir
    shutil.rmtree(temp_dir)


@pytest.fixture
def fixture_dir():
    """Directory with the shipped ARFF samples."""
    return FIXTURE_DIR


@pytest.fixture
def small_dataset():
    """A 60-row dataset with independent labels."""
    return independent_labels(n=60, seed=3)


@pytest.fixture
def search_data():
    """Encoded 60-row dataset with chained labels, a nominal attribute and missing values."""
    data = chained_labels(n=60, seed=5)
    return FeatureEncoder().fit(data).to_multilabel(data)


@pytest.fixture
def tiny_space():
    """Four pipelines: BR/LC over ZeroR/NaiveBayes."""
    return build_space(ml_base=["BR", "LC"], sl_base=["NaiveBayes", "ZeroR"])


@pytest.fixture
def small_space():
    """A few dozen pipelines across all four layers."""
    return build_space(
        ml_meta=["BaggingML"],
        ml_base=["BR", "LC", "MajorityLabelSet"],
        sl_meta=["Bagging"],
        sl_base=["DecisionStump", "NaiveBayes", "ZeroR"],
    )


@pytest.fixture
def restricted_space():
    """The restricted space shipped as a definition file."""
    return load_space_file(FIXTURE_DIR / "restricted_space.txt")


@pytest.fixture
def full_space():
    """The default component space."""
    return default_space()


@pytest.fixture
def count_budget():
    """Factory for evaluation-count budgets."""
    return Budget.evaluations


@pytest.fixture
def fake_clock():
    """A clock advanced by hand."""
    clock = Mock()
    clock.now = 0.0
    clock.side_effect = lambda: clock.now
    return clock


@pytest.fixture
def random_truth_and_prediction():
    """Factory of random (truth, prediction, scores) triples."""
    def make(seed, n=None, m=None):
        rng = np.random.default_rng(seed)
        n = n or int(rng.integers(1, 21))
        m = m or int(rng.integers(1, 9))
        truth = rng.integers(0, 2, size=(n, m))
        pred = rng.integers(0, 2, size=(n, m))
        scores = np.round(rng.random((n, m)), 1)
        return truth, pred, scores
    return make


def encoded(data):
    """Encode a LabeledDataset on itself."""
    return FeatureEncoder().fit(data).to_multilabel(data)


@pytest.fixture
def make_search_data():
    """Factory that encodes a LabeledDataset into MultiLabelData."""
    return encoded


@pytest.fixture
def constant_data():
    """20 rows, one constant feature, labels with a known modal vector."""
    labels = np.array([[1, 0]] * 12 + [[0, 1]] * 4 + [[1, 1]] * 4)
    return MultiLabelData(np.zeros((20, 1)), labels, np.arange(20))
