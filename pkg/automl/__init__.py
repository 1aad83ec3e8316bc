"""
Multi-label AutoML - hierarchical planning over classifier pipelines
"""

__version__ = "1.0.0"
