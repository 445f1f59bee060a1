"""Exact six-vertex partition functions for symmetry classes of alternating sign matrices."""
__version__ = "0.1.0"
