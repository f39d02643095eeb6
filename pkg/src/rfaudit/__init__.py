"""Audit rational functions for Froissart doublets and near-degeneracy."""

__version__ = "0.1.0"
