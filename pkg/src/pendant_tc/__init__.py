"""Exact pendant tree-connectivity of small graphs, with closed forms and theorem checks."""

__version__ = "0.1.0"
