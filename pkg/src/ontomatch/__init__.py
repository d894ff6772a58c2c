"""Syntactic ontology matching via text preprocessing, with evaluation and repair."""

__version__ = "0.1.0"
