"""Combosquatting detection and measurement over DNS corpora."""

__version__ = "0.1.0"
