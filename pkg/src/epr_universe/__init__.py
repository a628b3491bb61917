"""Desk-scale simulator of a finite universe of EPR complexes."""
__version__ = "0.1.0"
