"""Exact verification toolkit for resolvends over odd abelian groups."""

__version__ = "0.1.0"
