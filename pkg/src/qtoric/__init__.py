"""Cohomology rings, automorphisms and realizing maps of the manifolds M_{a,b}."""

__version__ = "0.1.0"
