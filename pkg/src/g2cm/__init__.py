"""Genus-2 Jacobians with CM: group law, pairings, l-torsion structure."""

__version__ = "0.1.0"
