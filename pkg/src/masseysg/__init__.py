"""Exact computations for the DG algebra Q, the A-infinity algebras A and B,
their Ext groups and the stable Auslander-Reiten quiver of D_sg(B)."""
from __future__ import annotations

__version__ = "0.1.0"
