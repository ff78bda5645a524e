"""liftlab: exact workbench for lifts of circle and annulus homeomorphisms."""

from .lifts import DisplacementSummary, PLLift, ResourceGuard, commutator

__version__ = "0.1.0"
