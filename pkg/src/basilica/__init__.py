"""Exact combinatorics of the Basilica Thompson group and its tree action."""

from .diagram import PerfectDiagram, is_diagram, is_perfect, perfect_complete
from .element import ThompsonElement, compose, equals, identity, invert, make
from .fullgroup import GeneralElement, gamma
from .germ import PartialAutomorphism
from .lamination import DIAM, Central, Inner, Leaf
from .triadic import TriadicAngle

__all__ = [
    "DIAM",
    "Central",
    "GeneralElement",
    "Inner",
    "Leaf",
    "PartialAutomorphism",
    "PerfectDiagram",
    "ThompsonElement",
    "TriadicAngle",
    "compose",
    "equals",
    "gamma",
    "identity",
    "invert",
    "is_diagram",
    "is_perfect",
    "make",
    "perfect_complete",
]
