"""Finite simplicial sets, subdivision and desingularization."""
from .simpset import FinSimpSet, NormalSimplex, SimpMap, SimplexId, SimplicialError, standard
from .subdivision import sd
from .desing import desing, desingularize
from .homology import homology

__all__ = [
    "FinSimpSet",
    "NormalSimplex",
    "SimpMap",
    "SimplexId",
    "SimplicialError",
    "standard",
    "sd",
    "desing",
    "desingularize",
    "homology",
]
