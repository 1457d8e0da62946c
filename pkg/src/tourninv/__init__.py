"""Inversion numbers of tournaments: decycling constructions, zeta_q search, exact oracles."""
from .errors import CapacityError, FormatError, InputError, TournError, UnsupportedError
from .tournament import LeftGraph, Permutation, Tournament

__all__ = [
    "CapacityError", "FormatError", "InputError", "TournError", "UnsupportedError",
    "LeftGraph", "Permutation", "Tournament",
]
