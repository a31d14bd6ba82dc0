"""Subset-valued probability for yes/no experiments.

Modules:

* :mod:`subprob.intervals` -- exact finite unions of closed subintervals of [0, 1]
* :mod:`subprob.experiments` -- experiment terms with inverse and product
* :mod:`subprob.sep` -- state experiment probability systems, evaluation, certainty
* :mod:`subprob.choice` -- convex-combination diagnostics and the session simulator
* :mod:`subprob.properties` -- the derived state property system and its lattice
* :mod:`subprob.category` -- morphisms, related morphisms, composition
* :mod:`subprob.generate` -- random instances
"""
from importlib import resources
from pathlib import Path

from .experiments import TAU, Base, Product, Tilde, parse_term, product, tilde
from .intervals import EMPTY, ONE, UNIT, ZERO, UnitIntervalSet, interval, normalize, parse_set, point
from .sep import SepSystem, is_certain, is_close_to_certain, load_sep, mu_eval, validate_sep

__version__ = "0.1.0"

__all__ = [
    "TAU", "Base", "Product", "Tilde", "parse_term", "product", "tilde",
    "EMPTY", "ONE", "UNIT", "ZERO", "UnitIntervalSet", "interval", "normalize", "parse_set", "point",
    "SepSystem", "is_certain", "is_close_to_certain", "load_sep", "mu_eval", "validate_sep",
    "data_path",
]


def data_path(name: str) -> Path:
    """Path of a shipped instance file such as ``"wood.sep"``."""
    return Path(str(resources.files(__name__).joinpath("data", name)))
