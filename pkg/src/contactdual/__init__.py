"""Finite Boolean algebras, contact relations and the dualities between them."""

from .finboole import FinBoolAlg
from .fintop import FinTopSpace
from .contact import ContactRelation

__all__ = ["FinBoolAlg", "FinTopSpace", "ContactRelation"]
__version__ = "0.1.0"
