"""Algorithms on finite multiplication tables: classification, membership,
minimum generating sets, isomorphism and isotopy, and a 3SAT reduction."""

from .errors import CayleyError
from .tables import AlgebraClass, CayleyTable, ElementSet, parse_table, read_table, serialize_table, write_table

__all__ = [
    "AlgebraClass",
    "CayleyError",
    "CayleyTable",
    "ElementSet",
    "parse_table",
    "read_table",
    "serialize_table",
    "write_table",
]

__version__ = "0.1.0"
