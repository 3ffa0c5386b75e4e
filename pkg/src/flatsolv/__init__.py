"""Exact computations for flat solvmanifolds: integer linear algebra, cyclotomic
data, integral similarity and the classification tables in low dimension."""

from .errors import (
    CapExceeded,
    DimensionError,
    DomainError,
    InfiniteOrder,
    NonCommuting,
    NonCoprimeError,
    NonUnimodular,
)
from .intlinalg import FinAbGroup, IntMatrix, IntPoly

__version__ = "0.1.0"

__all__ = [
    "CapExceeded",
    "DimensionError",
    "DomainError",
    "FinAbGroup",
    "InfiniteOrder",
    "IntMatrix",
    "IntPoly",
    "NonCommuting",
    "NonCoprimeError",
    "NonUnimodular",
]
