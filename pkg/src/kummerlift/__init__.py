"""Uniform scalar multiplication by Project, pseudomultiply and Recover.

Elliptic backends (Montgomery, short Weierstrass, Edwards) and genus-2
backends (general and fast Kummer surfaces) share the one- and
two-dimensional chain drivers in :mod:`kummerlift.chain`.  Every field
operation is tallied by an :class:`~kummerlift.field.OpCounter`.
"""

from .chain import ladder_mul, two_dim_mul
from .field import FieldContext, OpCounter, cost

__all__ = ["FieldContext", "OpCounter", "cost", "ladder_mul", "two_dim_mul"]
__version__ = "0.1.0"
