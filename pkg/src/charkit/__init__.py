"""Exact character theory for finite permutation groups.

Character tables, class-function arithmetic, monomial decompositions and
cone certificates, order-assignment searches, supercharacter theories,
and formal holomorphy certificates, all in exact cyclotomic arithmetic.
"""

__version__ = "0.1.0"
