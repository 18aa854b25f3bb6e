"""Exact invariants of plane-curve complement groups.

Presentations from braid monodromy, abelianizations, characteristic
varieties over exact cyclotomic arithmetic, Todd-Coxeter enumeration,
Reidemeister-Schreier subgroup presentations, and nilpotent quotients.
"""

__version__ = "0.1.0"
