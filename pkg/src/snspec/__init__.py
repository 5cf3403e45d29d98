"""Exact-arithmetic certificates for k-intersecting families of permutations.

Character tables, class-generated Cayley spectra, weighted Hoffman-type
bounds, coset span structure, and generalized Birkhoff decompositions, all
over exact rationals at desk-scale n.
"""

__version__ = "0.1.0"

from .errors import TheoremViolation

__all__ = ["TheoremViolation", "__version__"]
