"""circpers: exact persistence invariants of circle valued maps.

Bar codes and Jordan cells for piecewise linear maps from a finite
simplicial complex to the circle, computed in exact arithmetic over the
rationals or a prime field, with independent cross-check routes.
"""

__version__ = "0.1.0"
