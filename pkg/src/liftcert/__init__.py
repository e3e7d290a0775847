"""Certified lower bounds for block-diagonal SDP lifts of the correlation polytope.

The package constructs the unique-disjointness matrix, uniform-covering
rectangle families with exact matching certificates, randomized oracles for
the sparsity lemmas behind the covering construction, the block-decomposition
induction check, and the closed-form lower-bound formulas they combine into.
"""

__version__ = "0.1.0"
