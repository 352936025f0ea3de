"""Exact-arithmetic lab for circular planar and cactus electrical networks.

Grove measurements, response matrices, medial pairings, bounded affine
permutations, the bipartite-graph embedding into Plucker coordinates, and
the electroid combinatorics that ties them together.  All arithmetic is
over arbitrary-precision rationals.
"""

__version__ = "0.1.0"
