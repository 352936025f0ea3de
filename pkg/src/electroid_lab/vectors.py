"""Projective coordinate vectors over exact rationals.

Grove vectors are indexed by non-crossing partitions, Plucker vectors by
k-subsets of the boundary labels.  Coordinates are stored as computed (they
are honest weighted counts); projective comparison goes through a canonical
normal form: clear denominators, divide by the gcd, and fix the sign so the
first nonzero coordinate in canonical index order is positive.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from math import gcd

from .combinat import NCPartition, enumerate_nc


def _normalize_items(items):
    """Canonical integer form of a projective coordinate family."""
    nonzero = [v for _, v in items if v != 0]
    if not nonzero:
        raise ValueError("projective vector must have a nonzero coordinate")
    denom_lcm = 1
    for v in nonzero:
        denom_lcm = denom_lcm * v.denominator // gcd(denom_lcm, v.denominator)
    ints = [v * denom_lcm for v in nonzero]
    g = 0
    for v in ints:
        g = gcd(g, int(v))
    scale = Fraction(denom_lcm, g)
    if next(v for _, v in items if v != 0) < 0:
        scale = -scale
    return tuple((key, v * scale) for key, v in items)


@dataclass(frozen=True)
class GroveVector:
    n: int
    coords: tuple[tuple[NCPartition, Fraction], ...]  # all partitions, canonical order

    @staticmethod
    def of(n, mapping) -> "GroveVector":
        universe = enumerate_nc(n)
        stray = set(mapping) - set(universe)
        if stray:
            raise ValueError(f"unknown partition keys: {sorted(map(str, stray))}")
        items = tuple((sigma, Fraction(mapping.get(sigma, 0))) for sigma in universe)
        return GroveVector(n, items)

    def __getitem__(self, sigma) -> Fraction:
        return self._lookup[sigma]

    @property
    def _lookup(self):
        cached = self.__dict__.get("_lookup_cache")
        if cached is None:
            cached = dict(self.coords)
            self.__dict__["_lookup_cache"] = cached
        return cached

    def as_dict(self):
        return dict(self.coords)

    def support(self):
        return {sigma for sigma, v in self.coords if v != 0}

    def normalized(self) -> "GroveVector":
        return GroveVector(self.n, _normalize_items(self.coords))

    def projectively_equal(self, other: "GroveVector") -> bool:
        return self.n == other.n and self.normalized().coords == other.normalized().coords

    def scale(self, c) -> "GroveVector":
        return GroveVector(self.n, tuple((k, v * Fraction(c)) for k, v in self.coords))

    def is_nonnegative(self) -> bool:
        values = [v for _, v in self.coords if v != 0]
        return all(v > 0 for v in values) or all(v < 0 for v in values)


def subset_key(subset) -> tuple[int, ...]:
    return tuple(sorted(subset))


@dataclass(frozen=True)
class PluckerVector:
    m: int
    k: int
    coords: tuple[tuple[tuple[int, ...], Fraction], ...]  # all k-subsets, sorted

    @staticmethod
    def of(m, k, mapping) -> "PluckerVector":
        mapping = {subset_key(key): Fraction(v) for key, v in mapping.items()}
        for key in mapping:
            if len(key) != k or not all(1 <= x <= m for x in key) or len(set(key)) != k:
                raise ValueError(f"not a {k}-subset of 1..{m}: {key}")
        items = tuple(
            (subset, mapping.get(subset, Fraction(0)))
            for subset in itertools.combinations(range(1, m + 1), k)
        )
        return PluckerVector(m, k, items)

    def __getitem__(self, subset) -> Fraction:
        return self._lookup[subset_key(subset)]

    @property
    def _lookup(self):
        cached = self.__dict__.get("_lookup_cache")
        if cached is None:
            cached = dict(self.coords)
            self.__dict__["_lookup_cache"] = cached
        return cached

    def as_dict(self):
        return dict(self.coords)

    def support(self):
        return {frozenset(s) for s, v in self.coords if v != 0}

    def normalized(self) -> "PluckerVector":
        return PluckerVector(self.m, self.k, _normalize_items(self.coords))

    def projectively_equal(self, other: "PluckerVector") -> bool:
        if (self.m, self.k) != (other.m, other.k):
            return False
        return self.normalized().coords == other.normalized().coords

    def is_nonnegative(self) -> bool:
        values = [v for _, v in self.coords if v != 0]
        return all(v > 0 for v in values) or all(v < 0 for v in values)

    def map_coords(self, fn) -> "PluckerVector":
        """New vector with coords[I] = fn(I, lookup); fn sees a dict view."""
        lookup = dict(self.coords)
        return PluckerVector(
            self.m, self.k, tuple((key, fn(key, lookup)) for key, _ in self.coords)
        )
