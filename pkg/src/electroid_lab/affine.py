"""Bounded affine permutations, Bruhat order, necklaces, and the uncrossing poset.

A bounded affine permutation of type (k, N) is a bijection f of the integers
with f(i + N) = f(i) + N, i <= f(i) <= i + N, and average displacement k.  It
is stored by its window [f(1), ..., f(N)].  Matchings on [2n] embed here two
ways: g_tau of type (n, 2n) records where each chord endpoint is sent (lifting
backward partners by a period), and f_tau = g_tau - 1 of type (n-1, 2n).
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass

from .combinat import Matching, crossing_number, dominance_leq, in_open_arc


@dataclass(frozen=True)
class BoundedAffinePermutation:
    window: tuple[int, ...]

    @staticmethod
    def of(window) -> "BoundedAffinePermutation":
        f = BoundedAffinePermutation(tuple(window))
        f._validate()
        return f

    def _validate(self):
        N = self.period
        if N == 0:
            raise ValueError("empty window")
        if sorted(x % N for x in self.window) != list(range(N)):
            raise ValueError(f"window is not a bijection mod {N}: {self.window}")
        for i, fi in enumerate(self.window, start=1):
            if not i <= fi <= i + N:
                raise ValueError(f"window not bounded at {i}: f({i}) = {fi}")
        if sum(fi - i for i, fi in enumerate(self.window, 1)) % N != 0:
            raise ValueError("displacement sum must be a multiple of the period")

    @property
    def period(self) -> int:
        return len(self.window)

    @property
    def k(self) -> int:
        """Average displacement: the type is (k, period)."""
        N = self.period
        return sum(fi - i for i, fi in enumerate(self.window, 1)) // N

    def __call__(self, i: int) -> int:
        N = self.period
        q, r = divmod(i - 1, N)
        return self.window[r] + q * N

    def inverse_value(self, j: int) -> int:
        """The unique i with f(i) = j."""
        N = self.period
        for r in range(1, N + 1):
            fr = self(r)
            if (j - fr) % N == 0:
                return r + (j - fr)
        raise AssertionError("bijectivity violated")

    def __str__(self):
        return "[" + ",".join(str(x) for x in self.window) + "]"

    @staticmethod
    def parse(text: str) -> "BoundedAffinePermutation":
        body = text.strip().lstrip("[").rstrip("]")
        return BoundedAffinePermutation.of(int(t) for t in body.split(","))


def shift_identity(k: int, N: int) -> BoundedAffinePermutation:
    """The permutation i -> i + k."""
    return BoundedAffinePermutation.of([i + k for i in range(1, N + 1)])


def affine_of_matching(tau: Matching):
    """The pair (g, f): chord-lift permutation and its shift down by one."""
    N = 2 * tau.n
    partner = tau.partner_map()
    g_win = [partner[i] if partner[i] > i else partner[i] + N for i in range(1, N + 1)]
    g = BoundedAffinePermutation.of(g_win)
    f = BoundedAffinePermutation.of([x - 1 for x in g_win])
    return g, f


def matching_perm(tau: Matching) -> BoundedAffinePermutation:
    return affine_of_matching(tau)[0]


def electrical_perm(tau: Matching) -> BoundedAffinePermutation:
    return affine_of_matching(tau)[1]


def is_electrical(f: BoundedAffinePermutation) -> bool:
    """Period 2n, bounded by i + 2n - 2, and f(f(i)+1) = i - 1 mod 2n."""
    N = f.period
    if N % 2 != 0:
        return False
    if f.k != N // 2 - 1:
        return False
    for i in range(1, N + 1):
        if not i <= f(i) <= i + N - 2:
            return False
        if (f(f(i) + 1) - (i - 1)) % N != 0:
            return False
    return True


def electrical_to_matching(f: BoundedAffinePermutation) -> Matching:
    """Recover the matching tau with f_tau = f; error if f is not electrical."""
    if not is_electrical(f):
        raise ValueError(f"not an electrical affine permutation: {f}")
    N = f.period
    n = N // 2
    pairs = set()
    for i in range(1, N + 1):
        j = f(i) % N + 1  # partner of i is f(i) + 1 reduced to [N]
        pairs.add(tuple(sorted((i, j))))
    tau = Matching.of(n, pairs)
    if electrical_perm(tau) != f:
        raise ValueError(f"window does not come from a matching: {f}")
    return tau


def length(f: BoundedAffinePermutation) -> int:
    """Inversions (i, j) with i in the window, i < j, f(i) > f(j)."""
    N = f.period
    total = 0
    for i in range(1, N + 1):
        fi = f(i)
        for j in range(i + 1, i + N + 1):
            if fi > f(j):
                total += 1
    return total


def rank_entry(f: BoundedAffinePermutation, i: int, j: int) -> int:
    """Count of a <= i with f(a) >= j (finite since f is bounded)."""
    # a < j - N forces f(a) <= a + N < j, and a >= j forces f(a) >= a >= j
    lo = j - f.period
    if i < lo:
        return 0
    full = max(0, i - j + 1)
    top = min(i, j - 1)
    partial = sum(1 for a in range(lo, top + 1) if f(a) >= j)
    return full + partial


def necklace(f: BoundedAffinePermutation) -> list[frozenset[int]]:
    """For each a in [N], the landing set {f(b) mod N : b < a, f(b) >= a}."""
    N = f.period
    out = []
    for a in range(1, N + 1):
        entries = set()
        for b in range(a - N, a):
            if f(b) >= a:
                entries.add((f(b) - 1) % N + 1)
        out.append(frozenset(entries))
    return out


def dual_necklace(f: BoundedAffinePermutation) -> list[frozenset[int]]:
    """For each b in [N], the launch set {a mod N : a < b, f(a) >= b}."""
    N = f.period
    out = []
    for b in range(1, N + 1):
        entries = set()
        for a in range(b - N, b):
            if f(a) >= b:
                entries.add((a - 1) % N + 1)
        out.append(frozenset(entries))
    return out


def necklaces(f: BoundedAffinePermutation):
    """Both necklaces of f: landing sets and launch sets."""
    return necklace(f), dual_necklace(f)


def perm_of_necklace(neck: list[frozenset[int]]) -> BoundedAffinePermutation:
    """Invert the necklace map; raises if the transitions are inconsistent."""
    N = len(neck)
    window = []
    for a in range(1, N + 1):
        I, J = set(neck[a - 1]), set(neck[a % N])
        if a not in I:
            if I != J:
                raise ValueError("necklace transition broken (expected equality)")
            window.append(a)
            continue
        if I == J:
            window.append(a + N)
            continue
        gained = J - (I - {a})
        lost = (I - {a}) - J
        if len(gained) != 1 or lost:
            raise ValueError("necklace transition broken (expected single exchange)")
        (b,) = gained
        window.append(a + (b - a) % N if (b - a) % N != 0 else a + N)
    return BoundedAffinePermutation.of(window)


def necklace_leq(neck1, neck2, modulus: int) -> bool:
    """Componentwise shifted dominance of two necklaces."""
    return all(
        dominance_leq(I, J, a, modulus)
        for a, (I, J) in enumerate(zip(neck1, neck2), start=1)
    )


def bruhat_leq(f: BoundedAffinePermutation, g: BoundedAffinePermutation) -> bool:
    """Order by componentwise comparison of rank matrices on one period band.

    A redundant necklace comparison guards the band bound; disagreement is an
    internal error.
    """
    if f.period != g.period or f.k != g.k:
        raise ValueError("both permutations must have the same type")
    N = f.period
    by_rank = all(
        rank_entry(f, i, j) <= rank_entry(g, i, j)
        for i in range(1, N + 1)
        for j in range(i - N, i + N + 2)
    )
    by_neck = necklace_leq(necklace(f), necklace(g), N)
    if by_rank != by_neck:
        raise AssertionError(f"rank and necklace orders disagree on {f} vs {g}")
    return by_rank


def matching_leq(tau1: Matching, tau2: Matching) -> bool:
    """tau1 below tau2 in the uncrossing order (dual to Bruhat order)."""
    if tau1.n != tau2.n:
        raise ValueError("matchings must have the same size")
    return bruhat_leq(electrical_perm(tau2), electrical_perm(tau1))


def uncross_covers(tau: Matching) -> list[Matching]:
    """All matchings obtained by resolving one crossing while staying reduced.

    For chords (a, c), (b, d) in cyclic order (a, b, c, d), the resolution
    {(a,d), (b,c)} survives iff no chord joins the open arc (a, b) to (c, d);
    crossing count dropping by exactly one is asserted as a cross-check.
    """
    N = 2 * tau.n
    c0 = crossing_number(tau)
    out = []
    seen = set()
    for (a, c), (b, d) in itertools.combinations(tau.pairs, 2):
        if not in_open_arc(b, a, c, N) != in_open_arc(d, a, c, N):
            continue
        # normalize to cyclic order (a, b, c, d)
        if not in_open_arc(b, a, c, N):
            b, d = d, b
        others = [p for p in tau.pairs if set(p) not in ({a, c}, {b, d})]

        def joins(p, lo1, hi1, lo2, hi2):
            x, y = p
            x_in_1 = in_open_arc(x, lo1, hi1, N)
            y_in_1 = in_open_arc(y, lo1, hi1, N)
            x_in_2 = in_open_arc(x, lo2, hi2, N)
            y_in_2 = in_open_arc(y, lo2, hi2, N)
            return (x_in_1 and y_in_2) or (y_in_1 and x_in_2)

        for resolution, ok in (
            (((a, d), (b, c)), not any(joins(p, a, b, c, d) for p in others)),
            (((a, b), (c, d)), not any(joins(p, b, c, d, a) for p in others)),
        ):
            new_pairs = [p for p in tau.pairs if set(p) not in ({a, c}, {b, d})]
            new_pairs += list(resolution)
            new = Matching.of(tau.n, new_pairs)
            drops_by_one = crossing_number(new) == c0 - 1
            if ok != drops_by_one:
                raise AssertionError(f"arc criterion and crossing count disagree: {tau} -> {new}")
            if ok and new not in seen:
                seen.add(new)
                out.append(new)
    out.sort(key=str)
    return out


def top_matching(n: int) -> Matching:
    """The antipodal matching i <-> i + n."""
    return Matching.of(n, [(i, i + n) for i in range(1, n + 1)])


def necklace_to_json(neck) -> str:
    import json

    return json.dumps(
        [",".join(str(x) for x in sorted(I)) for I in neck], separators=(",", ":")
    )


def hasse_to_dot(n: int) -> str:
    """Graphviz form of the uncrossing order on matchings, edges are covers."""
    from .combinat import enumerate_matchings

    taus = enumerate_matchings(n)
    names = {tau: f"m{i}" for i, tau in enumerate(taus)}
    lines = ["digraph hasse {", "  rankdir=BT;"]
    for tau in taus:
        lines.append(f'  {names[tau]} [label="{tau}",shape=box];')
    for tau in taus:
        for lower in uncross_covers(tau):
            lines.append(f"  {names[lower]} -> {names[tau]};")
    lines.append("}")
    return "\n".join(lines)
