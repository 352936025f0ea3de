"""Reproducible random networks and matchings for the verification suites."""

from __future__ import annotations

import random
from fractions import Fraction

from .combinat import Matching, NCPartition, enumerate_nc, matching_of_partition
from .network import apply_generator, hollow_cactus


def random_matching(n: int, rng: random.Random) -> Matching:
    """Uniform matching by sequential pairing of the least unmatched slot."""
    slots = list(range(1, 2 * n + 1))
    pairs = []
    while slots:
        a = slots.pop(0)
        b = slots.pop(rng.randrange(len(slots)))
        pairs.append((a, b))
    return Matching.of(n, pairs)


def random_weight(rng: random.Random) -> Fraction:
    return Fraction(rng.randrange(1, 10), rng.randrange(1, 10))


def random_network(
    n: int,
    rng: random.Random,
    steps: int | None = None,
    shaped: bool = False,
    critical: bool = True,
):
    """A random network built by boundary generators, with its medial pairing.

    When critical, a generator is applied only if it crosses two distinct
    strands that do not already cross, so the pairing is tracked exactly and
    the network stays reduced.
    """
    N = 2 * n
    if shaped:
        sigmas = enumerate_nc(n)
        sigma = sigmas[rng.randrange(len(sigmas))]
    else:
        sigma = NCPartition.of(n, [[i] for i in range(1, n + 1)])
    net = hollow_cactus(sigma)
    tau = matching_of_partition(sigma)
    if steps is None:
        steps = rng.randrange(1, 2 * n + 2)
    applied = 0
    attempts = 0
    while applied < steps and attempts < 20 * steps + 40:
        attempts += 1
        i = rng.randrange(1, N + 1)
        j = i % N + 1
        partner = tau.partner_map()
        if critical and (partner[i] == j or tau.chords_cross(i, j)):
            continue
        t = random_weight(rng)
        net = apply_generator(net, i, t)
        if partner[i] != j:
            swap = {i: j, j: i}
            tau = Matching.of(
                n, [(swap.get(a, a), swap.get(b, b)) for a, b in tau.pairs]
            )
        applied += 1
    return net, tau
