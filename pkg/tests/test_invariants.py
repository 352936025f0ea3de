"""Cross-module invariants tying the strands of the library together."""

import random

from electroid_lab.combinat import dual, dual_inverse, enumerate_matchings
from electroid_lab.corpus import random_network
from electroid_lab.electroid import (
    TransitionError,
    legal_transition,
    partition_necklace,
)
from electroid_lab.affine import electrical_perm, necklace
from electroid_lab.grassmann import (
    boundary_measurements,
    perm_of_point,
    positroid_of,
    trip_permutation,
)
from electroid_lab.medial import medial_pairing
from electroid_lab.network import grove_vector, reduce_local, star_triangle, validate
from electroid_lab.temperley import embed, temperley_graph


def test_trip_equals_point_permutation_on_corpus():
    rng = random.Random(42)
    for n in (2, 3, 4):
        for _ in range(5):
            net, tau = random_network(n, rng, shaped=rng.random() < 0.5)
            T = temperley_graph(net)
            delta = boundary_measurements(T.graph)
            assert trip_permutation(T.graph) == perm_of_point(delta)
            assert perm_of_point(delta) == electrical_perm(tau)


def test_support_equals_positroid_on_corpus():
    rng = random.Random(43)
    for n in (2, 3, 4):
        for _ in range(4):
            net, _ = random_network(n, rng, shaped=rng.random() < 0.5, critical=False)
            delta = embed(grove_vector(net))
            assert delta.support() == positroid_of(perm_of_point(delta))


def test_equivalent_networks_same_embedded_point():
    rng = random.Random(44)
    # star-triangle at an interior degree-3 vertex whenever one exists
    for _ in range(10):
        net, _ = random_network(3, rng, critical=False)
        delta = embed(grove_vector(net))
        assert embed(grove_vector(reduce_local(net))).projectively_equal(delta)
        site = next(
            (
                j
                for j in range(1, net.interior + 1)
                if len(net.rotation[("v", j)]) == 3
                and len(
                    {
                        net.edges[i].endpoint(1 - e)
                        for i, e in net.rotation[("v", j)]
                    }
                )
                == 3
            ),
            None,
        )
        if site is not None:
            swapped = star_triangle(net, site, "ytod")
            validate(swapped)
            assert embed(grove_vector(swapped)).projectively_equal(delta)
            assert medial_pairing(swapped) == medial_pairing(net)


def test_necklace_transition_coherence():
    # the distinguished necklaces repeat their exchanges in the stated pattern:
    # a bar-target step at slot 2a-1 forces a dual-side step later at the
    # target, and a dual-target step forces a bar-side step one slot further
    checked = 0
    for n in (3, 4):
        for tau in enumerate_matchings(n):
            N = 2 * n
            neck = necklace(electrical_perm(tau))
            entries = list(partition_necklace(tau).entries)

            def entry(s):
                return entries[(s - 1) % N]

            for a in range(1, n + 1):
                s = 2 * a - 1
                I, J = neck[s - 1], neck[s % N]
                if s not in I or I == J:
                    continue
                (new,) = set(J) - (set(I) - {s})
                back = n if a == 1 else a - 1
                if new % 2 == 1:  # bar target a'
                    ap = (new + 1) // 2
                    t = 2 * ap
                    try:
                        expect = dual_inverse(
                            legal_transition(dual(entry(t)), ap, back, b_tilde=False)
                        )
                    except TransitionError:
                        continue
                    assert entry(t + 1) == expect, (tau, a)
                    checked += 1
                else:  # dual target a'
                    ap = new // 2
                    t = 2 * ap + 1
                    bar = ap % n + 1
                    try:
                        expect = legal_transition(entry(t), bar, back, b_tilde=True)
                    except TransitionError:
                        continue
                    assert entry(t + 1) == expect, (tau, a)
                    checked += 1
    assert checked > 100


def test_full_pipeline_once_at_n6():
    from electroid_lab.realize import stratum_of_point

    rng = random.Random(56)
    net, tau = random_network(6, rng, steps=7)
    lhs = embed(grove_vector(net))
    rhs = boundary_measurements(temperley_graph(net).graph)
    assert lhs.coords == rhs.coords
    assert stratum_of_point(lhs) == tau == medial_pairing(net)
