import itertools
import random
from fractions import Fraction

import pytest

from electroid_lab.affine import (
    affine_of_matching,
    electrical_perm,
    necklace,
    shift_identity,
)
from electroid_lab.combinat import Matching, NCPartition, enumerate_nc, matching_of_partition
from electroid_lab.grassmann import (
    BipartiteError,
    PlanarBipartiteGraph,
    almost_perfect_matchings,
    apply_chevalley,
    apply_chi,
    apply_move,
    apply_u,
    boundary_measurements,
    mat_mul,
    perm_of_point,
    plucker_check,
    positroid_of,
    trip_permutation,
    u_matrix,
    validate_bipartite,
    x_matrix,
    y_matrix,
)
from electroid_lab.medial import medial_pairing
from electroid_lab.network import apply_generator, example_five, grove_vector, y_network
from electroid_lab.temperley import concordant_subsets, embed, temperley_graph
from electroid_lab.vectors import PluckerVector

P = NCPartition.parse


def gr24_point():
    # rows (1 0 -1 -2), (0 1 2 3): a real Grassmannian point
    rows = [[1, 0, -1, -2], [0, 1, 2, 3]]
    coords = {}
    for I in itertools.combinations(range(1, 5), 2):
        a, b = I
        coords[I] = Fraction(
            rows[0][a - 1] * rows[1][b - 1] - rows[0][b - 1] * rows[1][a - 1]
        )
    return PluckerVector.of(4, 2, coords)


def test_plucker_check_true_point():
    assert plucker_check(gr24_point())


def test_plucker_check_perturbed():
    coords = gr24_point().as_dict()
    coords[(1, 2)] += 1
    assert not plucker_check(PluckerVector.of(4, 2, coords))


def test_plucker_check_measurements():
    delta = boundary_measurements(temperley_graph(example_five()).graph)
    assert plucker_check(delta)


def test_chi_rotation():
    delta = gr24_point()
    rotated = apply_chi(delta)
    assert rotated[(1, 2)] == delta[(2, 3)]
    assert rotated[(3, 4)] == delta[(4, 1)]
    back = delta
    for _ in range(4):
        back = apply_chi(back)
    assert back.coords == delta.coords
    assert plucker_check(rotated)


def test_chi_preserves_nonnegativity():
    delta = boundary_measurements(temperley_graph(y_network(1, 2, 3)).graph)
    out = apply_chi(delta)
    assert out.is_nonnegative()
    assert plucker_check(out)


def test_chi_on_indicator():
    delta = PluckerVector.of(4, 2, {(1, 2): 1})
    out = apply_chi(delta)
    assert out.support() == {frozenset({2, 3})} or out.support() == {frozenset({4, 1})}


def test_chevalley_identity_and_inverse():
    delta = gr24_point()
    assert apply_chevalley(delta, "x", 2, 0).coords == delta.coords
    forth = apply_chevalley(delta, "x", 2, Fraction(5))
    back = apply_chevalley(forth, "x", 2, Fraction(-5))
    assert back.coords == delta.coords
    forth = apply_chevalley(delta, "y", 3, Fraction(2, 7))
    back = apply_chevalley(forth, "y", 3, Fraction(-2, 7))
    assert back.coords == delta.coords
    wrap = apply_chevalley(delta, "x", 4, Fraction(3))
    unwrap = apply_chevalley(wrap, "x", 4, Fraction(-3))
    assert unwrap.coords == delta.coords


def test_chevalley_preserves_grassmannian():
    delta = gr24_point()
    for kind in ("x", "y"):
        for i in (1, 2, 3, 4):
            assert plucker_check(apply_chevalley(delta, kind, i, Fraction(3, 2)))


def test_u_action_matches_generator_action():
    # adding a boundary spike or edge to the network matches the paired
    # column operation on the embedded point
    for i in (1, 2, 3, 4, 5, 6):
        net = y_network(1, 2, 3)
        a = Fraction(3, 2)
        lhs = embed(grove_vector(apply_generator(net, i, a)))
        rhs = apply_u(embed(grove_vector(net)), i, a)
        assert lhs.projectively_equal(rhs), i


def test_u_matrix_braid_relations():
    rng = random.Random(5)
    m = 8
    for trial in range(25):
        a = Fraction(rng.randrange(1, 9), rng.randrange(1, 9))
        b = Fraction(rng.randrange(1, 9), rng.randrange(1, 9))
        c = Fraction(rng.randrange(1, 9), rng.randrange(1, 9))
        i = rng.randrange(1, m + 1)
        assert mat_mul(u_matrix(m, i, a), u_matrix(m, i, b)) == u_matrix(m, i, a + b)
        j = (i + 2 - 1) % m + 1
        if abs(i - j) >= 2 and abs(i - j) <= m - 2:
            assert mat_mul(u_matrix(m, i, a), u_matrix(m, j, b)) == mat_mul(
                u_matrix(m, j, b), u_matrix(m, i, a)
            )
        for j in (i % m + 1, (i - 2) % m + 1):
            s = a + c + a * b * c
            lhs = mat_mul(
                u_matrix(m, i, a), mat_mul(u_matrix(m, j, b), u_matrix(m, i, c))
            )
            rhs = mat_mul(
                u_matrix(m, j, b * c / s),
                mat_mul(u_matrix(m, i, s), u_matrix(m, j, a * b / s)),
            )
            assert lhs == rhs


def test_xy_commute_as_matrices():
    m = 6
    a = Fraction(7, 3)
    for i in range(1, m + 1):
        j = i - 1 if i > 1 else m
        assert mat_mul(x_matrix(m, i, a), y_matrix(m, j, a)) == mat_mul(
            y_matrix(m, j, a), x_matrix(m, i, a)
        )


def test_trip_top_cell():
    T = temperley_graph(y_network())
    assert trip_permutation(T.graph) == electrical_perm(
        Matching.of(3, [(1, 4), (2, 5), (3, 6)])
    )


def test_perm_of_point_examples():
    # indicator of the concordance set of a partition
    for n in (2, 3, 4):
        for sigma in enumerate_nc(n):
            delta = PluckerVector.of(
                2 * n, n - 1, {I: 1 for I in concordant_subsets(sigma)}
            )
            f = perm_of_point(delta)
            assert f == electrical_perm(matching_of_partition(sigma))


def test_perm_of_point_full_support():
    delta = boundary_measurements(temperley_graph(y_network(1, 2, 3)).graph)
    f = perm_of_point(delta)
    assert f == shift_identity(2, 6)


def test_perm_of_point_example_five():
    net = example_five()
    delta = embed(grove_vector(net))
    assert perm_of_point(delta) == electrical_perm(medial_pairing(net))


def test_perm_of_point_rejects_junk():
    delta = PluckerVector.of(4, 2, {(1, 2): 1, (3, 4): 1})
    with pytest.raises(ValueError):
        perm_of_point(delta)


def test_positroid_top():
    f = shift_identity(2, 6)
    assert positroid_of(f) == {
        frozenset(I) for I in itertools.combinations(range(1, 7), 2)
    }


def test_positroid_small_example():
    from electroid_lab.affine import BoundedAffinePermutation
    from electroid_lab.combinat import dominance_leq

    f = BoundedAffinePermutation.of([2, 4, 6, 5, 7, 9])
    neck = necklace(f)
    expected = {
        frozenset(J)
        for J in itertools.combinations(range(1, 7), 2)
        if all(dominance_leq(I, J, a, 6) for a, I in enumerate(neck, start=1))
    }
    assert positroid_of(f) == expected
    assert frozenset({1, 3}) in expected and frozenset({1, 2}) not in expected


def test_positroid_equals_concordance_set():
    for n in (2, 3, 4, 5):
        for sigma in enumerate_nc(n):
            f = electrical_perm(matching_of_partition(sigma))
            assert positroid_of(f) == {
                frozenset(I) for I in concordant_subsets(sigma)
            }


def test_support_equals_positroid_of_point():
    for net in (y_network(1, 2, 3), example_five()):
        delta = embed(grove_vector(net))
        assert delta.support() == positroid_of(perm_of_point(delta))


def small_square_graph(a, b, c, d):
    # square with two black corners carrying unit legs to interior whites,
    # and white corners wired to boundary 2 and 4
    edges = [
        (("i", 1), ("i", 2), a),  # 0: w_L - b_T
        (("i", 2), ("i", 3), b),  # 1: b_T - w_R
        (("i", 3), ("i", 4), c),  # 2: w_R - b_B
        (("i", 4), ("i", 1), d),  # 3: b_B - w_L
        (("i", 2), ("i", 5), 1),  # 4: leg from b_T
        (("i", 4), ("i", 6), 1),  # 5: leg from b_B
        (("b", 1), ("i", 5), 1),
        (("b", 3), ("i", 6), 1),
        (("b", 2), ("i", 3), 1),
        (("b", 4), ("i", 1), 1),
    ]
    color = {1: "white", 2: "black", 3: "white", 4: "black", 5: "white", 6: "white"}
    rotation = {
        ("i", 1): [(0, 0), (3, 1), (9, 1)],
        ("i", 2): [(0, 1), (4, 0), (1, 0)],
        ("i", 3): [(1, 1), (8, 1), (2, 0)],
        ("i", 4): [(2, 1), (5, 0), (3, 0)],
        ("i", 5): [(4, 1), (6, 1)],
        ("i", 6): [(5, 1), (7, 1)],
        ("b", 1): [(6, 0)],
        ("b", 2): [(8, 0)],
        ("b", 3): [(7, 0)],
        ("b", 4): [(9, 0)],
    }
    return PlanarBipartiteGraph(4, 6, color, tuple(edges), rotation)


def test_square_move_preserves_measurements():
    a, b, c, d = Fraction(2), Fraction(3), Fraction(5), Fraction(7)
    N = small_square_graph(a, b, c, d)
    validate_bipartite(N)
    before = boundary_measurements(N)
    after_graph = apply_move(N, "M1", (0, 1, 2, 3))
    validate_bipartite(after_graph)
    after = boundary_measurements(after_graph)
    assert before.projectively_equal(after)
    # the transformed square weights are the stated quotients
    denom = a * c + b * d
    ws = sorted(e.w for e in after_graph.edges if e.w not in (1,))
    assert ws == sorted([a / denom, b / denom, c / denom, d / denom])


def test_parallel_merge_move():
    edges = [
        (("i", 1), ("i", 2), 2),
        (("i", 1), ("i", 2), 3),
        (("b", 1), ("i", 1), 1),
        (("b", 2), ("i", 2), 1),
    ]
    color = {1: "black", 2: "white"}
    rotation = {
        ("i", 1): [(0, 0), (1, 0), (2, 1)],
        ("i", 2): [(1, 1), (0, 1), (3, 1)],
        ("b", 1): [(2, 0)],
        ("b", 2): [(3, 0)],
    }
    N = PlanarBipartiteGraph(2, 2, color, tuple(edges), rotation)
    before = boundary_measurements(N)
    after = apply_move(N, "R1", (0, 1))
    assert boundary_measurements(after).projectively_equal(before)
    assert len(after.edges) == 3


def test_valent_two_removal_boundary_flip():
    # path: boundary 1 - white w - black b - boundary 2; removing w flips 1
    edges = [
        (("b", 1), ("i", 1), 2),
        (("i", 1), ("i", 2), 3),
        (("b", 2), ("i", 2), 1),
    ]
    color = {1: "white", 2: "black"}
    rotation = {
        ("i", 1): [(0, 1), (1, 0)],
        ("i", 2): [(1, 1), (2, 1)],
        ("b", 1): [(0, 0)],
        ("b", 2): [(2, 0)],
    }
    N = PlanarBipartiteGraph(2, 2, color, tuple(edges), rotation)
    before = boundary_measurements(N)
    assert N.boundary_color(1) == "black"
    after = apply_move(N, "M2", 1)
    validate_bipartite(after)
    assert after.boundary_color(1) == "white"
    assert boundary_measurements(after).projectively_equal(before)


def test_dipole_removal():
    edges = [
        (("i", 1), ("i", 2), 5),
        (("b", 1), ("i", 3), 1),
        (("b", 2), ("i", 4), 1),
        (("i", 3), ("i", 4), 2),
    ]
    color = {1: "black", 2: "white", 3: "black", 4: "white"}
    rotation = {
        ("i", 1): [(0, 0)],
        ("i", 2): [(0, 1)],
        ("i", 3): [(1, 1), (3, 0)],
        ("i", 4): [(2, 1), (3, 1)],
        ("b", 1): [(1, 0)],
        ("b", 2): [(2, 0)],
    }
    N = PlanarBipartiteGraph(2, 4, color, tuple(edges), rotation)
    before = boundary_measurements(N)
    after = apply_move(N, "R3", 0)
    assert after.interior == 2
    assert boundary_measurements(after).projectively_equal(before)


def test_no_matching_error():
    edges = [(("b", 1), ("i", 1), 1), (("b", 2), ("i", 2), 1)]
    color = {1: "black", 2: "black", 3: "black"}
    rotation = {
        ("i", 1): [(0, 1)],
        ("i", 2): [(1, 1)],
        ("b", 1): [(0, 0)],
        ("b", 2): [(1, 0)],
    }
    N = PlanarBipartiteGraph(2, 3, color, tuple(edges), rotation)
    with pytest.raises(BipartiteError):
        boundary_measurements(N)


def test_leaf_removal_move():
    # interior leaf v-u; u also carries a boundary edge, which survives as a
    # fresh pendant of the leaf's color
    edges = [
        (("i", 1), ("i", 2), 5),  # leaf edge v-u
        (("b", 1), ("i", 2), 1),  # boundary edge at u
        (("i", 2), ("i", 3), 2),  # interior edge at u
        (("i", 3), ("i", 4), 3),
        (("b", 2), ("i", 4), 1),
    ]
    color = {1: "white", 2: "black", 3: "white", 4: "black"}
    rotation = {
        ("i", 1): [(0, 0)],
        ("i", 2): [(0, 1), (1, 1), (2, 0)],
        ("i", 3): [(2, 1), (3, 0)],
        ("i", 4): [(3, 1), (4, 1)],
        ("b", 1): [(1, 0)],
        ("b", 2): [(4, 0)],
    }
    N = PlanarBipartiteGraph(2, 4, color, tuple(edges), rotation)
    validate_bipartite(N)
    before = boundary_measurements(N)
    after = apply_move(N, "R2", 1)
    validate_bipartite(after)
    assert boundary_measurements(after).projectively_equal(before)
    # b1 now hangs off a fresh leaf carrying the removed leaf's color
    assert after.interior == 3
    assert after.boundary_color(1) == "black"


def test_trip_leaf_rules():
    # a black leaf bounces a trip to a fixed point, a white leaf to i + m
    edges = [
        (("b", 1), ("i", 1), 1),
        (("b", 2), ("i", 2), 1),
        (("i", 2), ("i", 3), 1),
        (("b", 3), ("i", 3), 1),
        (("b", 4), ("i", 4), 1),
    ]
    color = {1: "black", 2: "black", 3: "white", 4: "white"}
    rotation = {
        ("i", 1): [(0, 1)],
        ("i", 2): [(1, 1), (2, 0)],
        ("i", 3): [(2, 1), (3, 1)],
        ("i", 4): [(4, 1)],
        ("b", 1): [(0, 0)],
        ("b", 2): [(1, 0)],
        ("b", 3): [(3, 0)],
        ("b", 4): [(4, 0)],
    }
    N = PlanarBipartiteGraph(4, 4, color, tuple(edges), rotation)
    validate_bipartite(N)
    f = trip_permutation(N)
    assert f(1) == 1  # black leaf
    assert f(2) == 3 and f(3) == 2 + 4
    assert f(4) == 4 + 4  # white leaf
