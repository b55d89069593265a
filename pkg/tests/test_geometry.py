import itertools

import pytest
from hypothesis import example, given, settings
from hypothesis import strategies as st

from gtoric.geometry import (AffineMap, EmptyInputError, affine_automorphism_group,
                             apply, convex_hull, cross, format_points, lattice_points,
                             read_points, translate_to_origin)

from oracles import automorphisms_bruteforce, extreme_points

point_sets = st.sets(st.tuples(st.integers(0, 6), st.integers(0, 6)), min_size=1, max_size=14)


def test_hull_examples():
    assert convex_hull([(0, 0), (2, 0), (0, 2), (1, 1)]).vertices == ((0, 0), (2, 0), (0, 2))
    assert convex_hull([(0, 0), (1, 1), (3, 3)]).vertices == ((0, 0), (3, 3))
    assert convex_hull([(4, 4)]).vertices == ((4, 4),)
    with pytest.raises(EmptyInputError):
        convex_hull([])


@given(point_sets)
@settings(max_examples=300, deadline=None)
def test_hull_vertices_are_extreme_points(S):
    P = convex_hull(S)
    assert set(P.vertices) == extreme_points(S)
    assert P.vertices[0] == min(P.vertices)
    if len(P.vertices) >= 3:
        for (a, b), (_, c) in zip(P.edges(), P.edges()[1:] + P.edges()[:1]):
            assert cross(a, b, c) > 0
    assert all(P.contains(p) for p in S)


@given(point_sets)
@settings(max_examples=200, deadline=None)
def test_lattice_points_bruteforce(S):
    P = convex_hull(S)
    brute = set()
    for p in itertools.product(range(0, 7), repeat=2):
        # p lies in P exactly when adding it leaves the vertex set unchanged
        if set(convex_hull(list(P.vertices) + [p]).vertices) == set(P.vertices):
            brute.add(p)
    assert set(lattice_points(P)) == brute


def test_lattice_point_counts():
    assert len(lattice_points(convex_hull([(0, 0), (2, 0), (0, 2), (2, 2)]))) == 9
    assert len(lattice_points(convex_hull([(0, 0), (1, 0), (0, 1)]))) == 3
    assert len(lattice_points(convex_hull([(0, 0), (5, 0), (0, 5), (5, 5)]))) == 36


def test_affine_map_validation():
    with pytest.raises(ValueError):
        AffineMap(2, 0, 0, 1, 0, 0)
    g = AffineMap(1, 1, 0, 1, 2, -1)
    assert g.inverse().compose(g) == AffineMap.identity()
    assert g.compose(g.inverse()) == AffineMap.identity()
    assert g((1, 2)) == (5, 1)


def test_apply_examples():
    assert apply(AffineMap(0, 1, 1, 0, 0, 0), [(1, 0), (0, 0)]) == frozenset({(0, 1), (0, 0)})
    assert translate_to_origin([(3, 5), (4, 7)]) == ((0, 0), (1, 2))


@pytest.mark.parametrize("verts,order", [
    ([(0, 0), (1, 0), (0, 1), (1, 1)], 8),
    ([(0, 0), (2, 0), (0, 2), (2, 2)], 8),
    ([(0, 0), (1, 0), (0, 1)], 6),
    ([(0, 0), (2, 0), (0, 1)], 2),
    ([(1, 0), (2, 0), (2, 1), (1, 2), (0, 2), (0, 1)], 12),
    ([(0, 0), (3, 0)], 2),
    ([(1, 1)], 1),
])
def test_automorphism_group_orders(verts, order):
    assert affine_automorphism_group(convex_hull(verts)).order == order


@given(st.sets(st.tuples(st.integers(0, 3), st.integers(0, 3)), min_size=3, max_size=10))
@example({(0, 1), (1, 1), (3, 0)})
@settings(max_examples=60, deadline=None)
def test_automorphism_group_bruteforce(S):
    P = convex_hull(S)
    if P.dim < 2:
        return
    G = affine_automorphism_group(P)
    brute = automorphisms_bruteforce(lattice_points(P))
    assert set(G.elements) == set(brute)
    # closure and faithfulness
    for g, h in itertools.product(G.elements, repeat=2):
        assert g.compose(h) in G.elements
    assert len({tuple(p) for p in G.perm.tolist()}) == G.order


def test_read_points(tmp_path):
    p = tmp_path / "s.pts"
    p.write_text("# comment\n0 0\n\n1,2\n 3  4 \n")
    assert read_points(p) == [(0, 0), (1, 2), (3, 4)]
    assert read_points(p) == [tuple(map(int, l.split())) for l in format_points(read_points(p)).splitlines()]
    p.write_text("0 0\n1\n")
    with pytest.raises(ValueError, match=":2:"):
        read_points(p)


def test_apply_spec_examples():
    S = {(0, 0), (1, 0), (0, 1)}
    assert apply(AffineMap.identity(), S) == S
    assert apply(AffineMap(1, 1, 0, 1, 0, 0), S) == {(0, 0), (1, 0), (1, 1)}
    sq = set(lattice_points(convex_hull([(0, 0), (2, 0), (0, 2), (2, 2)])))
    assert apply(AffineMap(0, -1, 1, 0, 2, 0), sq) == sq
