"""Subdivision validation, edge combinatorics, and exact kinks."""

from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from tropcoh.lattice import LatticeError, det2, dot, rot90, vsub
from tropcoh.polytope import (
    affine_part,
    convex_hull,
    edge_kink,
    edges,
    edges_by_key,
    euler_characteristic,
    interior_edge_keys,
    interior_vertices,
    lattice_points_in_hull,
    require_valid,
    subdivision,
    validate,
)


def codes(sub):
    return {i.code for i in validate(sub).issues}


P2_POINTS = [(0, 0), (1, 0), (0, 1), (-1, -1)]
P2_TRIS = [(0, 1, 2), (0, 2, 3), (0, 3, 1)]
P2_NU = [0, 1, 1, 1]


class TestValidationCodes:
    def test_clean_input_has_no_issues(self, p2_sub):
        assert validate(p2_sub).ok

    def test_duplicate_point(self):
        sub = subdivision(P2_POINTS + [(1, 0)], P2_TRIS, P2_NU + [1])
        assert "duplicate-point" in codes(sub)

    def test_nu_length(self):
        sub = subdivision(P2_POINTS, P2_TRIS, [0, 1, 1])
        assert "nu-length" in codes(sub)

    def test_bad_triangle_index(self):
        sub = subdivision(P2_POINTS, [(0, 1, 7)], P2_NU)
        assert "bad-triangle" in codes(sub)

    def test_repeated_vertex_in_triangle(self):
        sub = subdivision(P2_POINTS, [(0, 1, 1)], P2_NU)
        assert "bad-triangle" in codes(sub)

    def test_collinear_triangle(self):
        sub = subdivision(
            [(0, 0), (1, 0), (2, 0), (0, 1)], [(0, 1, 2)], [0, 0, 0, 0]
        )
        assert "collinear-triangle" in codes(sub)

    def test_not_elementary(self):
        sub = subdivision(
            [(0, 0), (1, 0), (0, 1), (1, 1)],
            [(0, 1, 3), (0, 3, 2)],
            [0, 1, 1, 0],
        )
        assert validate(sub).ok
        big = subdivision([(0, 0), (2, 0), (0, 1)], [(0, 1, 2)], [0, 0, 0])
        assert "not-elementary" in codes(big)

    def test_degenerate_polytope(self):
        sub = subdivision([(0, 0), (1, 0)], [], [0, 0])
        assert "degenerate-polytope" in codes(sub)

    def test_missing_lattice_point(self):
        # (1, 1) sits in conv{(0,0), (2,0), (0,2)} but is not listed
        sub = subdivision(
            [(0, 0), (1, 0), (2, 0), (0, 1), (0, 2)],
            [(0, 1, 3), (3, 1, 4)],
            [0, 0, 0, 0, 0],
        )
        assert "missing-lattice-point" in codes(sub)

    def test_tiling_mismatch(self):
        sub = subdivision(
            [(0, 0), (1, 0), (0, 1), (1, 1)], [(0, 1, 2), (1, 2, 3), (0, 2, 3)],
            [0, 0, 0, 0],
        )
        assert "tiling" in codes(sub)

    def test_unused_point(self):
        sub = subdivision(
            [(0, 0), (1, 0), (0, 1), (1, 1)], [(0, 1, 2)], [0, 0, 0, 0]
        )
        assert "tiling" in codes(sub)
        assert "unused-point" in codes(sub)

    def test_nu_not_integral(self):
        sub = subdivision(P2_POINTS, P2_TRIS, [0, 1, 1, Fraction(1, 2)])
        assert "nu-not-integral" in codes(sub)

    def test_not_strictly_convex(self):
        sub = subdivision(P2_POINTS, P2_TRIS, [0, 0, 0, 0])
        assert codes(sub) == {"not-strictly-convex"}

    def test_require_valid_raises_with_first_code(self):
        sub = subdivision(P2_POINTS, P2_TRIS, [0, 0, 0, 0])
        with pytest.raises(LatticeError, match="invalid subdivision: not-strictly-convex"):
            require_valid(sub)


def test_edge_classification_on_p2(p2_sub):
    es = edges(p2_sub)
    assert len(es) == 6
    interior = [e for e in es if not e.is_boundary]
    boundary = [e for e in es if e.is_boundary]
    assert len(interior) == 3
    assert len(boundary) == 3
    for e in boundary:
        assert e.minus_triangle is None
    for e in interior:
        # plus triangle sits on the rot90(n_check) side
        tri = p2_sub.triangle_points(e.plus_triangle)
        c = next(p for p in tri if p not in (e.a, e.b))
        assert dot(rot90(e.n_check), vsub(c, e.a)) > 0


def test_interior_edge_keys_are_sorted(blowup_sub):
    keys = interior_edge_keys(blowup_sub)
    assert len(keys) == 4
    assert list(keys) == sorted(keys)
    for a, b in keys:
        assert a < b


def test_affine_part_interpolates(p2_sub):
    for t in range(len(p2_sub.triangles)):
        m, c = affine_part(p2_sub, P2_NU, t)
        for i in p2_sub.triangles[t]:
            p = p2_sub.points[i]
            assert m[0] * p[0] + m[1] * p[1] + c == P2_NU[i]


def test_every_p2_kink_is_three(p2_sub):
    for e in edges(p2_sub):
        if not e.is_boundary:
            assert edge_kink(p2_sub, P2_NU, e) == 3


def test_edge_kink_rejects_boundary_edges(p2_sub):
    e = next(e for e in edges(p2_sub) if e.is_boundary)
    with pytest.raises(LatticeError, match="on the boundary"):
        edge_kink(p2_sub, P2_NU, e)


def test_edge_kink_sign_flips_with_concavity(p2_sub):
    e = next(e for e in edges(p2_sub) if not e.is_boundary)
    neg = [-v for v in P2_NU]
    assert edge_kink(p2_sub, neg, e) == -3


def test_interior_vertices(p2_sub, blowup_sub, a2d3_sub):
    assert interior_vertices(p2_sub) == ((0, 0),)
    assert interior_vertices(blowup_sub) == ((1, 1),)
    assert interior_vertices(a2d3_sub) == ((1, 1), (2, 1))


def test_euler_characteristic_is_one(p2_sub, blowup_sub, a2d3_sub):
    for sub in (p2_sub, blowup_sub, a2d3_sub):
        assert euler_characteristic(sub) == 1


def test_a2d3_edge_counts(a2d3_sub):
    assert len(a2d3_sub.points) == 12
    assert len(a2d3_sub.triangles) == 12
    assert len(interior_edge_keys(a2d3_sub)) == 13


points_strategy = st.lists(
    st.tuples(st.integers(-6, 6), st.integers(-6, 6)), min_size=3, max_size=14
)


@given(points_strategy)
def test_convex_hull_is_convex_and_contains_input(pts):
    hull = convex_hull(pts)
    assert all(p in set(pts) for p in hull)
    n = len(hull)
    if n < 3:
        return
    for i in range(n):
        a, b = hull[i], hull[(i + 1) % n]
        # all points weakly left of each directed hull edge, hull ccw
        for p in pts:
            assert det2(vsub(b, a), vsub(p, a)) >= 0


@given(points_strategy)
def test_lattice_points_in_hull_matches_brute_force(pts):
    hull = convex_hull(pts)
    if len(hull) < 3:
        return
    inside = set(lattice_points_in_hull(hull))
    xs = [p[0] for p in hull]
    ys = [p[1] for p in hull]
    brute = set()
    for x in range(min(xs), max(xs) + 1):
        for y in range(min(ys), max(ys) + 1):
            p = (x, y)
            if all(
                det2(vsub(hull[(i + 1) % len(hull)], hull[i]), vsub(p, hull[i])) >= 0
                for i in range(len(hull))
            ):
                brute.add(p)
    assert inside == brute


def test_edges_by_key_round_trip(blowup_sub):
    by_key = edges_by_key(blowup_sub)
    for e in edges(blowup_sub):
        assert by_key[e.key] is e
