"""Kink vectors, the balancing map, and canonical classes."""

import pytest

from tropcoh.bundles import (
    canonical_KC,
    hms_line_bundle,
    kinks,
    phi_map,
    picard_basis,
    restriction_degree,
    support_from_kinks,
    support_function,
)
from tropcoh.examples import a2d_subdivision
from tropcoh.lattice import LatticeError
from tropcoh.polytope import edges, interior_edge_keys
from tropcoh.tropical import tropical_curve


def test_support_function_accepts_mapping(p2_sub):
    by_point = {p: v for p, v in zip(p2_sub.points, (0, 1, 1, 1))}
    phi = support_function(p2_sub, by_point)
    assert phi.values == (0, 1, 1, 1)
    assert phi.value_at((-1, -1)) == 1


def test_support_function_length_check(p2_sub):
    with pytest.raises(LatticeError, match="one value per lattice point"):
        support_function(p2_sub, (0, 1, 1))


def test_support_function_integrality_check(p2_sub):
    with pytest.raises(LatticeError, match="must be integers"):
        support_function(p2_sub, (0, 1, 1, 1.5))


def test_affine_parts_are_integral(blowup_sub):
    phi = support_function(blowup_sub, (1, 1, 1, 1, 0))
    for (m, c), tri in zip(phi.affine_parts(), blowup_sub.triangles):
        for i in tri:
            p = blowup_sub.points[i]
            assert m[0] * p[0] + m[1] * p[1] + c == phi.values[i]


def test_p2_nu_kinks_are_three(p2_sub):
    phi = support_function(p2_sub, (0, 1, 1, 1))
    K = kinks(phi)
    assert set(K.values()) == {3}
    assert set(K) == set(interior_edge_keys(p2_sub))


def test_kinks_then_support_round_trip(p2_sub, blowup_sub, a2d3_sub):
    for sub, values in (
        (p2_sub, (0, 1, 1, 1)),
        (blowup_sub, (1, 1, 1, 1, 0)),
        (a2d3_sub, tuple(int(v) for v in a2d_subdivision(3).nu)),
    ):
        K = kinks(support_function(sub, values))
        phi = support_from_kinks(K, sub)
        assert kinks(phi) == K


def test_support_from_kinks_rejects_unbalanced(blowup_sub):
    key = interior_edge_keys(blowup_sub)[0]
    with pytest.raises(LatticeError, match=r"not a cocycle.*\(1, 1\)"):
        support_from_kinks({key: 1}, blowup_sub)


def test_phi_map_shape(p2_curve, blowup_curve):
    phi = phi_map(p2_curve)
    assert len(phi.matrix) == 2
    assert len(phi.edge_order) == 3
    assert phi.region_vertices == ((0, 0),)
    phi2 = phi_map(blowup_curve)
    assert len(phi2.matrix) == 2
    assert len(phi2.edge_order) == 4


def test_phi_kernel_rank_p2(p2_curve):
    basis = picard_basis(p2_curve)
    assert len(basis) == 1
    vec = basis[0]
    assert sorted(abs(v) for v in vec.values()) == [1, 1, 1]
    assert len(set(vec.values())) == 1


@pytest.mark.parametrize("d, rank", [(2, 6), (3, 9), (4, 12)])
def test_phi_kernel_rank_a2d(d, rank):
    curve = tropical_curve(a2d_subdivision(d))
    assert len(picard_basis(curve)) == rank


def test_kernel_vectors_annihilate(blowup_curve):
    phi = phi_map(blowup_curve)
    for vec in phi.kernel_vectors():
        K = dict(zip(phi.edge_order, vec))
        assert phi.apply(K) == (0, 0)


def test_canonical_KC_p2(p2_region):
    K = canonical_KC(p2_region)
    assert set(K.values()) == {-3}


def test_canonical_KC_blowup(blowup_region):
    K = canonical_KC(blowup_region)
    per_edge = tuple(K[key] for key in blowup_region.edge_keys)
    assert per_edge == (-2, -1, -2, -3)


def test_canonical_KC_a2d_legs(a2d3_regions):
    # edges leaving the region cycle but not on it carry kink one
    for region in a2d3_regions:
        K = canonical_KC(region)
        off_cycle = [v for key, v in K.items() if key not in region.edge_keys]
        assert 1 in off_cycle
        assert set(off_cycle) <= {0, 1}


def test_canonical_KC_is_balanced(a2d3_regions):
    curve = a2d3_regions[0].curve
    phi = phi_map(curve)
    for region in a2d3_regions:
        assert all(x == 0 for x in phi.apply(canonical_KC(region)))


def test_restriction_degree(blowup_sub, blowup_region):
    K = canonical_KC(blowup_region)
    interior = [e for e in edges(blowup_sub) if not e.is_boundary]
    for e in interior:
        assert restriction_degree(K, e) == K[e.key]
    boundary = next(e for e in edges(blowup_sub) if e.is_boundary)
    with pytest.raises(LatticeError, match="no compact curve"):
        restriction_degree(K, boundary)


def test_hms_line_bundle_negates(blowup_region):
    K = canonical_KC(blowup_region)
    mirror = hms_line_bundle(K)
    assert set(mirror) == set(K)
    assert all(mirror[k] == -K[k] for k in K)
