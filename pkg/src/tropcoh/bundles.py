"""Integral support functions, kink vectors, and the region balancing map.

A kink vector assigns an integer to each interior subdivision edge
(equivalently, to each bounded edge of the dual curve).  Vectors in the
kernel of the balancing map are exactly the realizable ones.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Mapping

from .fan import make_fan, self_intersections
from .lattice import LatticeError, Vec, dot, integer_kernel, rot90, vsub
from .polytope import (
    EdgeKey,
    Subdivision,
    SubdivisionEdge,
    affine_part,
    edge_kink,
    edges,
    edges_by_key,
    interior_edge_keys,
    require_valid,
)
from .tropical import BoundedRegion, TropicalCurve, bounded_regions

KinkVector = Mapping[EdgeKey, int]


@dataclass(frozen=True)
class SupportFunction:
    sub: Subdivision
    values: tuple[int, ...]

    def value_at(self, p: Vec) -> int:
        return self.values[self.sub.points.index(tuple(p))]

    def affine_parts(self):
        """Per-triangle (linear part, constant); both are integral."""
        out = []
        for t in range(len(self.sub.triangles)):
            m, c = affine_part(self.sub, self.values, t)
            out.append(((int(m[0]), int(m[1])), int(c)))
        return tuple(out)


def support_function(sub: Subdivision, values) -> SupportFunction:
    require_valid(sub)
    if isinstance(values, Mapping):
        vals = tuple(values[p] for p in sub.points)
    else:
        vals = tuple(values)
    if len(vals) != len(sub.points):
        raise LatticeError("one value per lattice point required")
    if any(v != int(v) for v in vals):
        raise LatticeError("support function values must be integers")
    return SupportFunction(sub, tuple(int(v) for v in vals))


def kinks(phi: SupportFunction) -> dict[EdgeKey, int]:
    out = {}
    for e in edges(phi.sub):
        if e.is_boundary:
            continue
        k = edge_kink(phi.sub, phi.values, e)
        assert k.denominator == 1
        out[e.key] = int(k)
    return out


def _kink_entry(K: KinkVector, key: EdgeKey) -> int:
    # sparse vectors are allowed; absent edges carry no kink
    return int(K.get(key, 0)) if isinstance(K, Mapping) else int(K[key])


@dataclass(frozen=True)
class PhiMap:
    """Matrix of the per-region balancing sums, two rows per bounded region."""

    edge_order: tuple[EdgeKey, ...]
    region_vertices: tuple[Vec, ...]
    matrix: tuple[tuple[int, ...], ...]

    def apply(self, K: KinkVector) -> tuple[int, ...]:
        vec = [_kink_entry(K, key) for key in self.edge_order]
        return tuple(sum(r * v for r, v in zip(row, vec)) for row in self.matrix)

    def kernel_vectors(self) -> tuple[tuple[int, ...], ...]:
        return integer_kernel(self.matrix, ncols=len(self.edge_order))


def phi_map(curve: TropicalCurve) -> PhiMap:
    order = interior_edge_keys(curve.sub)
    col = {key: i for i, key in enumerate(order)}
    by_key = curve.bounded_by_key()
    rows = []
    verts = []
    for region in bounded_regions(curve):
        verts.append(region.dual_vertex)
        rx = [0] * len(order)
        ry = [0] * len(order)
        for key, eps in zip(region.edge_keys, region.epsilons):
            n = by_key[key].n_e
            rx[col[key]] += eps * n[0]
            ry[col[key]] += eps * n[1]
        rows.append(tuple(rx))
        rows.append(tuple(ry))
    return PhiMap(order, tuple(verts), tuple(rows))


def picard_basis(curve: TropicalCurve) -> list[dict[EdgeKey, int]]:
    phi = phi_map(curve)
    return [dict(zip(phi.edge_order, v)) for v in phi.kernel_vectors()]


def _check_cocycle(curve: TropicalCurve, K: KinkVector) -> None:
    by_key = curve.bounded_by_key()
    for region in bounded_regions(curve):
        sx = sy = 0
        for key, eps in zip(region.edge_keys, region.epsilons):
            k = _kink_entry(K, key)
            n = by_key[key].n_e
            sx += eps * k * n[0]
            sy += eps * k * n[1]
        if (sx, sy) != (0, 0):
            raise LatticeError(
                f"not a cocycle: inconsistent around region {region.dual_vertex}"
            )


def support_from_kinks(K: KinkVector, sub: Subdivision) -> SupportFunction:
    require_valid(sub)
    from .tropical import tropical_curve

    _check_cocycle(tropical_curve(sub), K)

    base = min(range(len(sub.triangles)), key=lambda t: tuple(sorted(sub.triangle_points(t))))
    parts: dict[int, tuple[Vec, int]] = {base: ((0, 0), 0)}
    queue = [base]
    adjacent: dict[int, list[SubdivisionEdge]] = {}
    for e in edges(sub):
        if e.is_boundary:
            continue
        adjacent.setdefault(e.plus_triangle, []).append(e)
        adjacent.setdefault(e.minus_triangle, []).append(e)
    while queue:
        t = queue.pop(0)
        m, c = parts[t]
        for e in adjacent.get(t, []):
            k = _kink_entry(K, e.key)
            n_e = rot90(e.n_check)
            if t == e.plus_triangle:
                other = e.minus_triangle
                m2 = (m[0] - k * n_e[0], m[1] - k * n_e[1])
            else:
                other = e.plus_triangle
                m2 = (m[0] + k * n_e[0], m[1] + k * n_e[1])
            c2 = c + dot(vsub(m, m2), e.a)
            if other in parts:
                assert parts[other] == (m2, c2), "cocycle check missed an inconsistency"
            else:
                parts[other] = (m2, c2)
                queue.append(other)
    assert len(parts) == len(sub.triangles)

    values = [None] * len(sub.points)
    for t, (i0, i1, i2) in enumerate(sub.triangles):
        m, c = parts[t]
        for i in (i0, i1, i2):
            v = dot(m, sub.points[i]) + c
            if values[i] is None:
                values[i] = v
            else:
                assert values[i] == v
    return SupportFunction(sub, tuple(values))


def canonical_KC(region: BoundedRegion) -> dict[EdgeKey, int]:
    """Kink vector of the canonical class of the region's compact surface."""
    curve = region.curve
    b = self_intersections(make_fan(region.fan_rays))
    out = {key: 0 for key in interior_edge_keys(curve.sub)}
    for j, key in enumerate(region.edge_keys):
        out[key] = -b[j] - 2
    boundary = set(region.edge_keys)
    cycle_pts = set(region.cycle)
    for be in curve.bounded:
        if be.key in boundary:
            continue
        if be.p_plus in cycle_pts or be.p_minus in cycle_pts:
            out[be.key] = 1
    residue = phi_map(curve).apply(out)
    assert all(r == 0 for r in residue), "canonical kink vector is not balanced"
    return out


def restriction_degree(K: KinkVector, edge: SubdivisionEdge) -> int:
    """Twist of the bundle along the projective line dual to an interior edge."""
    if edge.is_boundary:
        raise LatticeError("no compact curve")
    return _kink_entry(K, edge.key)


def hms_line_bundle(K: KinkVector) -> dict[EdgeKey, int]:
    """Kink vector of the line bundle mirror to the section of K."""
    return {key: -_kink_entry(K, key) for key in K}
