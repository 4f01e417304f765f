"""Subdivided lattice polygons: validation, interior vertices, edges, kinks.

The input datum is a convex lattice polygon P together with a triangulation
into elementary triangles and an integral strictly convex function nu on the
lattice points.  All derived combinatorics (edge labels, affine parts, kinks)
are exact.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Iterable, Sequence

from .lattice import (
    LatticeError,
    QVec,
    Vec,
    det2,
    dot,
    primitive,
    rot90,
    solve_dual,
    vsub,
)

EdgeKey = tuple[Vec, Vec]  # endpoints sorted lexicographically


@dataclass(frozen=True)
class Subdivision:
    points: tuple[Vec, ...]
    triangles: tuple[tuple[int, int, int], ...]
    nu: tuple[Fraction | int, ...]

    def triangle_points(self, t: int) -> tuple[Vec, Vec, Vec]:
        i, j, k = self.triangles[t]
        return (self.points[i], self.points[j], self.points[k])


def subdivision(points: Iterable, triangles: Iterable, nu: Iterable) -> Subdivision:
    pts = tuple((int(p[0]), int(p[1])) for p in points)
    tris = tuple(tuple(int(i) for i in t) for t in triangles)
    vals = tuple(v if isinstance(v, Fraction) else Fraction(v) for v in nu)
    if any(len(t) != 3 for t in tris):
        raise LatticeError("triangles must have three vertices")
    return Subdivision(pts, tris, vals)


@dataclass(frozen=True)
class ValidationIssue:
    code: str
    message: str


@dataclass(frozen=True)
class ValidationReport:
    issues: tuple[ValidationIssue, ...]

    @property
    def ok(self) -> bool:
        return not self.issues


@dataclass(frozen=True)
class SubdivisionEdge:
    a: Vec
    b: Vec
    n_check: Vec
    is_boundary: bool
    plus_triangle: int | None
    minus_triangle: int | None

    @property
    def key(self) -> EdgeKey:
        return (self.a, self.b)


def convex_hull(points: Sequence[Vec]) -> list[Vec]:
    """Counterclockwise hull (monotone chain), collinear points dropped."""
    pts = sorted(set(points))
    if len(pts) <= 2:
        return pts

    def build(seq):
        out: list[Vec] = []
        for p in seq:
            while len(out) >= 2 and det2(vsub(out[-1], out[-2]), vsub(p, out[-2])) <= 0:
                out.pop()
            out.append(p)
        return out

    lower = build(pts)
    upper = build(reversed(pts))
    return lower[:-1] + upper[:-1]


def _hull_sides(hull: Sequence[Vec]) -> list[tuple[Vec, Vec]]:
    return [(hull[i], hull[(i + 1) % len(hull)]) for i in range(len(hull))]


def _on_segment(p: Vec, a: Vec, b: Vec) -> bool:
    if det2(vsub(b, a), vsub(p, a)) != 0:
        return False
    return min(a[0], b[0]) <= p[0] <= max(a[0], b[0]) and min(a[1], b[1]) <= p[1] <= max(a[1], b[1])


def lattice_points_in_hull(hull: Sequence[Vec]) -> list[Vec]:
    xs = [p[0] for p in hull]
    ys = [p[1] for p in hull]
    sides = _hull_sides(hull)
    found = []
    for x in range(min(xs), max(xs) + 1):
        for y in range(min(ys), max(ys) + 1):
            p = (x, y)
            if all(det2(vsub(b, a), vsub(p, a)) >= 0 for a, b in sides):
                found.append(p)
    return found


def _boundary_point(p: Vec, hull: Sequence[Vec]) -> bool:
    return any(_on_segment(p, a, b) for a, b in _hull_sides(hull))


def validate(sub: Subdivision) -> ValidationReport:
    """Check every structural invariant; failures are reported, not raised."""
    issues: list[ValidationIssue] = []

    def bad(code: str, message: str) -> None:
        issues.append(ValidationIssue(code, message))

    seen: dict[Vec, int] = {}
    for i, p in enumerate(sub.points):
        if p in seen:
            bad("duplicate-point", f"point {p} listed at indices {seen[p]} and {i}")
        seen[p] = i
    if len(sub.nu) != len(sub.points):
        bad("nu-length", f"{len(sub.nu)} nu values for {len(sub.points)} points")
    for t, tri in enumerate(sub.triangles):
        if len(set(tri)) != 3 or any(i < 0 or i >= len(sub.points) for i in tri):
            bad("bad-triangle", f"triangle {t} has invalid vertex indices {tri}")
    if issues:
        return ValidationReport(tuple(issues))

    degenerate = False
    for t in range(len(sub.triangles)):
        v0, v1, v2 = sub.triangle_points(t)
        d = det2(vsub(v1, v0), vsub(v2, v0))
        if d == 0:
            bad("collinear-triangle", f"triangle {t} with vertices {v0}, {v1}, {v2} is collinear")
            degenerate = True
        elif abs(d) != 1:
            bad(
                "not-elementary",
                f"triangle {t} with vertices {v0}, {v1}, {v2} has normalized area {abs(d)}",
            )
    if degenerate:
        return ValidationReport(tuple(issues))

    hull = convex_hull(sub.points)
    if len(hull) < 3:
        bad("degenerate-polytope", "points do not span a two-dimensional polygon")
        return ValidationReport(tuple(issues))
    expected = set(lattice_points_in_hull(hull))
    have = set(sub.points)
    for p in sorted(expected - have):
        bad("missing-lattice-point", f"lattice point {p} of P is not listed")
    for p in sorted(have - expected):
        bad("point-outside", f"point {p} lies outside P")

    area2 = sum(
        det2(vsub(hull[i], hull[0]), vsub(hull[i + 1], hull[0])) for i in range(1, len(hull) - 1)
    )
    total = sum(
        abs(det2(vsub(t[1], t[0]), vsub(t[2], t[0])))
        for t in (sub.triangle_points(i) for i in range(len(sub.triangles)))
    )
    if total != area2:
        bad("tiling", f"triangles cover normalized area {total}, polygon has {area2}")

    used = {i for tri in sub.triangles for i in tri}
    for i, p in enumerate(sub.points):
        if i not in used:
            bad("unused-point", f"lattice point {p} is not a vertex of any triangle")

    edge_count: dict[EdgeKey, list[int]] = {}
    for t, tri in enumerate(sub.triangles):
        for u, v in ((0, 1), (1, 2), (2, 0)):
            key = tuple(sorted((sub.points[tri[u]], sub.points[tri[v]])))
            edge_count.setdefault(key, []).append(t)
    for key, ts in sorted(edge_count.items()):
        if len(ts) > 2:
            bad("nonmanifold-edge", f"edge {key} lies in {len(ts)} triangles")
        elif len(ts) == 1 and not (
            _boundary_point(key[0], hull) and _boundary_point(key[1], hull)
        ):
            bad("dangling-edge", f"edge {key} lies in one triangle but is not on the boundary")

    for i, v in enumerate(sub.nu):
        if Fraction(v).denominator != 1:
            bad("nu-not-integral", f"nu({sub.points[i]}) = {v} is not an integer")

    if not issues:
        for e in edges(sub):
            if e.is_boundary:
                continue
            k = edge_kink(sub, sub.nu, e)
            if k <= 0:
                bad(
                    "not-strictly-convex",
                    f"nu has kink {k} across interior edge ({e.a}, {e.b})",
                )
    return ValidationReport(tuple(issues))


def require_valid(sub: Subdivision) -> None:
    report = validate(sub)
    if not report.ok:
        first = report.issues[0]
        raise LatticeError(f"invalid subdivision: {first.code}: {first.message}")


@lru_cache(maxsize=None)
def interior_vertices(sub: Subdivision) -> tuple[Vec, ...]:
    """Lattice points of P not on its boundary, lexicographically sorted."""
    require_valid(sub)
    hull = convex_hull(sub.points)
    return tuple(sorted(p for p in sub.points if not _boundary_point(p, hull)))


@lru_cache(maxsize=None)
def edges(sub: Subdivision) -> tuple[SubdivisionEdge, ...]:
    """Every triangle edge once, with canonical tangent and side labels.

    The tangent n_check is the lexicographically positive primitive direction.
    For an interior edge the plus triangle is the one whose opposite vertex c
    has dot(rot90(n_check), c - a) > 0; the dual tropical edge then runs from
    the plus vertex to the minus vertex along rot90(n_check).
    """
    by_key: dict[EdgeKey, list[int]] = {}
    for t, tri in enumerate(sub.triangles):
        for u, v in ((0, 1), (1, 2), (2, 0)):
            key = tuple(sorted((sub.points[tri[u]], sub.points[tri[v]])))
            by_key.setdefault(key, []).append(t)

    out = []
    for key in sorted(by_key):
        a, b = key
        tris = by_key[key]
        n_check = primitive(vsub(b, a))
        if len(tris) == 1:
            out.append(SubdivisionEdge(a, b, n_check, True, tris[0], None))
            continue
        n_e = rot90(n_check)
        plus = minus = None
        for t in tris:
            c = next(p for p in sub.triangle_points(t) if p not in key)
            if dot(n_e, vsub(c, a)) > 0:
                plus = t
            else:
                minus = t
        if plus is None or minus is None:
            raise LatticeError(f"triangles on one side of edge {key}")
        out.append(SubdivisionEdge(a, b, n_check, False, plus, minus))
    return tuple(out)


def edges_by_key(sub: Subdivision) -> dict[EdgeKey, SubdivisionEdge]:
    return {e.key: e for e in edges(sub)}


def interior_edge_keys(sub: Subdivision) -> tuple[EdgeKey, ...]:
    """Canonical (sorted) order of the bounded dual edges."""
    return tuple(e.key for e in edges(sub) if not e.is_boundary)


def affine_part(sub: Subdivision, values: Sequence, t: int) -> tuple[QVec, Fraction]:
    """Exact (slope, constant) of the affine interpolant on triangle t."""
    i0, i1, i2 = sub.triangles[t]
    v0, v1, v2 = sub.points[i0], sub.points[i1], sub.points[i2]
    f0, f1, f2 = Fraction(values[i0]), Fraction(values[i1]), Fraction(values[i2])
    m = solve_dual(vsub(v1, v0), vsub(v2, v0), f1 - f0, f2 - f0)
    c = f0 - (m[0] * v0[0] + m[1] * v0[1])
    return m, c


def edge_kink(sub: Subdivision, values: Sequence, edge: SubdivisionEdge) -> Fraction:
    """Signed bend of the piecewise affine interpolant across an interior edge.

    Positive exactly when the function is locally convex across the edge; the
    value does not depend on which side was labeled plus.
    """
    if edge.is_boundary:
        raise LatticeError(f"edge ({edge.a}, {edge.b}) is on the boundary")
    m_plus, _ = affine_part(sub, values, edge.plus_triangle)
    m_minus, _ = affine_part(sub, values, edge.minus_triangle)
    delta = vsub(m_plus, m_minus)
    n_e = rot90(edge.n_check)
    # delta must be parallel to n_e: it annihilates the edge direction
    if delta[0] * n_e[1] != delta[1] * n_e[0]:
        raise LatticeError(f"function is discontinuous across edge ({edge.a}, {edge.b})")
    if n_e[0] != 0:
        return Fraction(delta[0], n_e[0])
    return Fraction(delta[1], n_e[1])


def euler_characteristic(sub: Subdivision) -> int:
    v = len(sub.points)
    e = len(edges(sub))
    f = len(sub.triangles)
    return v - e + f
