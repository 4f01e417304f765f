"""Complete rank-two fans and smooth self-intersection numbers."""

from __future__ import annotations

import functools
from dataclasses import dataclass

from .lattice import LatticeError, Vec, det2, is_primitive, vsub
from .polytope import Subdivision, interior_vertices


@dataclass(frozen=True)
class Fan:
    """Rays of a complete simplicial fan, counterclockwise from the lex smallest."""

    rays: tuple[Vec, ...]

    def __post_init__(self):
        r = len(self.rays)
        if r < 3:
            raise LatticeError("a complete fan needs at least three rays")
        for u in self.rays:
            if not is_primitive(u):
                raise LatticeError(f"ray {u} is not primitive")
        for j in range(r):
            if det2(self.rays[j], self.rays[(j + 1) % r]) <= 0:
                raise LatticeError("rays do not span a complete fan")
        if min(self.rays) != self.rays[0]:
            raise LatticeError("rays must start at the lex smallest")

    def index_of(self, u: Vec) -> int:
        try:
            return self.rays.index(u)
        except ValueError:
            raise LatticeError(f"{u} is not a ray of the fan") from None


def _ccw_cmp(a: Vec, b: Vec) -> int:
    def upper(v):
        return 0 if v[1] > 0 or (v[1] == 0 and v[0] > 0) else 1

    if upper(a) != upper(b):
        return upper(a) - upper(b)
    return -det2(a, b)


def make_fan(rays) -> Fan:
    given = [tuple(u) for u in rays]
    rs = list(dict.fromkeys(given))
    if len(rs) != len(given):
        raise LatticeError("duplicate ray")
    rs.sort(key=functools.cmp_to_key(_ccw_cmp))
    k = rs.index(min(rs))
    return Fan(tuple(rs[k:] + rs[:k]))


def fan_at_vertex(sub: Subdivision, v: Vec) -> Fan:
    if tuple(v) not in interior_vertices(sub):
        raise LatticeError(f"{tuple(v)} is not an interior vertex")
    v = tuple(v)
    dirs = set()
    for t in range(len(sub.triangles)):
        pts = sub.triangle_points(t)
        if v in pts:
            dirs.update(vsub(p, v) for p in pts if p != v)
    return make_fan(dirs)


def is_smooth(fan: Fan) -> bool:
    r = len(fan.rays)
    return all(det2(fan.rays[j], fan.rays[(j + 1) % r]) == 1 for j in range(r))


def self_intersections(fan: Fan) -> tuple[int, ...]:
    if not is_smooth(fan):
        raise LatticeError("fan not smooth")
    r = len(fan.rays)
    return tuple(-det2(fan.rays[j - 1], fan.rays[(j + 1) % r]) for j in range(r))
