"""Line bundle cohomology on the smooth complete surface of a fan.

Dimensions come from cyclic sign patterns of ⟨m, u_j⟩ + a_j over a finite
search window; the divisor-coefficient sign convention is the opposite of
the usual toric one, so external cross-checks must negate coefficients.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations

from .fan import Fan, is_smooth
from .lattice import LatticeError, Vec, det2, dot, solve_dual
from .spheres import SemiIntegralSupport
from .winding import h_even_odd


@dataclass(frozen=True)
class ToricSupport:
    """Integral per-cone linear parts; part j lives on the cone (u_j, u_{j+1})."""

    fan: Fan
    parts: tuple[Vec, ...]

    def __post_init__(self):
        r = len(self.fan.rays)
        for j in range(r):
            u = self.fan.rays[j]
            if dot(self.parts[j], u) != dot(self.parts[j - 1], u):
                raise LatticeError(f"linear parts disagree on ray {u}")

    def ray_value(self, j: int) -> int:
        return dot(self.parts[j], self.fan.rays[j])


def _integral(v) -> Vec:
    x, y = Fraction(v[0]), Fraction(v[1])
    if x.denominator != 1 or y.denominator != 1:
        raise LatticeError("parity violated")
    return (int(x), int(y))


def canonical_psi(fan: Fan) -> ToricSupport:
    """Support data of the canonical bundle: value -1 on every ray."""
    if not is_smooth(fan):
        raise LatticeError("fan not smooth")
    r = len(fan.rays)
    parts = []
    for j in range(r):
        part = solve_dual(fan.rays[j], fan.rays[(j + 1) % r], -1, -1)
        parts.append((int(part[0]), int(part[1])))
    psi = ToricSupport(fan, tuple(parts))
    assert all(psi.ray_value(j) == -1 for j in range(r))
    return psi


def psi_from_ray_values(fan: Fan, values) -> ToricSupport:
    """Support data with the given value on each ray, in ray order."""
    if not is_smooth(fan):
        raise LatticeError("fan not smooth")
    vals = tuple(int(v) for v in values)
    if len(vals) != len(fan.rays):
        raise LatticeError("one value per ray required")
    r = len(fan.rays)
    parts = []
    for j in range(r):
        part = solve_dual(fan.rays[j], fan.rays[(j + 1) % r], vals[j], vals[(j + 1) % r])
        parts.append((int(part[0]), int(part[1])))
    return ToricSupport(fan, tuple(parts))


def psi_from_theta(theta: SemiIntegralSupport) -> ToricSupport:
    """Mirror bundle data: half the canonical parts minus the sphere parts."""
    kc = canonical_psi(theta.fan)
    parts = []
    for half, th in zip(kc.parts, theta.thetas):
        parts.append(
            _integral((Fraction(half[0], 2) - th[0], Fraction(half[1], 2) - th[1]))
        )
    return ToricSupport(theta.fan, tuple(parts))


def divisor_coeffs(psi: ToricSupport) -> tuple[int, ...]:
    return tuple(psi.ray_value(j) for j in range(len(psi.fan.rays)))


def restriction_degrees(psi: ToricSupport) -> tuple[int, ...]:
    """Degree of the bundle on the torus-fixed curve of each ray."""
    from .fan import self_intersections

    a = divisor_coeffs(psi)
    b = self_intersections(psi.fan)
    r = len(a)
    return tuple(a[j - 1] + a[(j + 1) % r] + b[j] * a[j] for j in range(r))


def serre_dual_psi(psi: ToricSupport) -> ToricSupport:
    kc = canonical_psi(psi.fan)
    parts = tuple(
        (k[0] - p[0], k[1] - p[1]) for k, p in zip(kc.parts, psi.parts)
    )
    return ToricSupport(psi.fan, parts)


@dataclass(frozen=True)
class CohomologyDims:
    h0: int
    h1: int
    h2: int

    def as_tuple(self) -> tuple[int, int, int]:
        return (self.h0, self.h1, self.h2)


def _minus_runs(signs: list[bool]) -> int:
    """Number of maximal cyclic blocks of False entries."""
    r = len(signs)
    return sum(1 for j in range(r) if not signs[j] and signs[j - 1])


def _search_box(fan: Fan, coeffs, margin: int) -> tuple[int, int, int, int]:
    xs, ys = [], []
    rays = fan.rays
    for (i, u), (j, v) in combinations(enumerate(rays), 2):
        if det2(u, v) == 0:
            continue
        m = solve_dual(u, v, -coeffs[i], -coeffs[j])
        xs.append(m[0])
        ys.append(m[1])
    assert xs, "a complete fan has crossing level lines"
    pad = 1 + margin
    return (
        math.floor(min(xs)) - pad,
        math.floor(min(ys)) - pad,
        math.ceil(max(xs)) + pad,
        math.ceil(max(ys)) + pad,
    )


def cohomology_dims(psi: ToricSupport, margin: int = 0) -> CohomologyDims:
    fan = psi.fan
    if not is_smooth(fan):
        raise LatticeError("fan not smooth")
    coeffs = divisor_coeffs(psi)
    rays = fan.rays
    xmin, ymin, xmax, ymax = _search_box(fan, coeffs, margin)
    h0 = h1 = h2 = 0
    for x in range(xmin, xmax + 1):
        for y in range(ymin, ymax + 1):
            signs = [x * u[0] + y * u[1] + a >= 0 for u, a in zip(rays, coeffs)]
            on_edge = x in (xmin, xmax) or y in (ymin, ymax)
            if all(signs):
                if on_edge:
                    raise LatticeError("search region too small")
                h0 += 1
            elif not any(signs):
                if on_edge:
                    raise LatticeError("search region too small")
                h2 += 1
            else:
                extra = _minus_runs(signs) - 1
                if extra:
                    if on_edge:
                        raise LatticeError("search region too small")
                    h1 += extra
    return CohomologyDims(h0, h1, h2)


def p1_cohomology(d: int) -> tuple[int, int]:
    return (max(d + 1, 0), max(-d - 1, 0))


@dataclass(frozen=True)
class WindingTheoremReport:
    h_even: int
    h_odd: int
    dims: CohomologyDims
    ok: bool


def verify_winding_theorem(theta: SemiIntegralSupport) -> WindingTheoremReport:
    even, odd = h_even_odd(theta)
    dims = cohomology_dims(psi_from_theta(theta))
    ok = even == dims.h0 + dims.h2 and odd == dims.h1
    return WindingTheoremReport(even, odd, dims, ok)
