"""Twisting numbers, semi-integral support functions, and their boundary curves.

Twisting numbers live on the edges around one bounded region, indexed like
the rays of the region's fan.  Entry j couples to the edge dual to ray u_j,
which separates the cones (u_{j-1}, u_j) and (u_j, u_{j+1}).
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Mapping, Optional, Union

from .bundles import KinkVector, _check_cocycle, _kink_entry, canonical_KC
from .fan import Fan, make_fan, self_intersections
from .lattice import LatticeError, QVec, Vec, dot, rot90, solve_dual
from .polytope import ValidationIssue, ValidationReport, interior_edge_keys
from .tropical import BoundedRegion

RegionOrFan = Union[BoundedRegion, Fan]


def _fan_of(source: RegionOrFan) -> Fan:
    if isinstance(source, Fan):
        return source
    return make_fan(source.fan_rays)


def _ell_tuple(ell, source: RegionOrFan) -> tuple[int, ...]:
    if isinstance(ell, Mapping):
        if isinstance(source, Fan):
            raise LatticeError("edge-keyed twisting numbers need a bounded region")
        return tuple(int(ell[key]) for key in source.edge_keys)
    return tuple(int(x) for x in ell)


@dataclass(frozen=True)
class Twisting:
    fan: Fan
    ell: tuple[int, ...]
    region: Optional[BoundedRegion] = None


def validate_twisting(ell, region: RegionOrFan) -> ValidationReport:
    fan = _fan_of(region)
    values = _ell_tuple(ell, region)
    issues = []
    if len(values) != len(fan.rays):
        issues.append(
            ValidationIssue(
                "length", f"{len(values)} twisting numbers for {len(fan.rays)} edges"
            )
        )
        return ValidationReport(tuple(issues))
    b = self_intersections(fan)
    for j, (l, bj) in enumerate(zip(values, b)):
        if (l - bj) % 2 != 0:
            issues.append(
                ValidationIssue(
                    "parity",
                    f"edge {j}: twist {l} and self-intersection {bj} differ mod 2",
                )
            )
    sx = sum(l * rot90(u)[0] for l, u in zip(values, fan.rays))
    sy = sum(l * rot90(u)[1] for l, u in zip(values, fan.rays))
    if (sx, sy) != (0, 0):
        issues.append(ValidationIssue("balance", f"edge sum ({sx}, {sy}) is not zero"))
    return ValidationReport(tuple(issues))


def twisting(source: RegionOrFan, ell) -> Twisting:
    report = validate_twisting(ell, source)
    if not report.ok:
        first = report.issues[0]
        raise LatticeError(f"invalid twisting numbers: {first.code}: {first.message}")
    fan = _fan_of(source)
    region = source if isinstance(source, BoundedRegion) else None
    return Twisting(fan, _ell_tuple(ell, source), region)


@dataclass(frozen=True)
class SemiIntegralSupport:
    """Per-cone linear parts theta_j on the cone spanned by (u_j, u_{j+1})."""

    fan: Fan
    thetas: tuple[QVec, ...]
    region: Optional[BoundedRegion] = None

    def ray_value(self, j: int) -> Fraction:
        return dot(self.thetas[j], self.fan.rays[j])


def _half(x: Fraction) -> bool:
    return (2 * x).denominator == 1 and (2 * x).numerator % 2 == 1


def _assert_semi_integral(fan: Fan, thetas) -> None:
    r = len(fan.rays)
    for j in range(r):
        assert _half(dot(thetas[j], fan.rays[j]))
        assert _half(dot(thetas[j], fan.rays[(j + 1) % r]))


def canonical_seed(fan: Fan) -> QVec:
    """Half-lattice point pairing to 1/2 mod 1 with the first two rays.

    Reduced modulo the dual lattice into [0,1)^2, which makes it the lex
    smallest admissible choice.
    """
    u0, u1 = fan.rays[0], fan.rays[1]
    d0 = solve_dual(u0, u1, Fraction(1), Fraction(0))
    d1 = solve_dual(u0, u1, Fraction(0), Fraction(1))
    seed = ((d0[0] + d1[0]) / 2 % 1, (d0[1] + d1[1]) / 2 % 1)
    return seed


def theta_from_twisting(tw: Twisting) -> SemiIntegralSupport:
    fan = tw.fan
    report = validate_twisting(tw.ell, fan)
    if not report.ok:
        first = report.issues[0]
        raise LatticeError(f"invalid twisting numbers: {first.code}: {first.message}")
    r = len(fan.rays)
    thetas = [canonical_seed(fan)]
    for j in range(1, r):
        step = rot90(fan.rays[j])
        half = Fraction(tw.ell[j], 2)
        prev = thetas[-1]
        thetas.append((prev[0] + half * step[0], prev[1] + half * step[1]))
    step = rot90(fan.rays[0])
    half = Fraction(tw.ell[0], 2)
    closed = (thetas[-1][0] + half * step[0], thetas[-1][1] + half * step[1])
    assert closed == thetas[0], "balanced twisting numbers must close up"
    _assert_semi_integral(fan, thetas)
    return SemiIntegralSupport(fan, tuple(thetas), tw.region)


def kinks_of_theta(theta: SemiIntegralSupport) -> Twisting:
    fan = theta.fan
    r = len(fan.rays)
    ell = []
    for j in range(r):
        delta = (
            theta.thetas[j][0] - theta.thetas[j - 1][0],
            theta.thetas[j][1] - theta.thetas[j - 1][1],
        )
        if dot(delta, fan.rays[j]) != 0:
            raise LatticeError("not a support function on Σ_C")
        step = rot90(fan.rays[j])
        coeff = delta[0] / step[0] if step[0] != 0 else delta[1] / step[1]
        two = 2 * coeff
        if two.denominator != 1:
            raise LatticeError("not a support function on Σ_C")
        ell.append(int(two))
    return Twisting(fan, tuple(ell), theta.region)


@dataclass(frozen=True)
class GammaCurve:
    """Closed polygonal boundary value curve through the cone linear parts."""

    vertices: tuple[QVec, ...]
    fan: Optional[Fan] = None


def gamma_curve(theta: SemiIntegralSupport) -> GammaCurve:
    _assert_semi_integral(theta.fan, theta.thetas)
    return GammaCurve(theta.thetas, theta.fan)


def translate_sphere(tw: Twisting, K: KinkVector) -> Twisting:
    if tw.region is None:
        raise LatticeError("twisting numbers are not attached to a bounded region")
    _check_cocycle(tw.region.curve, K)
    ell = tuple(
        l + 2 * _kink_entry(K, key) for l, key in zip(tw.ell, tw.region.edge_keys)
    )
    return twisting(tw.region, ell)


def compact_support_class(K: KinkVector, region: BoundedRegion) -> Optional[int]:
    """The multiple a with K = a * K_C when one exists."""
    kc = canonical_KC(region)
    keys = interior_edge_keys(region.curve.sub)
    a = None
    for key in keys:
        base = kc.get(key, 0)
        if base != 0:
            val = _kink_entry(K, key)
            if val % base != 0:
                return None
            a = val // base
            break
    if a is None:
        a = 0
    for key in keys:
        if _kink_entry(K, key) != a * kc.get(key, 0):
            return None
    return a


def difference_sphere(region: BoundedRegion) -> Twisting:
    """Twisting numbers of the sphere representing a difference of sections."""
    b = self_intersections(make_fan(region.fan_rays))
    return twisting(region, tuple(x + 2 for x in b))
