"""Seeded random smooth fans and admissible twisting numbers.

Shared by the oracle cross-check suite and the acceptance run.  Every draw is
driven by an explicit random.Random instance so the cases are reproducible.
"""

from __future__ import annotations

import random

from tropcoh.fan import Fan, make_fan, self_intersections
from tropcoh.lattice import integer_kernel, rot90, vadd
from tropcoh.spheres import (
    SemiIntegralSupport,
    gamma_curve,
    theta_from_twisting,
    twisting,
)

P2 = ((1, 0), (0, 1), (-1, -1))
HIRZEBRUCH = tuple(((1, 0), (0, 1), (-1, a), (0, -1)) for a in range(4))
SEED_FANS = (P2,) + HIRZEBRUCH


def random_smooth_fan(rng: random.Random, min_rays: int = 5, max_rays: int = 9) -> Fan:
    """Grow a seed fan by star subdivisions until it has 5 to 9 rays.

    Inserting u_j + u_{j+1} between two adjacent rays keeps every consecutive
    determinant equal to one, so the result stays smooth and complete.
    """
    rays = list(rng.choice(SEED_FANS))
    target = rng.randrange(min_rays, max_rays + 1)
    while len(rays) < target:
        j = rng.randrange(len(rays))
        rays.insert(j + 1, vadd(rays[j], rays[(j + 1) % len(rays)]))
    return make_fan(rays)


def random_theta(
    rng: random.Random, max_ell: int = 12, max_span: int = 40
) -> SemiIntegralSupport:
    """A random admissible half-integral support on a random smooth fan.

    Starts from +-(b + 2), which satisfies both the parity and the balance
    constraint on any smooth complete fan, then shifts by even multiples of
    integral balance-kernel vectors.  Rejects cases with a twist beyond
    max_ell or a boundary curve wider than max_span.
    """
    for _ in range(200):
        fan = random_smooth_fan(rng)
        r = len(fan.rays)
        b = self_intersections(fan)
        kern = integer_kernel(
            [
                [rot90(u)[0] for u in fan.rays],
                [rot90(u)[1] for u in fan.rays],
            ],
            r,
        )
        s = rng.choice((1, -1))
        ell = [s * (bj + 2) for bj in b]
        for k in kern:
            c = rng.randrange(-3, 4)
            ell = [l + 2 * c * kj for l, kj in zip(ell, k)]
        if max(abs(l) for l in ell) > max_ell:
            continue
        theta = theta_from_twisting(twisting(fan, tuple(ell)))
        verts = gamma_curve(theta).vertices
        xs = [v[0] for v in verts]
        ys = [v[1] for v in verts]
        if max(xs) - min(xs) > max_span or max(ys) - min(ys) > max_span:
            continue
        return theta
    raise AssertionError("rejection sampling failed to produce a case")


def zero_probe_points(bounds: tuple[int, int, int, int], count: int = 20):
    """Deterministic lattice points inside the table box, mostly zero entries."""
    xmin, ymin, xmax, ymax = bounds
    w = xmax - xmin
    h = ymax - ymin
    return [
        (xmin + (i * 7) % (w + 1), ymin + (i * 11) % (h + 1)) for i in range(count)
    ]


def cross_check(rng_seed: int, cases: int) -> tuple[int, int]:
    """Compare the cast table with the cohomology count and the ray oracle.

    Asserts on the first disagreement; returns (nonempty tables, total
    entries) so callers can confirm the sample was not vacuous.
    """
    from tropcoh.cohomology import verify_winding_theorem
    from tropcoh.winding import winding_table, winding_via_T_auto

    rng = random.Random(rng_seed)
    nonempty = 0
    entries = 0
    for _ in range(cases):
        theta = random_theta(rng)
        table = winding_table(theta)
        rep = verify_winding_theorem(theta)
        assert rep.ok, f"cohomology disagrees with the cast on fan {theta.fan.rays}"
        for point, w in table.entries.items():
            got = winding_via_T_auto(theta, point)
            assert got == w, f"ray oracle gives {got} at {point}, table has {w}"
        for point in zero_probe_points(table.bounds):
            if point not in table.entries:
                assert winding_via_T_auto(theta, point) == 0
        if table.entries:
            nonempty += 1
            entries += len(table.entries)
    return nonempty, entries
