"""Floating point checks of the mollifier smoothing claims.

Quadrature splits the integration strip at every declared kink line of the
integrand, so fixed-order Gauss-Legendre sees only smooth pieces.  The
normalizing constant is accumulated from the same nodes as the numerator,
which makes constants reproduce exactly up to roundoff.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Sequence

import numpy as np

from .lattice import LatticeError
from .polytope import Subdivision, convex_hull, edges
from .spheres import SemiIntegralSupport, gamma_curve
from .winding import is_strictly_convex

Wall = tuple[float, float, float]  # a*x + b*y + c = 0, (a, b) normalized


def _normalize_wall(a: float, b: float, c: float) -> Wall:
    n = math.hypot(a, b)
    if n == 0:
        raise LatticeError("degenerate wall line")
    if a < 0 or (a == 0 and b < 0):
        a, b, c = -a, -b, -c
    return (a / n, b / n, c / n)


@dataclass(frozen=True)
class AffinePL:
    """f(x) = <slope, x> + offset; no kinks anywhere."""

    slope: tuple[float, float]
    offset: float = 0.0

    def value(self, pts: np.ndarray) -> np.ndarray:
        return pts[:, 0] * self.slope[0] + pts[:, 1] * self.slope[1] + self.offset

    def walls(self) -> tuple[Wall, ...]:
        return ()


class FanPL:
    """Piecewise linear form of a semi-integral support on its fan."""

    def __init__(self, theta: SemiIntegralSupport):
        self.theta = theta
        rays = theta.fan.rays
        angles = np.unwrap([math.atan2(u[1], u[0]) for u in rays])
        assert np.all(np.diff(angles) > 0)
        self._angles = angles
        self._parts = np.array(
            [[float(t[0]), float(t[1])] for t in theta.thetas]
        )
        seen = set()
        ws = []
        for u in rays:
            key = u if u[0] > 0 or (u[0] == 0 and u[1] > 0) else (-u[0], -u[1])
            if key in seen:
                continue
            seen.add(key)
            ws.append(_normalize_wall(-key[1], key[0], 0.0))
        self._walls = tuple(ws)

    def value(self, pts: np.ndarray) -> np.ndarray:
        ang = np.arctan2(pts[:, 1], pts[:, 0])
        a0 = self._angles[0]
        ang = a0 + np.mod(ang - a0, 2 * math.pi)
        idx = np.clip(np.searchsorted(self._angles, ang, side="right") - 1, 0, len(self._angles) - 1)
        parts = self._parts[idx]
        return parts[:, 0] * pts[:, 0] + parts[:, 1] * pts[:, 1]

    def walls(self) -> tuple[Wall, ...]:
        return self._walls


class SubdivisionPL:
    """Integral support function extended beyond the polygon by projection."""

    def __init__(self, sub: Subdivision, values: Sequence[int]):
        self.sub = sub
        self.values = tuple(values)
        self._tri = []
        pts = sub.points
        for t, (i0, i1, i2) in enumerate(sub.triangles):
            p0, p1, p2 = (np.array(pts[i], dtype=float) for i in (i0, i1, i2))
            vals = np.array([values[i0], values[i1], values[i2]], dtype=float)
            self._tri.append((p0, p1 - p0, p2 - p0, vals))
        self._hull = [np.array(p, dtype=float) for p in convex_hull(pts)]
        ws = []
        for e in edges(sub):
            a, b = e.a, e.b
            d = (b[0] - a[0], b[1] - a[1])
            ws.append(_normalize_wall(-d[1], d[0], d[1] * a[0] - d[0] * a[1]))
        self._walls = tuple(dict.fromkeys(ws))

    def _project(self, pts: np.ndarray) -> np.ndarray:
        hull = self._hull
        n = len(hull)
        inside = np.ones(len(pts), dtype=bool)
        for i in range(n):
            a, b = hull[i], hull[(i + 1) % n]
            e = b - a
            inside &= e[0] * (pts[:, 1] - a[1]) - e[1] * (pts[:, 0] - a[0]) >= -1e-12
        out = pts.copy()
        todo = ~inside
        if np.any(todo):
            q = pts[todo]
            best = None
            bestd = None
            for i in range(n):
                a, b = hull[i], hull[(i + 1) % n]
                e = b - a
                t = np.clip(((q - a) @ e) / (e @ e), 0.0, 1.0)
                proj = a + t[:, None] * e
                d = np.sum((q - proj) ** 2, axis=1)
                if best is None:
                    best, bestd = proj, d
                else:
                    better = d < bestd
                    best[better] = proj[better]
                    bestd = np.minimum(bestd, d)
            out[todo] = best
        return out

    def value(self, pts: np.ndarray) -> np.ndarray:
        q = self._project(np.asarray(pts, dtype=float))
        vals = np.empty(len(q))
        done = np.zeros(len(q), dtype=bool)
        for p0, e1, e2, v in self._tri:
            r = q - p0
            det = e1[0] * e2[1] - e1[1] * e2[0]
            s = (r[:, 0] * e2[1] - r[:, 1] * e2[0]) / det
            t = (e1[0] * r[:, 1] - e1[1] * r[:, 0]) / det
            mask = ~done & (s >= -1e-9) & (t >= -1e-9) & (s + t <= 1 + 1e-9)
            vals[mask] = v[0] + s[mask] * (v[1] - v[0]) + t[mask] * (v[2] - v[0])
            done |= mask
        assert done.all(), "projected point escaped the triangulation"
        return vals

    def walls(self) -> tuple[Wall, ...]:
        return self._walls


@dataclass(frozen=True)
class MollifierParams:
    epsilon: float
    quadrature_order: int = 24


def epsilon_auto(sub: Subdivision) -> float:
    """Half the smallest feature distance of the subdivision."""
    pts = [np.array(p, dtype=float) for p in sub.points]
    dmin = min(
        float(np.hypot(*(p - q)))
        for i, p in enumerate(pts)
        for q in pts[i + 1 :]
    )
    for e in edges(sub):
        a = np.array(e.a, dtype=float)
        b = np.array(e.b, dtype=float)
        seg = b - a
        for j, p in enumerate(pts):
            if sub.points[j] in (e.a, e.b):
                continue
            t = float(np.clip((p - a) @ seg / (seg @ seg), 0.0, 1.0))
            dmin = min(dmin, float(np.hypot(*(p - (a + t * seg)))))
    return dmin / 2


@lru_cache(maxsize=None)
def _gl(order: int):
    x, w = np.polynomial.legendre.leggauss(order)
    return x, w


def mollify_eval(f, p: MollifierParams, x) -> float:
    eps = float(p.epsilon)
    order = int(p.quadrature_order)
    if order < 1:
        raise LatticeError("quadrature order must be positive")
    gx, gw = _gl(order)
    x0, x1 = float(x[0]), float(x[1])

    # wall lines in the y frame: a*y1 + b*y2 = d
    lines = []
    for a, b, c in f.walls():
        d = a * x0 + b * x1 + c
        if abs(d) <= eps + 1e-12:
            lines.append((a, b, d))

    cuts = set()
    for a, b, d in lines:
        if abs(a) < 1e-14:
            cuts.add(d / b)
        else:
            # crossings with the disk rim
            disc = eps * eps * (a * a + b * b) - d * d
            if disc > 0:
                root = a * math.sqrt(disc)
                base = b * d
                s2 = a * a + b * b
                cuts.add((base + root) / s2)
                cuts.add((base - root) / s2)
    for i, (a1, b1, d1) in enumerate(lines):
        for a2, b2, d2 in lines[i + 1 :]:
            det = a1 * b2 - a2 * b1
            if abs(det) < 1e-14:
                continue
            cuts.add((a1 * d2 - a2 * d1) / det)
    ts = sorted(t for t in cuts if -eps + 1e-13 < t < eps - 1e-13)
    bounds = [-eps]
    for t in ts:
        if t - bounds[-1] > 1e-13:
            bounds.append(t)
    bounds.append(eps)

    num = 0.0
    den = 0.0
    slope_walls = [(a, b, d) for a, b, d in lines if abs(a) >= 1e-14]
    for lo, hi in zip(bounds, bounds[1:]):
        mid, half = (lo + hi) / 2, (hi - lo) / 2
        T = mid + half * gx
        WT = half * gw
        S = np.sqrt(np.maximum(eps * eps - T * T, 0.0))
        crossings = [np.clip((d - b * T) / a, -S, S) for a, b, d in slope_walls]
        edges_y1 = np.sort(np.stack([-S, *crossings, S], axis=1), axis=1)
        lo1 = edges_y1[:, :-1]
        hi1 = edges_y1[:, 1:]
        mid1 = (lo1 + hi1) / 2
        half1 = (hi1 - lo1) / 2
        Y1 = mid1[:, :, None] + half1[:, :, None] * gx[None, None, :]
        W = WT[:, None, None] * half1[:, :, None] * gw[None, None, :]
        Y2 = np.broadcast_to(T[:, None, None], Y1.shape)
        r2 = Y1 * Y1 + Y2 * Y2
        mu = np.zeros_like(r2)
        ok = r2 < eps * eps * (1 - 1e-15)
        mu[ok] = np.exp(1.0 / (r2[ok] - eps * eps))
        pts = np.stack([x0 - Y1.ravel(), x1 - Y2.ravel()], axis=1)
        fv = np.asarray(f.value(pts), dtype=float).reshape(Y1.shape)
        num += float(np.sum(W * mu * fv))
        den += float(np.sum(W * mu))
    return num / den


def _richardson_gap(a: float, b: float) -> float:
    # error estimate for the h/2 value of an O(h^2) scheme
    return abs(a - b) / (3 * max(abs(a), abs(b), 1.0))


def grad(f, p: MollifierParams, x) -> tuple[float, float]:
    eps = float(p.epsilon)
    # step keeps O(h^2) truncation well under the 1e-5 gate while staying
    # far above the quadrature noise floor
    h = eps * 5e-4
    out = None
    for step in (h, h / 2):
        gxv = (
            mollify_eval(f, p, (x[0] + step, x[1])) - mollify_eval(f, p, (x[0] - step, x[1]))
        ) / (2 * step)
        gyv = (
            mollify_eval(f, p, (x[0], x[1] + step)) - mollify_eval(f, p, (x[0], x[1] - step))
        ) / (2 * step)
        if out is not None and (
            _richardson_gap(out[0], gxv) > 1e-5 or _richardson_gap(out[1], gyv) > 1e-5
        ):
            raise LatticeError("quadrature order too low")
        out = (gxv, gyv)
    return out


def hessian(f, p: MollifierParams, x):
    eps = float(p.epsilon)
    h = eps * 5e-4
    out = None
    for step in (h, h / 2):
        c = mollify_eval(f, p, (x[0], x[1]))
        xp = mollify_eval(f, p, (x[0] + step, x[1]))
        xm = mollify_eval(f, p, (x[0] - step, x[1]))
        yp = mollify_eval(f, p, (x[0], x[1] + step))
        ym = mollify_eval(f, p, (x[0], x[1] - step))
        pp = mollify_eval(f, p, (x[0] + step, x[1] + step))
        pm = mollify_eval(f, p, (x[0] + step, x[1] - step))
        mp = mollify_eval(f, p, (x[0] - step, x[1] + step))
        mm = mollify_eval(f, p, (x[0] - step, x[1] - step))
        h11 = (xp - 2 * c + xm) / step**2
        h22 = (yp - 2 * c + ym) / step**2
        h12 = (pp - pm - mp + mm) / (4 * step**2)
        cur = ((h11, h12), (h12, h22))
        if out is not None:
            for i in (0, 1):
                for j in (0, 1):
                    if _richardson_gap(out[i][j], cur[i][j]) > 1e-5:
                        raise LatticeError("quadrature order too low")
        out = cur
    return out


def _point_to_segment(q, a, b) -> float:
    q, a, b = (np.asarray(v, dtype=float) for v in (q, a, b))
    e = b - a
    denom = float(e @ e)
    if denom == 0:
        return float(np.hypot(*(q - a)))
    t = float(np.clip((q - a) @ e / denom, 0.0, 1.0))
    return float(np.hypot(*(q - (a + t * e))))


def _dist_outside_hull(q, hull) -> float:
    """0 inside; distance to the hull boundary outside."""
    n = len(hull)
    inside = True
    for i in range(n):
        a, b = hull[i], hull[(i + 1) % n]
        if (b[0] - a[0]) * (q[1] - a[1]) - (b[1] - a[1]) * (q[0] - a[0]) < 0:
            inside = False
            break
    if inside:
        return 0.0
    return min(_point_to_segment(q, hull[i], hull[(i + 1) % n]) for i in range(n))


@dataclass(frozen=True)
class DefinitenessReport:
    convexity: str
    hessian_samples: int
    hessian_failures: int
    min_abs_eigenvalue: float
    gamma_samples: int
    max_gamma_distance: float
    grad_samples: int
    max_hull_excess: float

    @property
    def ok(self) -> bool:
        return (
            self.hessian_failures == 0
            and self.max_gamma_distance <= 1e-5
            and self.max_hull_excess <= 1e-5
        )


def check_hessian_definiteness(
    theta: SemiIntegralSupport, p: MollifierParams, samples: int
) -> DefinitenessReport:
    convexity = is_strictly_convex(theta)
    if convexity == "neither":
        raise LatticeError("convexity required")
    f = FanPL(theta)
    eps = float(p.epsilon)
    rays = theta.fan.rays
    r = len(rays)
    gamma = [(float(v[0]), float(v[1])) for v in gamma_curve(theta).vertices]
    hull_pts = [np.array(g) for g in gamma]

    sign = 1.0 if convexity == "convex" else -1.0
    failures = 0
    min_abs = math.inf
    grads = []

    # near the fan vertex every direction bends: definite Hessian zone
    golden = math.pi * (3 - math.sqrt(5))
    for i in range(samples):
        rad = (eps / 2) * math.sqrt((i + 0.5) / samples)
        ang = i * golden
        b = (rad * math.cos(ang), rad * math.sin(ang))
        (h11, h12), (_, h22) = hessian(f, p, b)
        tr, det = h11 + h22, h11 * h22 - h12 * h12
        disc = math.sqrt(max(tr * tr / 4 - det, 0.0))
        eigs = (tr / 2 - disc, tr / 2 + disc)
        if not all(sign * e > 0 for e in eigs):
            failures += 1
        min_abs = min(min_abs, abs(eigs[0]), abs(eigs[1]))
        grads.append(grad(f, p, b))

    # far out along each ray only one edge bends: gradient walks the segment
    max_gamma = 0.0
    gamma_samples = 0
    per_ray = max(3, samples // (4 * r))
    for j, u in enumerate(rays):
        norm = math.hypot(*u)
        angs = []
        for k in (-1, 1):
            v = rays[(j + k) % r]
            cosang = (u[0] * v[0] + u[1] * v[1]) / (norm * math.hypot(*v))
            angs.append(math.acos(max(-1.0, min(1.0, cosang))))
        base = 1.5 * eps / math.sin(min(angs)) + eps
        seg_a, seg_b = gamma[j - 1], gamma[j]
        for i in range(per_ray):
            rad = base * (1 + i)
            b = (rad * u[0] / norm, rad * u[1] / norm)
            g = grad(f, p, b)
            max_gamma = max(max_gamma, _point_to_segment(g, seg_a, seg_b))
            grads.append(g)
            gamma_samples += 1

    max_excess = max(_dist_outside_hull(g, hull_pts) for g in grads)
    return DefinitenessReport(
        convexity,
        samples,
        failures,
        min_abs,
        gamma_samples,
        max_gamma,
        len(grads),
        max_excess,
    )


def spot_check_continuity(f, span: float = 2.0, count: int = 40) -> float:
    """Largest value gap across declared walls at sampled wall points."""
    worst = 0.0
    for a, b, c in f.walls():
        # points on the wall, offset to both sides along the normal
        t = np.linspace(-span, span, count)
        base = np.stack([-c * a + t * (-b), -c * b + t * a], axis=1)
        for s in (1.0, -1.0):
            side = base + s * 1e-9 * np.array([a, b])
            vals = f.value(side)
            ref = f.value(base - s * 1e-9 * np.array([a, b]))
            worst = max(worst, float(np.max(np.abs(vals - ref))))
    return worst
