"""Exact rank-two lattice arithmetic and small integer matrix kernels.

Everything here is plain integer or Fraction arithmetic; no floats.  Vectors
are ordinary tuples so they stay hashable and JSON-friendly.
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd
from typing import Sequence

Vec = tuple[int, int]
QVec = tuple[Fraction, Fraction]


class LatticeError(ValueError):
    """Raised when exact geometric preconditions fail."""


def vadd(u, v):
    return (u[0] + v[0], u[1] + v[1])


def vsub(u, v):
    return (u[0] - v[0], u[1] - v[1])


def vneg(v):
    return (-v[0], -v[1])


def vscale(c, v):
    return (c * v[0], c * v[1])


def dot(u, v):
    return u[0] * v[0] + u[1] * v[1]


def det2(u: Sequence[int], v: Sequence[int]):
    """Determinant of the 2x2 matrix with columns u, v."""
    return u[0] * v[1] - u[1] * v[0]


def rot90(v):
    """Counterclockwise quarter turn."""
    return (-v[1], v[0])


def primitive(v: Vec) -> Vec:
    """Shortest integer vector with the same direction as v."""
    if v[0] == 0 and v[1] == 0:
        raise LatticeError("zero has no primitive direction")
    g = gcd(abs(v[0]), abs(v[1]))
    return (v[0] // g, v[1] // g)


def is_primitive(v: Vec) -> bool:
    return (v[0] != 0 or v[1] != 0) and gcd(abs(v[0]), abs(v[1])) == 1


def as_fraction_vec(v) -> QVec:
    return (Fraction(v[0]), Fraction(v[1]))


def lex_positive(v: Vec) -> Vec:
    """The representative of {v, -v} with x > 0, or x = 0 and y > 0."""
    if v[0] > 0 or (v[0] == 0 and v[1] > 0):
        return v
    return vneg(v)


def _xgcd(a: int, b: int) -> tuple[int, int, int]:
    old_r, r = a, b
    old_s, s = 1, 0
    old_t, t = 0, 1
    while r:
        q = old_r // r
        old_r, r = r, old_r - q * r
        old_s, s = s, old_s - q * s
        old_t, t = t, old_t - q * t
    return old_r, old_s, old_t


def integer_kernel(rows: Sequence[Sequence[int]], ncols: int | None = None) -> list[list[int]]:
    """Z-basis of the integer kernel of the matrix with the given rows.

    Unimodular column operations reduce the matrix to column echelon form
    while the same operations accumulate in an identity matrix; the
    accumulated columns sitting over zero columns form a saturated basis of
    the kernel (any integer solution is an integer combination of them).
    """
    nrows = len(rows)
    if ncols is None:
        if nrows == 0:
            raise LatticeError("column count needed for an empty matrix")
        ncols = len(rows[0])
    if any(len(r) != ncols for r in rows):
        raise LatticeError("ragged matrix")

    cols = [[rows[i][j] for i in range(nrows)] for j in range(ncols)]
    trans = [[1 if i == j else 0 for i in range(ncols)] for j in range(ncols)]

    def combine(j0: int, j1: int, a: int, b: int, c: int, d: int) -> None:
        # columns (j0, j1) <- (a*j0 + b*j1, c*j0 + d*j1), with ad - bc = +-1
        for mat in (cols, trans):
            x, y = mat[j0], mat[j1]
            mat[j0] = [a * xi + b * yi for xi, yi in zip(x, y)]
            mat[j1] = [c * xi + d * yi for xi, yi in zip(x, y)]

    pivot = 0
    for r in range(nrows):
        lead = None
        for j in range(pivot, ncols):
            if cols[j][r] == 0:
                continue
            if lead is None:
                lead = j
                continue
            a, b = cols[lead][r], cols[j][r]
            g, x, y = _xgcd(a, b)
            combine(lead, j, x, y, -(b // g), a // g)
        if lead is not None:
            cols[pivot], cols[lead] = cols[lead], cols[pivot]
            trans[pivot], trans[lead] = trans[lead], trans[pivot]
            pivot += 1
    return [list(trans[j]) for j in range(pivot, ncols)]


def solve2_int(u: Vec, v: Vec, rhs: Sequence) -> tuple:
    """Solve x*u + y*v = rhs exactly for a 2x2 unimodular-or-not system."""
    d = det2(u, v)
    if d == 0:
        raise LatticeError("singular system")
    x = Fraction(det2(rhs, v), d)
    y = Fraction(det2(u, rhs), d)
    return (x, y)


def solve_dual(u: Vec, v: Vec, a, b) -> QVec:
    """The covector m with <m, u> = a and <m, v> = b."""
    d = det2(u, v)
    if d == 0:
        raise LatticeError("singular system")
    return (Fraction(a * v[1] - b * u[1], d), Fraction(b * u[0] - a * v[0], d))
