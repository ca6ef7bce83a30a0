"""Exact rational-point censuses for surfaces and their twist intersections.

The twist surfaces agree with the original surface at every rational
point (substituting x^p = x turns both twist forms into multiples of f
by Euler's relation), so the intersection count x_total always matches
total.  The census keeps them as independent measurements rather than
assuming the identity.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .evalgrid import count_zeros, eval_at_points, zero_points
from .polyform import HomogeneousForm, twist_s1, twist_s2
from .surfacelines import LineConfiguration, lines_on_surface

__all__ = [
    "CountReport",
    "count_points_generic",
    "count_points_diagonal",
    "count_points",
    "count_points_x",
    "rational_points",
    "points_off_lines",
    "census",
]


@dataclass(frozen=True)
class CountReport:
    """Point census of one surface: totals and the line/off-line split."""

    p: int
    d: int
    total: int
    on_lines: int
    off_lines: int
    x_total: int


def count_points_generic(f: HomogeneousForm, threads: int = 1) -> int:
    """Exact |S(F_p)| by stratified enumeration; works for any form."""
    return count_zeros(f, threads=threads)


def count_points_diagonal(f: HomogeneousForm) -> int:
    """Exact |S(F_p)| for diagonal forms via value-histogram convolution.

    Affine solution counts of c0*x0^d + .. + c3*x3^d = 0 factor through
    the additive group: convolve per-variable value histograms and read
    the zero bin, then pass to projective space by (N_aff - 1)/(p - 1).
    """
    if not f.is_diagonal():
        raise ValueError("diagonal counter requires a diagonal form")
    p = f.field.p
    hists = []
    used = {}
    for mon in f.monomials:
        i = next(k for k, e in enumerate(mon.exps) if e)
        used[i] = np.bincount(mon.coeff * f.field.pow_table(mon.exps[i]) % p,
                              minlength=p).astype(np.int64)
    absent = np.zeros(p, dtype=np.int64)
    absent[0] = p
    for i in range(4):
        hists.append(used.get(i, absent))
    conv = hists[0]
    for h in hists[1:]:
        out = np.zeros(p, dtype=np.int64)
        for v in range(p):
            if h[v]:
                out += h[v] * np.roll(conv, v)
        conv = out
    n_aff = int(conv[0])
    assert (n_aff - 1) % (p - 1) == 0
    return (n_aff - 1) // (p - 1)


def count_points(f: HomogeneousForm, threads: int = 1) -> int:
    """|S(F_p)|, dispatching diagonal forms to the fast path."""
    if f.is_diagonal():
        return count_points_diagonal(f)
    return count_points_generic(f, threads=threads)


def rational_points(f: HomogeneousForm, threads: int = 1) -> np.ndarray:
    """All points of S(F_p) as an (N, 4) array of canonical representatives."""
    return zero_points(f, threads=threads)


def count_points_x(f: HomogeneousForm, threads: int = 1) -> int:
    """Rational points of the intersection of S with both twist surfaces."""
    pts = zero_points(f, threads=threads)
    for twist in (twist_s1(f), twist_s2(f)):
        if len(pts) == 0:
            break
        pts = pts[eval_at_points(twist, pts) == 0]
    return len(pts)


def _encode(pts: np.ndarray, p: int) -> np.ndarray:
    return ((pts[:, 0] * p + pts[:, 1]) * p + pts[:, 2]) * p + pts[:, 3]


def points_off_lines(f: HomogeneousForm, lines: LineConfiguration) -> int:
    """Rational points of S lying on none of the given lines."""
    p = f.field.p
    pts = zero_points(f)
    if lines.m == 0:
        return len(pts)
    on = set()
    for line in lines.lines:
        for pt in line.points():
            on.add(((pt[0] * p + pt[1]) * p + pt[2]) * p + pt[3])
    codes = _encode(pts, p)
    on_arr = np.fromiter(on, dtype=np.int64, count=len(on))
    return int((~np.isin(codes, on_arr)).sum())


def census(f: HomogeneousForm, threads: int = 1,
           lines: LineConfiguration | None = None) -> CountReport:
    """Full census: total, on-line/off-line split, and intersection count."""
    p = f.field.p
    pts = zero_points(f, threads=threads)
    total = len(pts)

    if lines is None:
        lines = lines_on_surface(f)
    if lines.m:
        on = set()
        for line in lines.lines:
            for pt in line.points():
                on.add(((pt[0] * p + pt[1]) * p + pt[2]) * p + pt[3])
        on_arr = np.fromiter(on, dtype=np.int64, count=len(on))
        off_lines = int((~np.isin(_encode(pts, p), on_arr)).sum())
    else:
        off_lines = total
    on_lines = total - off_lines

    xpts = pts
    for twist in (twist_s1(f), twist_s2(f)):
        if len(xpts) == 0:
            break
        xpts = xpts[eval_at_points(twist, xpts) == 0]
    return CountReport(p=p, d=f.degree, total=total, on_lines=on_lines,
                       off_lines=off_lines, x_total=len(xpts))
