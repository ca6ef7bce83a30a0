"""Rational lines contained in a surface, and transversality along them.

A line lies in the zero set of a degree-d form exactly when the form
vanishes at d + 1 of its points (a nonzero binary degree-d form has at
most d projective roots), so containment is decided by sampling the
points r1, r2 and r1 + s*r2 for s = 1 .. d-1.  This needs d <= p so that
the sample points are distinct.

The search factors through the echelon classes: the two echelon rows of
a line have disjoint free parameters, and both rows are themselves
points of the line, so candidates for each row are found independently
on a p^2-sized grid and only the cross products of the two candidate
sets are tested further.  That keeps the search near p^2 work instead
of p^4.

Twist gradients collapse at rational points (the gradient of the first
twist is a scalar multiple of the gradient of the surface there), so
transversality witnesses are searched over F_{p^2} by default.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property

import numpy as np

from .evalgrid import ExtGrid, eval_at_points
from .ffield import ExtField2, PrimeField
from .polyform import HomogeneousForm, twist_s1
from .projgeom import PIVOT_CLASSES, ProjLine, line_class_free_columns, lines_meet

__all__ = [
    "LineConfiguration",
    "TransversalityEvidence",
    "lines_on_surface",
    "lines_on_surface_slow",
    "fermat_expected_lines",
    "transversality_along_line",
    "pairwise_intersection_sum",
]

CROSS_CHUNK_ROWS = 2_000_000


@dataclass(frozen=True)
class LineConfiguration:
    """All rational lines contained in one surface."""

    p: int
    degree: int
    lines: tuple[ProjLine, ...]

    @property
    def m(self) -> int:
        return len(self.lines)

    @cached_property
    def incidence(self) -> np.ndarray:
        """Symmetric 0/1 meeting matrix with zero diagonal."""
        m = self.m
        mat = np.zeros((m, m), dtype=np.int8)
        for a in range(m):
            for b in range(a + 1, m):
                if lines_meet(self.lines[a], self.lines[b]):
                    mat[a, b] = mat[b, a] = 1
        mat.setflags(write=False)
        return mat

    def by_pivot_class(self) -> dict[tuple[int, int], int]:
        out: dict[tuple[int, int], int] = {}
        for line in self.lines:
            piv = line.pivots
            out[piv] = out.get(piv, 0) + 1
        return out


@dataclass(frozen=True)
class TransversalityEvidence:
    """Outcome of the witness search along one line."""

    found: bool
    ext_degree: int
    point: tuple | None
    points_scanned: int


def _row_candidates(f: HomogeneousForm, pivot: int, free_cols) -> np.ndarray:
    """Echelon-row vectors with the given pivot that lie on the surface."""
    p = f.field.p
    t = len(free_cols)
    if t == 0:
        rows = np.zeros((1, 4), dtype=np.int64)
        rows[0, pivot] = 1
    else:
        grids = np.indices((p,) * t, dtype=np.int64).reshape(t, -1)
        rows = np.zeros((grids.shape[1], 4), dtype=np.int64)
        rows[:, pivot] = 1
        for col, g in zip(free_cols, grids):
            rows[:, col] = g
    return rows[eval_at_points(f, rows) == 0]


def lines_on_surface(f: HomogeneousForm) -> LineConfiguration:
    """Every line of P^3(F_p) contained in the surface f = 0."""
    p = f.field.p
    d = f.degree
    if d > p:
        raise ValueError("line containment by point sampling requires degree <= p")
    found: list[ProjLine] = []
    for piv in PIVOT_CLASSES:
        i, j = piv
        free1, free2 = line_class_free_columns(piv)
        cand1 = _row_candidates(f, i, free1)
        cand2 = _row_candidates(f, j, free2)
        if not len(cand1) or not len(cand2):
            continue
        step = max(1, CROSS_CHUNK_ROWS // len(cand2))
        for lo in range(0, len(cand1), step):
            a = cand1[lo:lo + step]
            r1 = np.repeat(a, len(cand2), axis=0)
            r2 = np.tile(cand2, (len(a), 1))
            for s in range(1, d):
                if not len(r1):
                    break
                ok = eval_at_points(f, (r1 + s * r2) % p) == 0
                r1, r2 = r1[ok], r2[ok]
            for u, v in zip(r1, r2):
                found.append(ProjLine(p, (tuple(int(x) for x in u),
                                          tuple(int(x) for x in v))))
    return LineConfiguration(p=p, degree=d, lines=tuple(found))


def lines_on_surface_slow(f: HomogeneousForm) -> list[ProjLine]:
    """Reference implementation: test every line pointwise.  Tiny p only."""
    from .projgeom import enumerate_lines

    p = f.field.p
    if f.degree > p:
        raise ValueError("line containment by point sampling requires degree <= p")
    out = []
    for line in enumerate_lines(p):
        if all(f.evaluate(pt) == 0 for pt in line.points()):
            out.append(line)
    return out


def fermat_expected_lines(d: int, p: int) -> set[ProjLine]:
    """The 3 d^2 lines of x0^d + x1^d - x2^d - x3^d = 0, by closed form.

    Requires p = 1 (mod 2d) so that both a primitive d-th root of unity
    and a d-th root of -1 exist.  The three families each contribute d^2
    lines: with eta the primitive root and v^d = -1,

        x3 = eta^i x0,   x1 = eta^k x2
        x0 = eta^(k+i) x2,   x3 = eta^i x1
        x0 = v eta^i x1,   x3 = v eta^k x2
    """
    field = PrimeField(p)
    if (p - 1) % (2 * d):
        raise ValueError("expected-line construction requires p = 1 (mod 2d)")
    eta = field.primitive_dth_root(d)
    v = field.pow(field.generator, (p - 1) // (2 * d))
    assert field.pow(v, d) == p - 1
    lines: set[ProjLine] = set()
    for i in range(d):
        ei = pow(eta, i, p)
        for k in range(d):
            ek = pow(eta, k, p)
            lines.add(ProjLine.from_span(p, (1, 0, 0, ei), (0, ek, 1, 0)))
            lines.add(ProjLine.from_span(p, (0, 1, 0, ei), (ei * ek % p, 0, 1, 0)))
            lines.add(ProjLine.from_span(p, (v * ei % p, 1, 0, 0), (0, 0, 1, v * ek % p)))
    return lines


def _rank2_int(v1, v2, p: int) -> bool:
    for a in range(4):
        for b in range(a + 1, 4):
            if (v1[a] * v2[b] - v1[b] * v2[a]) % p:
                return True
    return False


def transversality_along_line(f: HomogeneousForm, line: ProjLine,
                              ext_degree: int = 2) -> TransversalityEvidence:
    """Search the line for a point where f and its first twist are transversal.

    A witness is a point at which the gradients of f and of the twist
    surface are not proportional.  At rational points no witness can
    exist (the twist gradient is a scalar multiple of the surface
    gradient there), so the default scans rational points first and then
    the remaining points of the line over F_{p^2}.  Absence of a witness
    is reported as found=False, which is inconclusive rather than a
    proof of tangency everywhere.
    """
    field = f.field
    p = field.p
    if any(f.evaluate(pt) != 0 for pt in line.points()):
        raise ValueError("line does not lie on the surface")
    s1 = twist_s1(f)
    grads_f = f.gradient()
    grads_s = s1.gradient()
    scanned = 0
    for pt in line.points():
        scanned += 1
        v1 = [g.evaluate(pt) if g is not None else 0 for g in grads_f]
        v2 = [g.evaluate(pt) if g is not None else 0 for g in grads_s]
        if _rank2_int(v1, v2, p):
            return TransversalityEvidence(True, 1, pt, scanned)
    if ext_degree == 1:
        return TransversalityEvidence(False, 1, None, scanned)
    if ext_degree != 2:
        raise ValueError("ext_degree must be 1 or 2")
    ext = ExtField2(field)
    grid = ExtGrid(ext)
    zero = (0, 0)
    for pt in line.ext_points(ext):
        if all(b == 0 for _, b in pt):  # rational point, already scanned
            continue
        scanned += 1
        v1 = [grid.eval_at_point(g, pt) if g is not None else zero for g in grads_f]
        v2 = [grid.eval_at_point(g, pt) if g is not None else zero for g in grads_s]
        for a in range(4):
            for b in range(a + 1, 4):
                if ext.sub(ext.mul(v1[a], v2[b]), ext.mul(v1[b], v2[a])) != zero:
                    return TransversalityEvidence(True, 2, pt, scanned)
    return TransversalityEvidence(False, 2, None, scanned)


def pairwise_intersection_sum(cfg: LineConfiguration) -> int:
    """Sum of the incidence matrix over ordered pairs of distinct lines."""
    return int(cfg.incidence.sum())
