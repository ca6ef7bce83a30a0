"""Points, lines and singular loci in P^3 over a prime field.

Lines are kept in reduced row echelon form, which gives every line a
unique 2x4 representative and splits the line set into six classes by
pivot columns, of sizes p^4, p^3, p^2, p^2, p and 1 (total
(p^2+1)(p^2+p+1)).  Singular-point search over the quadratic extension
exploits that every point of P^3(F_{p^2}) lies on a line defined over
F_p, so for cubic surfaces it reduces to one resultant filter per
rational line instead of a scan of (p^2)^3 affine cells.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import product

import numpy as np

from .evalgrid import ExtGrid, common_zeros, eval_on_arrays
from .ffield import ExtField2, PrimeField, is_prime
from .polyform import HomogeneousForm

__all__ = [
    "canonical_point",
    "enumerate_points",
    "ProjLine",
    "PIVOT_CLASSES",
    "line_class_free_columns",
    "rref2x4",
    "enumerate_lines",
    "lines_meet",
    "singular_points",
]

PIVOT_CLASSES = ((0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3))


def canonical_point(vec, p: int) -> tuple[int, int, int, int]:
    """Scale a nonzero coordinate vector so its first nonzero entry is 1."""
    v = [x % p for x in vec]
    for x in v:
        if x:
            inv = pow(x, p - 2, p)
            return tuple(y * inv % p for y in v)
    raise ValueError("zero vector does not define a projective point")


def enumerate_points(p: int) -> list[tuple[int, int, int, int]]:
    """All p^3 + p^2 + p + 1 points of P^3(F_p), canonical representatives."""
    if not is_prime(p):
        raise ValueError(f"{p} is not prime")
    pts = [(1, a, b, c) for a in range(p) for b in range(p) for c in range(p)]
    pts += [(0, 1, b, c) for b in range(p) for c in range(p)]
    pts += [(0, 0, 1, c) for c in range(p)]
    pts.append((0, 0, 0, 1))
    return pts


def line_class_free_columns(pivots) -> tuple[list[int], list[int]]:
    """Free column positions of the two echelon rows for a pivot pair."""
    i, j = pivots
    row1 = [k for k in range(i + 1, 4) if k != j]
    row2 = [k for k in range(j + 1, 4)]
    return row1, row2


def rref2x4(p: int, u, v) -> tuple[tuple[int, ...], tuple[int, ...]]:
    """Reduced row echelon form of the span of two vectors; rank 2 required."""
    rows = [[x % p for x in u], [x % p for x in v]]
    pivots = []
    r = 0
    for col in range(4):
        piv = next((k for k in range(r, 2) if rows[k][col]), None)
        if piv is None:
            continue
        rows[r], rows[piv] = rows[piv], rows[r]
        inv = pow(rows[r][col], p - 2, p)
        rows[r] = [x * inv % p for x in rows[r]]
        for k in range(2):
            if k != r and rows[k][col]:
                c = rows[k][col]
                rows[k] = [(a - c * b) % p for a, b in zip(rows[k], rows[r])]
        pivots.append(col)
        r += 1
        if r == 2:
            break
    if r < 2:
        raise ValueError("vectors do not span a line")
    return tuple(rows[0]), tuple(rows[1])


@dataclass(frozen=True)
class ProjLine:
    """A line in P^3(F_p), stored by its echelon basis rows."""

    p: int
    rows: tuple[tuple[int, ...], tuple[int, ...]]

    @classmethod
    def from_span(cls, p: int, u, v) -> "ProjLine":
        return cls(p, rref2x4(p, u, v))

    @property
    def pivots(self) -> tuple[int, int]:
        r1, r2 = self.rows
        return (next(i for i, x in enumerate(r1) if x),
                next(i for i, x in enumerate(r2) if x))

    def points(self) -> list[tuple[int, int, int, int]]:
        """The p + 1 points of the line, canonical representatives."""
        p = self.p
        r1, r2 = self.rows
        pts = [tuple((a + t * b) % p for a, b in zip(r1, r2)) for t in range(p)]
        pts.append(r2)
        return pts

    def ext_points(self, ext: ExtField2) -> list[tuple[tuple[int, int], ...]]:
        """The p^2 + 1 points of the line over F_{p^2}, as (a, b) pairs."""
        p = self.p
        r1, r2 = self.rows
        pts = []
        for ta in range(p):
            for tb in range(p):
                pts.append(tuple(
                    ((a + ta * b) % p, tb * b % p) for a, b in zip(r1, r2)
                ))
        pts.append(tuple((b, 0) for b in r2))
        return pts

    def __str__(self) -> str:
        return f"[{' '.join(map(str, self.rows[0]))} | {' '.join(map(str, self.rows[1]))}]"


def enumerate_lines(p: int):
    """Yield every line of P^3(F_p) once, grouped by pivot class."""
    if not is_prime(p):
        raise ValueError(f"{p} is not prime")
    for piv in PIVOT_CLASSES:
        i, j = piv
        free1, free2 = line_class_free_columns(piv)
        for vals1 in product(range(p), repeat=len(free1)):
            r1 = [0, 0, 0, 0]
            r1[i] = 1
            for col, v in zip(free1, vals1):
                r1[col] = v
            for vals2 in product(range(p), repeat=len(free2)):
                r2 = [0, 0, 0, 0]
                r2[j] = 1
                for col, v in zip(free2, vals2):
                    r2[col] = v
                yield ProjLine(p, (tuple(r1), tuple(r2)))


def _det3(m, p):
    return (
        m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1])
        - m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0])
        + m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0])
    ) % p


def lines_meet(l1: ProjLine, l2: ProjLine) -> bool:
    """Whether two lines intersect (equivalently, their 4 rows are dependent)."""
    if l1.p != l2.p:
        raise ValueError("lines live over different fields")
    p = l1.p
    m = [*l1.rows, *l2.rows]
    det = 0
    sign = 1
    for col in range(4):
        minor = [[row[c] for c in range(4) if c != col] for row in m[1:]]
        det = (det + sign * m[0][col] * _det3(minor, p)) % p
        sign = -sign
    return det % p == 0


def _class_grid_chunks(p: int, pivots):
    """Yield (R1, R2) int64 arrays covering one pivot class of lines.

    Chunked over the first free parameter so no chunk exceeds p^3 rows.
    """
    i, j = pivots
    free1, free2 = line_class_free_columns(pivots)
    slots = [(0, c) for c in free1] + [(1, c) for c in free2]
    t = len(slots)

    def build(n, fixed=None):
        vary = slots[1:] if fixed is not None else slots
        grids = np.indices((p,) * len(vary), dtype=np.int64).reshape(len(vary), -1) \
            if vary else np.zeros((0, 1), dtype=np.int64)
        n = grids.shape[1] if vary else 1
        r1 = np.zeros((n, 4), dtype=np.int64)
        r2 = np.zeros((n, 4), dtype=np.int64)
        r1[:, i] = 1
        r2[:, j] = 1
        if fixed is not None:
            row, col = slots[0]
            (r1 if row == 0 else r2)[:, col] = fixed
        for (row, col), g in zip(vary, grids):
            (r1 if row == 0 else r2)[:, col] = g
        return r1, r2

    if t == 4:
        for v in range(p):
            yield build(p ** 3, fixed=v)
    else:
        yield build(p ** t)


def _restrict_quadric(g: HomogeneousForm, r1, r2):
    """Coefficients (a, b, c) of g(s*r1 + t*r2) = a s^2 + b st + c t^2.

    r1, r2 are (n, 4) arrays of rational vectors; the polar identity
    b = g(r1 + r2) - g(r1) - g(r2) holds in every characteristic.
    """
    p = g.field.p
    a = eval_on_arrays(g, r1[:, 0], r1[:, 1], r1[:, 2], r1[:, 3])
    c = eval_on_arrays(g, r2[:, 0], r2[:, 1], r2[:, 2], r2[:, 3])
    sm = (r1 + r2) % p
    b = (eval_on_arrays(g, sm[:, 0], sm[:, 1], sm[:, 2], sm[:, 3]) - a - c) % p
    return a, b, c


def _binary_quadratic_roots(a: int, b: int, c: int, ext: ExtField2):
    """Roots (s, t) in P^1(F_{p^2}) of a s^2 + b st + c t^2, pair coords."""
    p = ext.p
    roots = []
    if a:
        disc = (b * b - 4 * a * c) % p
        sq = ext.sqrt(disc)
        inv2a = pow(2 * a, p - 2, p)
        for sgn in (1, -1):
            num = ((-b + sgn * sq[0]) % p, sgn * sq[1] % p)
            s = (num[0] * inv2a % p, num[1] * inv2a % p)
            roots.append((s, (1, 0)))
            if sq == (0, 0):
                break
    elif b:
        roots.append(((1, 0), (0, 0)))
        roots.append((((-c) * pow(b, p - 2, p) % p, 0), (1, 0)))
    elif c:
        roots.append(((1, 0), (0, 0)))
    else:
        raise ValueError("zero binary form has no root list")
    return roots


def _canonical_ext_point(coords, ext: ExtField2):
    for x in coords:
        if x != (0, 0):
            inv = ext.inv(x)
            return tuple(ext.mul(inv, y) for y in coords)
    raise ValueError("zero vector")


def _point_on_line(r1, r2, s, t, ext: ExtField2):
    p = ext.p
    return tuple(
        ((s[0] * u + t[0] * v) % p, (s[1] * u + t[1] * v) % p)
        for u, v in zip(r1, r2)
    )


def _sweep_cubic_ext2(f: HomogeneousForm) -> list:
    """All singular points of a cubic surface over F_{p^2}, by line sweep."""
    field = f.field
    p = field.p
    ext = ExtField2(field)
    grads = [g for g in f.gradient() if g is not None]
    check_f = f.degree % p == 0  # Euler's relation no longer forces f = 0
    grid = ExtGrid(ext)
    found: set = set()

    def _eval_vec(g: HomogeneousForm, vec) -> int:
        total = 0
        for mon in g.monomials:
            term = mon.coeff
            for e, x in zip(mon.exps, vec):
                if e:
                    term = term * pow(x, e, p) % p
            total += term
        return total % p

    def refine_line(r1v, r2v):
        r1 = tuple(int(x) for x in r1v)
        r2 = tuple(int(x) for x in r2v)
        restr = []
        for g in grads:
            av = _eval_vec(g, r1)
            cv = _eval_vec(g, r2)
            sm = tuple((u + v) % p for u, v in zip(r1, r2))
            bv = (_eval_vec(g, sm) - av - cv) % p
            restr.append((av, bv, cv))
        live = [q for q in restr if q != (0, 0, 0)]
        if not live:
            # every point of the line kills the whole gradient
            line = ProjLine(p, (r1, r2))
            for pt in line.ext_points(ext):
                if not check_f or grid.eval_at_point(f, pt) == (0, 0):
                    found.add(pt)
            return
        anchor, rest = live[0], live[1:]
        for s, t in _binary_quadratic_roots(*anchor, ext):
            ok = True
            for a, b, c in rest:
                s2 = ext.mul(s, s)
                st = ext.mul(s, t)
                t2 = ext.mul(t, t)
                val = ext.add(
                    ext.add(ext.scalar_mul(a, s2), ext.scalar_mul(b, st)),
                    ext.scalar_mul(c, t2),
                )
                if val != (0, 0):
                    ok = False
                    break
            if not ok:
                continue
            pt = _canonical_ext_point(_point_on_line(r1, r2, s, t, ext), ext)
            if check_f and grid.eval_at_point(f, pt) != (0, 0):
                continue
            found.add(pt)

    for piv in PIVOT_CLASSES:
        for r1, r2 in _class_grid_chunks(p, piv):
            quads = [_restrict_quadric(g, r1, r2) for g in grads]
            a1, b1, c1 = quads[0]
            mask = np.ones(len(r1), dtype=bool)
            for a2, b2, c2 in quads[1:]:
                res = ((a1 * c2 - a2 * c1) % p) ** 2 \
                    - ((a1 * b2 - a2 * b1) % p) * ((b1 * c2 - b2 * c1) % p)
                mask &= res % p == 0
                if not mask.any():
                    break
            if not mask.any():
                continue
            for idx in np.nonzero(mask)[0]:
                refine_line(r1[idx], r2[idx])

    return sorted(found)


def singular_points(f: HomogeneousForm, ext_degree: int = 1) -> list:
    """Singular points of the surface f = 0.

    ext_degree 1 searches P^3(F_p) and returns integer coordinate tuples;
    ext_degree 2 searches P^3(F_{p^2}) and returns tuples of (a, b) pairs
    with rational points embedded as (a, 0).  Cubics over the extension
    take the line-sweep route; other degrees fall back to a full grid
    scan, which is only viable at small p.
    """
    field = f.field
    forms = [g for g in f.gradient() if g is not None]
    if f.degree % field.p == 0:
        forms.append(f)
    if ext_degree == 1:
        pts = common_zeros(forms, field.p)
        return sorted(tuple(int(x) for x in row) for row in pts)
    if ext_degree != 2:
        raise ValueError("ext_degree must be 1 or 2")
    if f.degree == 3:
        return _sweep_cubic_ext2(f)
    grid = ExtGrid(ExtField2(field))
    return sorted(grid.common_zeros(forms))
