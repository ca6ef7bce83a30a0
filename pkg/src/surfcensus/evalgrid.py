"""Vectorised form evaluation over projective coordinate strata.

P^3(F_p) is enumerated through its four canonical strata (leading
coordinate 1, earlier coordinates 0), sized p^3, p^2, p and 1.  A form
restricted to a stratum splits per monomial into a factor depending on
the first free coordinate and a factor on the trailing grid, so counting
zeros is a per-slice multiply-accumulate over power tables followed by a
single modular reduction.  Everything stays in int64; intermediate sums
are bounded by (number of monomials) * p^2, far below overflow.

The same machinery runs over F_{p^2} with elements packed as integer
codes a*p + b; see :class:`ExtGrid`.
"""

from __future__ import annotations

from concurrent.futures import ThreadPoolExecutor

import numpy as np

from .ffield import ExtField2, PrimeField
from .polyform import HomogeneousForm

__all__ = [
    "eval_on_arrays",
    "eval_at_points",
    "count_zeros",
    "zero_points",
    "common_zeros",
    "ExtGrid",
]

# Generic grid censuses materialise p^2-sized slices; cap the modulus so a
# single slice stays comfortably in memory and int64 products cannot overflow.
MAX_GRID_PRIME = 2999


def _check_size(p: int):
    if p > MAX_GRID_PRIME:
        raise ValueError(f"grid evaluation supports p <= {MAX_GRID_PRIME}, got {p}")


def eval_on_arrays(f: HomogeneousForm, c0, c1, c2, c3) -> np.ndarray:
    """Evaluate f on broadcastable int arrays of canonical residues."""
    p = f.field.p
    coords = (c0, c1, c2, c3)
    total = None
    for mon in f.monomials:
        term = None
        for e, arr in zip(mon.exps, coords):
            if not e:
                continue
            fac = f.field.pow_table(e)[arr]
            term = fac if term is None else term * fac % p
        if term is None:  # constant monomial cannot occur in a form
            raise AssertionError("monomial without variables")
        term = term * mon.coeff % p
        total = term if total is None else total + term
    return total % p


def eval_at_points(f: HomogeneousForm, pts: np.ndarray) -> np.ndarray:
    """Evaluate f at an (N, 4) array of points."""
    pts = np.asarray(pts, dtype=np.int64)
    if pts.size == 0:
        return np.zeros(0, dtype=np.int64)
    return eval_on_arrays(f, pts[:, 0], pts[:, 1], pts[:, 2], pts[:, 3])


def _stratum_monomials(f: HomogeneousForm, s: int):
    """Monomials surviving on the stratum with leading coordinate s."""
    return [m for m in f.monomials if all(m.exps[i] == 0 for i in range(s))]


def _scan_stratum0(f: HomogeneousForm, threads: int, collect: bool):
    """Count (and optionally collect) zeros on the stratum (1, *, *, *)."""
    field = f.field
    p = field.p
    mons = f.monomials
    k = len(mons)
    # factor tables: per monomial, the x1 scalar vector and the (x2, x3) grid
    amat = np.empty((k, p), dtype=np.int64)
    grids = []
    for j, m in enumerate(mons):
        amat[j] = m.coeff * field.pow_table(m.exps[1]) % p
        grids.append(
            field.pow_table(m.exps[2])[:, None] * field.pow_table(m.exps[3])[None, :] % p
        )

    def run(lo: int, hi: int):
        acc = np.empty((p, p), dtype=np.int64)
        tmp = np.empty((p, p), dtype=np.int64)
        count = 0
        found = [] if collect else None
        for x1 in range(lo, hi):
            np.multiply(grids[0], amat[0, x1], out=acc)
            for j in range(1, k):
                np.multiply(grids[j], amat[j, x1], out=tmp)
                acc += tmp
            acc %= p
            if collect:
                x2, x3 = np.nonzero(acc == 0)
                if x2.size:
                    pts = np.empty((x2.size, 4), dtype=np.int64)
                    pts[:, 0] = 1
                    pts[:, 1] = x1
                    pts[:, 2] = x2
                    pts[:, 3] = x3
                    found.append(pts)
                count += x2.size
            else:
                count += int(np.count_nonzero(acc == 0))
        return count, found

    if threads <= 1:
        total, found = run(0, p)
    else:
        bounds = np.linspace(0, p, threads + 1, dtype=int)
        with ThreadPoolExecutor(max_workers=threads) as pool:
            parts = list(pool.map(lambda ab: run(*ab), zip(bounds[:-1], bounds[1:])))
        total = sum(c for c, _ in parts)
        found = [pts for _, chunk in parts for pts in (chunk or [])] if collect else None
    return total, found


def _scan_tail_strata(f: HomogeneousForm, collect: bool):
    """Zeros on the strata (0,1,*,*), (0,0,1,*) and (0,0,0,1)."""
    field = f.field
    p = field.p
    total = 0
    found = [] if collect else None

    mons = _stratum_monomials(f, 1)
    if mons:
        acc = np.zeros((p, p), dtype=np.int64)
        for m in mons:
            coef = m.coeff * 1  # x1 = 1
            acc += coef * (
                field.pow_table(m.exps[2])[:, None] * field.pow_table(m.exps[3])[None, :] % p
            )
        acc %= p
        zero_mask = acc == 0
    else:
        zero_mask = np.ones((p, p), dtype=bool)
    total += int(zero_mask.sum())
    if collect and zero_mask.any():
        x2, x3 = np.nonzero(zero_mask)
        pts = np.zeros((x2.size, 4), dtype=np.int64)
        pts[:, 1] = 1
        pts[:, 2] = x2
        pts[:, 3] = x3
        found.append(pts)

    mons = _stratum_monomials(f, 2)
    if mons:
        vec = np.zeros(p, dtype=np.int64)
        for m in mons:
            vec += m.coeff * field.pow_table(m.exps[3])
        vec %= p
        zv = vec == 0
    else:
        zv = np.ones(p, dtype=bool)
    total += int(zv.sum())
    if collect and zv.any():
        (x3,) = np.nonzero(zv)
        pts = np.zeros((x3.size, 4), dtype=np.int64)
        pts[:, 2] = 1
        pts[:, 3] = x3
        found.append(pts)

    mons = _stratum_monomials(f, 3)
    const = sum(m.coeff for m in mons) % p
    if const == 0:
        total += 1
        if collect:
            found.append(np.array([[0, 0, 0, 1]], dtype=np.int64))

    return total, found


def count_zeros(f: HomogeneousForm, threads: int = 1) -> int:
    """Exact number of points of f = 0 in P^3(F_p)."""
    _check_size(f.field.p)
    c0, _ = _scan_stratum0(f, threads, collect=False)
    c1, _ = _scan_tail_strata(f, collect=False)
    return c0 + c1


def zero_points(f: HomogeneousForm, threads: int = 1) -> np.ndarray:
    """All points of f = 0 in P^3(F_p), canonical representatives, (N, 4)."""
    _check_size(f.field.p)
    _, found0 = _scan_stratum0(f, threads, collect=True)
    _, found1 = _scan_tail_strata(f, collect=True)
    chunks = (found0 or []) + (found1 or [])
    if not chunks:
        return np.zeros((0, 4), dtype=np.int64)
    return np.concatenate(chunks, axis=0)


def common_zeros(forms, p: int) -> np.ndarray:
    """Points of P^3(F_p) where every given form vanishes.

    Entries that are None (identically zero forms) are skipped; if all
    entries are None every point qualifies, which is rejected as a usage
    error rather than enumerated.
    """
    live = [g for g in forms if g is not None]
    if not live:
        raise ValueError("no nonzero forms given")
    pts = zero_points(live[0])
    for g in live[1:]:
        if pts.size == 0:
            break
        pts = pts[eval_at_points(g, pts) == 0]
    return pts


class ExtGrid:
    """Vectorised F_{p^2} arithmetic on elements packed as codes a*p + b."""

    def __init__(self, ext: ExtField2):
        self.ext = ext
        self.p = ext.p
        self.n = ext.n
        q = self.p * self.p
        self.q = q
        codes = np.arange(q, dtype=np.int64)
        self.all_a = codes // self.p
        self.all_b = codes % self.p
        self._pow: dict[int, tuple[np.ndarray, np.ndarray]] = {}

    def encode(self, x) -> int:
        return (x[0] % self.p) * self.p + x[1] % self.p

    def decode(self, code: int) -> tuple[int, int]:
        return (int(code) // self.p, int(code) % self.p)

    def _mul(self, xa, xb, ya, yb):
        p, n = self.p, self.n
        return (xa * ya + n * xb * yb) % p, (xa * yb + xb * ya) % p

    def pow_tables(self, e: int):
        """Component tables of t**e over all q codes (0**0 == 1)."""
        tabs = self._pow.get(e)
        if tabs is None:
            if e == 0:
                ra = np.ones(self.q, dtype=np.int64)
                rb = np.zeros(self.q, dtype=np.int64)
            elif e == 1:
                ra, rb = self.all_a.copy(), self.all_b.copy()
            else:
                ha, hb = self.pow_tables(e // 2)
                ra, rb = self._mul(ha, hb, ha, hb)
                if e % 2:
                    ra, rb = self._mul(ra, rb, self.all_a, self.all_b)
            ra.setflags(write=False)
            rb.setflags(write=False)
            tabs = self._pow[e] = (ra, rb)
        return tabs

    def eval_on_codes(self, f: HomogeneousForm, codes4) -> tuple[np.ndarray, np.ndarray]:
        """Evaluate f at coordinates given as broadcastable code arrays."""
        p = self.p
        ta = tb = None
        for mon in f.monomials:
            va, vb = None, None
            for e, codes in zip(mon.exps, codes4):
                if not e:
                    continue
                ea, eb = self.pow_tables(e)
                fa, fb = ea[codes], eb[codes]
                if va is None:
                    va, vb = fa, fb
                else:
                    va, vb = self._mul(va, vb, fa, fb)
            va = va * mon.coeff % p
            vb = vb * mon.coeff % p
            if ta is None:
                ta, tb = va, vb
            else:
                ta = ta + va
                tb = tb + vb
        return ta % p, tb % p

    def eval_at_point(self, f: HomogeneousForm, point) -> tuple[int, int]:
        """Evaluate f at a single point with (a, b) pair coordinates."""
        ext = self.ext
        total = (0, 0)
        for mon in f.monomials:
            term = (mon.coeff % self.p, 0)
            for e, x in zip(mon.exps, point):
                if e:
                    term = ext.mul(term, ext.pow(x, e))
            total = ext.add(total, term)
        return total

    def common_zeros(self, forms) -> list[tuple[tuple[int, int], ...]]:
        """Points of P^3(F_{p^2}) where all the forms vanish.

        Scans the full (p^2)^3 leading stratum slice by slice, so this is
        only sensible at small p; canonical representatives are returned
        as 4-tuples of (a, b) pairs.
        """
        live = [g for g in forms if g is not None]
        if not live:
            raise ValueError("no nonzero forms given")
        q = self.q
        first, rest = live[0], live[1:]
        hits: list[tuple[tuple[int, int], ...]] = []

        one = self.encode((1, 0))

        def refine(codes4_cols):
            # codes4_cols: (N, 4) int64 array of code coordinates
            keep = np.ones(len(codes4_cols), dtype=bool)
            for g in rest:
                if not keep.any():
                    break
                sub = codes4_cols[keep]
                va, vb = self.eval_on_codes(g, (sub[:, 0], sub[:, 1], sub[:, 2], sub[:, 3]))
                ok = (va == 0) & (vb == 0)
                idx = np.nonzero(keep)[0]
                keep[idx[~ok]] = False
            for row in codes4_cols[keep]:
                hits.append(tuple(self.decode(c) for c in row))

        # stratum (1, *, *, *): slice over x1 codes
        grid2 = np.broadcast_to(np.arange(q, dtype=np.int64)[:, None], (q, q))
        grid3 = np.broadcast_to(np.arange(q, dtype=np.int64)[None, :], (q, q))
        for x1 in range(q):
            c1 = np.full((q, q), x1, dtype=np.int64)
            va, vb = self.eval_on_codes(first, (np.full((q, q), one), c1, grid2, grid3))
            mask = (va == 0) & (vb == 0)
            if mask.any():
                x2, x3 = np.nonzero(mask)
                cols = np.empty((x2.size, 4), dtype=np.int64)
                cols[:, 0] = one
                cols[:, 1] = x1
                cols[:, 2] = x2
                cols[:, 3] = x3
                refine(cols)

        # stratum (0, 1, *, *)
        va, vb = self.eval_on_codes(
            first, (np.zeros((q, q), np.int64), np.full((q, q), one), grid2, grid3)
        )
        mask = (va == 0) & (vb == 0)
        if mask.any():
            x2, x3 = np.nonzero(mask)
            cols = np.empty((x2.size, 4), dtype=np.int64)
            cols[:, 0] = 0
            cols[:, 1] = one
            cols[:, 2] = x2
            cols[:, 3] = x3
            refine(cols)

        # stratum (0, 0, 1, *)
        vec = np.arange(q, dtype=np.int64)
        va, vb = self.eval_on_codes(
            first, (np.zeros(q, np.int64), np.zeros(q, np.int64), np.full(q, one), vec)
        )
        mask = (va == 0) & (vb == 0)
        if mask.any():
            (x3,) = np.nonzero(mask)
            cols = np.zeros((x3.size, 4), dtype=np.int64)
            cols[:, 2] = one
            cols[:, 3] = x3
            refine(cols)

        # stratum (0, 0, 0, 1)
        pt = ((0, 0), (0, 0), (0, 0), (1, 0))
        if all(
            self.eval_at_point(g, pt) == (0, 0) for g in live
        ):
            hits.append(pt)
        return hits
