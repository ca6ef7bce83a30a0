"""Exact arithmetic in rings of cyclotomic integers, and vanishing-sum
searches for roots of unity over prime fields.

A sum of at most k d-th roots of unity has norm at most k^phi(d) in
absolute value (each complex embedding has modulus at most k), so the
primes p = 1 (mod d) for which extra vanishing sums appear in F_p all
divide the norm of some nonzero sum.  Enumerating multisets of
exponents up to global rotation and factoring resultant-computed norms
therefore yields a finite, certified search.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from itertools import combinations_with_replacement

from .ffield import PrimeField, _prime_factors

__all__ = [
    "cyclotomic_polynomial",
    "euler_phi",
    "CycInt",
    "cyc_norm",
    "zero_sums_mod_p",
    "has_only_trivial_vanishing_sums",
    "exceptional_primes",
    "norm_witnesses",
]


def _poly_div_exact(num: list[int], den: list[int]) -> list[int]:
    """Divide integer polynomials (ascending coefficients), den monic."""
    num = list(num)
    out = [0] * (len(num) - len(den) + 1)
    for i in range(len(out) - 1, -1, -1):
        c = num[i + len(den) - 1]
        out[i] = c
        if c:
            for j, dc in enumerate(den):
                num[i + j] -= c * dc
    assert all(x == 0 for x in num[: len(den) - 1])
    return out


@lru_cache(maxsize=None)
def cyclotomic_polynomial(d: int) -> tuple[int, ...]:
    """Coefficients of Phi_d, ascending, via exact division of x^d - 1."""
    if d < 1:
        raise ValueError("order must be positive")
    if d == 1:
        return (-1, 1)
    poly = [-1] + [0] * (d - 1) + [1]
    for e in range(1, d):
        if d % e == 0:
            poly = _poly_div_exact(poly, list(cyclotomic_polynomial(e)))
    return tuple(poly)


def euler_phi(d: int) -> int:
    return len(cyclotomic_polynomial(d)) - 1


@dataclass(frozen=True)
class CycInt:
    """An element of Z[zeta_d]: integer polynomial in zeta, reduced."""

    d: int
    coeffs: tuple[int, ...]

    def __post_init__(self):
        phi = euler_phi(self.d)
        if len(self.coeffs) != phi:
            raise ValueError(f"need exactly {phi} coefficients for order {self.d}")

    @classmethod
    def from_coeffs(cls, d: int, coeffs) -> "CycInt":
        """Build from a coefficient list of any length, reducing mod Phi_d."""
        return cls(d, _reduce_mod_phi(d, list(coeffs)))

    @classmethod
    def from_exponents(cls, d: int, exponents) -> "CycInt":
        """The sum of zeta_d**e over the exponent multiset."""
        acc = [0] * d
        for e in exponents:
            acc[e % d] += 1
        return cls.from_coeffs(d, acc)

    def is_zero(self) -> bool:
        return all(c == 0 for c in self.coeffs)

    def __add__(self, other: "CycInt") -> "CycInt":
        if self.d != other.d:
            raise ValueError("mixed root orders")
        return CycInt(self.d, tuple(a + b for a, b in zip(self.coeffs, other.coeffs)))

    def __mul__(self, other: "CycInt") -> "CycInt":
        if self.d != other.d:
            raise ValueError("mixed root orders")
        a, b = self.coeffs, other.coeffs
        prod = [0] * (len(a) + len(b) - 1)
        for i, x in enumerate(a):
            if x:
                for j, y in enumerate(b):
                    prod[i + j] += x * y
        return CycInt.from_coeffs(self.d, prod)


def _reduce_mod_phi(d: int, coeffs: list[int]) -> tuple[int, ...]:
    phi_poly = list(cyclotomic_polynomial(d))
    deg = len(phi_poly) - 1
    coeffs = list(coeffs) + [0] * max(0, deg - len(coeffs))
    for i in range(len(coeffs) - 1, deg - 1, -1):
        c = coeffs[i]
        if c:
            for j, pc in enumerate(phi_poly):
                coeffs[i - deg + j] -= c * pc
    return tuple(coeffs[:deg])


def _bareiss_det(mat: list[list[int]]) -> int:
    """Fraction-free integer determinant."""
    m = [row[:] for row in mat]
    n = len(m)
    if n == 0:
        return 1
    sign = 1
    prev = 1
    for k in range(n - 1):
        if m[k][k] == 0:
            swap = next((r for r in range(k + 1, n) if m[r][k]), None)
            if swap is None:
                return 0
            m[k], m[swap] = m[swap], m[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                m[i][j] = (m[i][j] * m[k][k] - m[i][k] * m[k][j]) // prev
            m[i][k] = 0
        prev = m[k][k]
    return sign * m[-1][-1]


def cyc_norm(a: CycInt) -> int:
    """Field norm of a, as the resultant of Phi_d with a's polynomial.

    Phi_d is monic, so the resultant equals the product of a evaluated
    at all primitive d-th roots of unity, which is the norm.
    """
    f = list(cyclotomic_polynomial(a.d))
    n = len(f) - 1
    g = list(a.coeffs)
    while g and g[-1] == 0:
        g.pop()
    if not g:
        return 0
    m = len(g) - 1
    if m == 0:
        return g[0] ** n
    size = n + m
    syl = [[0] * size for _ in range(size)]
    frow = f[::-1]
    grow = g[::-1]
    for r in range(m):
        syl[r][r:r + n + 1] = frow
    for r in range(n):
        syl[m + r][r:r + m + 1] = grow
    return _bareiss_det(syl)


def zero_sums_mod_p(d: int, p: int, k: int) -> list[tuple[int, ...]]:
    """All multisets of 1..k d-th roots of unity in F_p that sum to 0.

    Multisets are returned as sorted tuples of field elements.
    """
    field = PrimeField(p)
    if (p - 1) % d:
        raise ValueError("requires p = 1 (mod d)")
    roots = sorted(field.dth_roots(d))
    out = []
    for size in range(1, k + 1):
        for combo in combinations_with_replacement(roots, size):
            if sum(combo) % p == 0:
                out.append(combo)
    return out


def has_only_trivial_vanishing_sums(p: int, d: int = 5, k: int = 5) -> bool:
    """True when the only vanishing sum of <= k roots is the full orbit.

    The sum of all d of the d-th roots of unity vanishes in every F_p
    with p = 1 (mod d); that one (present only when k >= d) is trivial.
    Any other vanishing multiset is an extra mod-p identity.
    """
    sums = zero_sums_mod_p(d, p, k)
    trivial = set()
    if k >= d:
        trivial.add(tuple(sorted(PrimeField(p).dth_roots(d))))
    return set(sums) == trivial


def _nonzero_multiset_norms(d: int, k: int):
    """Yield (exponent multiset, norm) over rotation classes of size <= k.

    Multisets are anchored at exponent 0 (global rotation by a root of
    unity multiplies the sum by a unit and fixes the norm); multisets
    whose sum already vanishes in Z[zeta_d] are skipped.
    """
    for size in range(1, k + 1):
        for rest in combinations_with_replacement(range(d), size - 1):
            exps = (0,) + rest
            alpha = CycInt.from_exponents(d, exps)
            if alpha.is_zero():
                continue
            yield exps, cyc_norm(alpha)


def exceptional_primes(d: int, k: int, residue: int = 1) -> set[int]:
    """Primes p = residue (mod d) that admit extra vanishing root sums.

    Enumerates exponent multisets of size <= k up to global rotation
    and factors each nonzero sum's norm.  Only primes up to k^phi(d)
    can divide a nonzero norm, so the search is finite.
    """
    if d < 2 or k < 1:
        raise ValueError("need d >= 2 and k >= 1")
    bound = k ** euler_phi(d)
    out: set[int] = set()
    for _, norm in _nonzero_multiset_norms(d, k):
        for q in _prime_factors(abs(norm)):
            if q <= bound and q % d == residue:
                out.add(q)
    return out


def norm_witnesses(d: int, k: int) -> dict[int, list[tuple[tuple[int, ...], int]]]:
    """For each exceptional prime, the multisets whose norms it divides.

    Returns {prime: [(exponent multiset, norm), ...]} sorted by |norm|
    then multiset; one entry per distinct |norm| value.
    """
    bound = k ** euler_phi(d)
    hits: dict[int, dict[int, tuple[tuple[int, ...], int]]] = {}
    for exps, norm in _nonzero_multiset_norms(d, k):
        for q in _prime_factors(abs(norm)):
            if q <= bound and q % d == 1:
                hits.setdefault(q, {}).setdefault(abs(norm), (exps, norm))
    return {q: [by_abs[a] for a in sorted(by_abs)]
            for q, by_abs in sorted(hits.items())}
