"""Exact arithmetic over the prime field F_p and its quadratic extension.

Conventions used throughout the package:

* elements of F_p are plain ints kept in the canonical range [0, p);
* elements of F_{p^2} are pairs (a, b) meaning a + b*theta, where
  theta^2 equals the least quadratic non-residue mod p;
* the power map t -> t^e is materialised per exponent as a length-p
  numpy table, so evaluating a sparse form over a coordinate grid turns
  into a handful of table gathers.

A PrimeField instance is logically immutable: the lazy caches only ever
gain entries that any thread would compute identically, so instances are
safe to share across workers.
"""

from __future__ import annotations

import threading
from functools import cached_property

import numpy as np

__all__ = [
    "is_prime",
    "primes_below",
    "PrimeField",
    "ExtField2",
    "roots_of_unity",
    "is_dth_power",
]

# Witness set making Miller-Rabin deterministic far beyond 2^64.
_MR_WITNESSES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37)


def is_prime(n: int) -> bool:
    """Deterministic Miller-Rabin primality test (exact below 3.3e24)."""
    if n < 2:
        return False
    for q in _MR_WITNESSES:
        if n % q == 0:
            return n == q
    d, r = n - 1, 0
    while d % 2 == 0:
        d //= 2
        r += 1
    for a in _MR_WITNESSES:
        x = pow(a, d, n)
        if x in (1, n - 1):
            continue
        for _ in range(r - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


def primes_below(n: int) -> list[int]:
    """All primes < n by a plain sieve."""
    if n <= 2:
        return []
    mark = bytearray([1]) * n
    mark[0] = mark[1] = 0
    for q in range(2, int(n ** 0.5) + 1):
        if mark[q]:
            mark[q * q :: q] = bytearray(len(mark[q * q :: q]))
    return [i for i in range(n) if mark[i]]


def _prime_factors(n: int) -> list[int]:
    out = []
    q = 2
    while q * q <= n:
        if n % q == 0:
            out.append(q)
            while n % q == 0:
                n //= q
        q += 1
    if n > 1:
        out.append(n)
    return out


class PrimeField:
    """The field F_p for an odd prime p, with cached power tables."""

    def __init__(self, p: int):
        if not is_prime(p):
            raise ValueError(f"modulus must be prime, got {p}")
        if p == 2:
            raise ValueError("modulus 2 is not supported; an odd prime is required")
        self.p = p
        self._pow_tables: dict[int, np.ndarray] = {}
        self._sqrt_table: dict[int, int] | None = None
        self._lock = threading.RLock()  # pow_table recurses under it

    def __repr__(self):
        return f"PrimeField({self.p})"

    def __eq__(self, other):
        return isinstance(other, PrimeField) and other.p == self.p

    def __hash__(self):
        return hash(("PrimeField", self.p))

    # -- scalar arithmetic ------------------------------------------------

    def add(self, a: int, b: int) -> int:
        return (a + b) % self.p

    def sub(self, a: int, b: int) -> int:
        return (a - b) % self.p

    def mul(self, a: int, b: int) -> int:
        return a * b % self.p

    def neg(self, a: int) -> int:
        return -a % self.p

    def inv(self, a: int) -> int:
        if a % self.p == 0:
            raise ZeroDivisionError("inverse of 0")
        return pow(a, self.p - 2, self.p)

    def pow(self, a: int, e: int) -> int:
        if e == 0:
            return 1  # includes 0**0 == 1, matching the table convention
        return pow(a, e, self.p)

    # -- power tables ------------------------------------------------------

    def pow_table(self, e: int) -> np.ndarray:
        """Length-p int64 table of t**e mod p for t = 0..p-1 (0**0 == 1)."""
        if e < 0:
            raise ValueError("exponent must be non-negative")
        tab = self._pow_tables.get(e)
        if tab is None:
            with self._lock:
                tab = self._pow_tables.get(e)
                if tab is None:
                    if e == 0:
                        tab = np.ones(self.p, dtype=np.int64)
                    elif e == 1:
                        tab = np.arange(self.p, dtype=np.int64)
                    else:
                        half = self.pow_table(e // 2)
                        tab = half * half % self.p
                        if e % 2:
                            tab = tab * np.arange(self.p, dtype=np.int64) % self.p
                    tab.setflags(write=False)
                    self._pow_tables[e] = tab
        return tab

    # -- multiplicative structure -------------------------------------------

    @cached_property
    def generator(self) -> int:
        """The smallest generator of the cyclic group F_p^*."""
        factors = _prime_factors(self.p - 1)
        for g in range(2, self.p):
            if all(pow(g, (self.p - 1) // q, self.p) != 1 for q in factors):
                return g
        raise AssertionError("no generator found")  # unreachable for prime p

    def dth_roots(self, d: int) -> set[int]:
        """All solutions of x^d = 1; requires d | p-1."""
        if d < 1:
            raise ValueError("d must be positive")
        if (self.p - 1) % d != 0:
            raise ValueError(f"d = {d} does not divide p - 1 = {self.p - 1}")
        eta = pow(self.generator, (self.p - 1) // d, self.p)
        out, t = set(), 1
        for _ in range(d):
            out.add(t)
            t = t * eta % self.p
        return out

    def primitive_dth_root(self, d: int) -> int:
        if (self.p - 1) % d != 0:
            raise ValueError(f"d = {d} does not divide p - 1 = {self.p - 1}")
        return pow(self.generator, (self.p - 1) // d, self.p)

    def is_dth_power(self, a: int, d: int) -> bool:
        """Whether a is a d-th power in F_p^*; requires a != 0 and d | p-1."""
        a %= self.p
        if a == 0:
            raise ValueError("a must be a unit")
        if (self.p - 1) % d != 0:
            raise ValueError(f"d = {d} does not divide p - 1 = {self.p - 1}")
        return pow(a, (self.p - 1) // d, self.p) == 1

    @cached_property
    def least_nonresidue(self) -> int:
        for n in range(2, self.p):
            if pow(n, (self.p - 1) // 2, self.p) == self.p - 1:
                return n
        raise AssertionError("no quadratic non-residue found")  # unreachable

    def sqrt(self, a: int) -> int | None:
        """A square root of a in F_p, or None; the smaller root is returned."""
        if self._sqrt_table is None:
            with self._lock:
                if self._sqrt_table is None:
                    table: dict[int, int] = {}
                    for x in range(self.p):
                        table.setdefault(x * x % self.p, x)
                    self._sqrt_table = table
        return self._sqrt_table.get(a % self.p)


class ExtField2:
    """F_{p^2} as pairs (a, b) = a + b*theta with theta^2 a non-residue."""

    def __init__(self, field: PrimeField):
        self.field = field
        self.p = field.p
        self.n = field.least_nonresidue

    ZERO = (0, 0)
    ONE = (1, 0)

    def embed(self, a: int) -> tuple[int, int]:
        return (a % self.p, 0)

    def is_zero(self, x: tuple[int, int]) -> bool:
        return x[0] % self.p == 0 and x[1] % self.p == 0

    def add(self, x, y):
        return ((x[0] + y[0]) % self.p, (x[1] + y[1]) % self.p)

    def sub(self, x, y):
        return ((x[0] - y[0]) % self.p, (x[1] - y[1]) % self.p)

    def neg(self, x):
        return (-x[0] % self.p, -x[1] % self.p)

    def mul(self, x, y):
        a, b = x
        c, d = y
        return ((a * c + self.n * b * d) % self.p, (a * d + b * c) % self.p)

    def scalar_mul(self, c: int, x):
        return (c * x[0] % self.p, c * x[1] % self.p)

    def pow(self, x, e: int):
        if e < 0:
            return self.pow(self.inv(x), -e)
        out, base = (1, 0), x
        while e:
            if e & 1:
                out = self.mul(out, base)
            base = self.mul(base, base)
            e >>= 1
        return out

    def inv(self, x):
        a, b = x
        norm = (a * a - self.n * b * b) % self.p
        if norm == 0:
            raise ZeroDivisionError("inverse of 0 in F_{p^2}")
        s = self.field.inv(norm)
        return (a * s % self.p, -b * s % self.p)

    def frobenius(self, x):
        """x -> x^p, which is conjugation a + b*theta -> a - b*theta."""
        return (x[0] % self.p, -x[1] % self.p)

    def elements(self):
        """Iterate all p^2 elements in (a, b) lexicographic order."""
        for a in range(self.p):
            for b in range(self.p):
                yield (a, b)

    def sqrt(self, a: int) -> tuple[int, int]:
        """A square root in F_{p^2} of a scalar a from F_p (always exists)."""
        r = self.field.sqrt(a)
        if r is not None:
            return (r, 0)
        # a is a non-residue, so a / n is a residue and sqrt(a) = sqrt(a/n)*theta
        r = self.field.sqrt(a * self.field.inv(self.n) % self.p)
        assert r is not None
        return (0, r)


def roots_of_unity(p: int, d: int) -> set[int]:
    """The set of d-th roots of unity in F_p; requires d | p-1."""
    return PrimeField(p).dth_roots(d)


def is_dth_power(a: int, d: int, p: int) -> bool:
    """Whether the unit a is a d-th power in F_p; requires d | p-1."""
    return PrimeField(p).is_dth_power(a, d)
