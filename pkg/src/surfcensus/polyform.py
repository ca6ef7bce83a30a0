"""Sparse homogeneous forms in x0..x3 over a prime field.

A form is a merged, canonically sorted tuple of monomials with nonzero
coefficients in [1, p).  The text grammar accepted by :func:`parse_form`
covers terms like ``3*x0^2*x1`` joined by ``+`` / ``-``, with ``x y z w``
as aliases for ``x0 x1 x2 x3``; ``*`` between factors is optional and
whitespace is ignored.

The two twist constructions are the derived surfaces used everywhere in
the package: for f of degree d with d < p,

* ``twist_s1(f)``  = sum_i  (df/dx_i) * x_i^p            (degree d+p-1)
* ``twist_s2(f)``  = sum_{i,j} (d^2 f/dx_i dx_j) * x_i^p * x_j^p
                                                           (degree d+2p-2)

with the double sum running over ordered pairs (i, j).  Every rational
point of f = 0 automatically lies on both twists: for coordinates in
F_p, x^p = x collapses each twist to a multiple of f via the Euler
relation.  Witnesses that the twists meet f = 0 transversally therefore
only ever live in proper extensions.
"""

from __future__ import annotations

import re
from dataclasses import dataclass

from .ffield import PrimeField

__all__ = [
    "Monomial",
    "HomogeneousForm",
    "FormSyntaxError",
    "FormHomogeneityError",
    "parse_form",
    "form_from_pairs",
    "twist_s1",
    "twist_s2",
]

VAR_ALIASES = {"x": 0, "y": 1, "z": 2, "w": 3, "x0": 0, "x1": 1, "x2": 2, "x3": 3}
VAR_NAMES = ("x0", "x1", "x2", "x3")


class FormSyntaxError(ValueError):
    """Malformed form text; carries the offset of the offending token."""

    def __init__(self, message: str, position: int):
        super().__init__(f"{message} (at position {position})")
        self.position = position


class FormHomogeneityError(ValueError):
    """Terms of two different total degrees; carries both degrees."""

    def __init__(self, deg_a: int, deg_b: int):
        super().__init__(f"form is not homogeneous: found degrees {deg_a} and {deg_b}")
        self.degrees = (deg_a, deg_b)


@dataclass(frozen=True)
class Monomial:
    coeff: int
    exps: tuple[int, int, int, int]

    @property
    def degree(self) -> int:
        return sum(self.exps)


@dataclass(frozen=True)
class HomogeneousForm:
    field: PrimeField
    degree: int
    monomials: tuple[Monomial, ...]

    def evaluate(self, point) -> int:
        """Value at a length-4 coordinate tuple (not all zero)."""
        p = self.field.p
        pt = [c % p for c in point]
        if not any(pt):
            raise ValueError("evaluation point must be a nonzero coordinate tuple")
        total = 0
        for mon in self.monomials:
            term = mon.coeff
            for x, e in zip(pt, mon.exps):
                if e:  # zero exponents contribute factor 1, so 0**0 never arises
                    term = term * pow(x, e, p) % p
            total += term
        return total % p

    def partial(self, i: int) -> "HomogeneousForm | None":
        """Formal partial derivative d/dx_i; None when identically zero."""
        if not 0 <= i <= 3:
            raise ValueError("variable index out of range")
        p = self.field.p
        terms = []
        for mon in self.monomials:
            e = mon.exps[i]
            c = mon.coeff * e % p
            if e == 0 or c == 0:
                continue
            exps = list(mon.exps)
            exps[i] = e - 1
            terms.append((c, tuple(exps)))
        if not terms:
            return None
        return _build(self.field, terms)

    def gradient(self) -> tuple["HomogeneousForm | None", ...]:
        return tuple(self.partial(i) for i in range(4))

    def is_diagonal(self) -> bool:
        """True when every monomial involves exactly one variable."""
        return all(sum(1 for e in m.exps if e) == 1 for m in self.monomials)

    def variables_used(self) -> tuple[int, ...]:
        used = set()
        for m in self.monomials:
            used.update(i for i, e in enumerate(m.exps) if e)
        return tuple(sorted(used))

    def scaled(self, c: int) -> "HomogeneousForm":
        c %= self.field.p
        if c == 0:
            raise ValueError("scaling a form by zero")
        return _build(self.field, [(m.coeff * c, m.exps) for m in self.monomials])

    def permuted(self, perm) -> "HomogeneousForm":
        """Apply a permutation of the four variables (perm[i] = new slot of x_i)."""
        terms = []
        for m in self.monomials:
            exps = [0, 0, 0, 0]
            for i, e in enumerate(m.exps):
                exps[perm[i]] = e
            terms.append((m.coeff, tuple(exps)))
        return _build(self.field, terms)

    def __str__(self):
        parts = []
        for mon in self.monomials:
            factors = [
                f"{VAR_NAMES[i]}^{e}" if e > 1 else VAR_NAMES[i]
                for i, e in enumerate(mon.exps)
                if e
            ]
            body = "*".join(factors)
            parts.append(body if mon.coeff == 1 else f"{mon.coeff}*{body}")
        return " + ".join(parts)


def _build(field: PrimeField, terms) -> HomogeneousForm:
    """Merge raw (coeff, exps) terms into a canonical form.

    Raw terms must already share a total degree (checked by callers with a
    better error position); merged terms with coefficient 0 are dropped and
    a form with no surviving terms is rejected.
    """
    p = field.p
    merged: dict[tuple[int, int, int, int], int] = {}
    degree = None
    for coeff, exps in terms:
        exps = tuple(int(e) for e in exps)
        if len(exps) != 4 or any(e < 0 for e in exps):
            raise ValueError(f"bad exponent quadruple {exps}")
        deg = sum(exps)
        if degree is None:
            degree = deg
        elif deg != degree:
            raise FormHomogeneityError(degree, deg)
        merged[exps] = (merged.get(exps, 0) + coeff) % p
    mons = tuple(
        Monomial(c, e)
        for e, c in sorted(merged.items(), reverse=True)
        if c != 0
    )
    if not mons:
        raise ValueError("form reduces to the zero polynomial")
    if degree == 0:
        raise ValueError("constant forms are not allowed")
    return HomogeneousForm(field, degree, mons)


def form_from_pairs(pairs, p: int) -> HomogeneousForm:
    """Build a form from (coefficient, [e0, e1, e2, e3]) pairs."""
    field = PrimeField(p)
    return _build(field, [(int(c), tuple(e)) for c, e in pairs])


_TOKEN = re.compile(r"\s*(?:(\d+)|([A-Za-z]\w*)|(\^)|(\*)|(\+)|(-)|(.))")


def _tokenize(text: str):
    tokens = []
    text = text.rstrip()
    pos = 0
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if not m:
            break
        num, name, caret, star, plus, minus, junk = m.groups()
        start = m.start(1) if num else m.start(m.lastindex)
        if junk is not None:
            raise FormSyntaxError(f"unexpected character {junk!r}", start)
        if num:
            tokens.append(("num", int(num), start))
        elif name:
            if name not in VAR_ALIASES:
                raise FormSyntaxError(f"unknown variable {name!r}", start)
            tokens.append(("var", VAR_ALIASES[name], start))
        elif caret:
            tokens.append(("pow", None, start))
        elif star:
            tokens.append(("mul", None, start))
        elif plus:
            tokens.append(("sign", 1, start))
        elif minus:
            tokens.append(("sign", -1, start))
        pos = m.end()
    tokens.append(("end", None, len(text)))
    return tokens


def parse_form(text: str, p: int) -> HomogeneousForm:
    """Parse the term grammar into a canonical form over F_p."""
    field = PrimeField(p)
    tokens = _tokenize(text)
    idx = 0

    def peek():
        return tokens[idx]

    def take():
        nonlocal idx
        tok = tokens[idx]
        idx += 1
        return tok

    raw_terms = []
    first = True
    while True:
        kind, val, pos = peek()
        if kind == "end":
            break
        sign = 1
        if kind == "sign":
            take()
            sign = val
            while peek()[0] == "sign":  # tolerate e.g. "+-" never, reject below
                raise FormSyntaxError("consecutive signs", peek()[2])
        elif not first:
            raise FormSyntaxError("expected '+' or '-' between terms", pos)
        first = False

        coeff = sign
        exps = [0, 0, 0, 0]
        saw_factor = False
        kind, val, pos = peek()
        if kind == "num":
            take()
            coeff *= val
            saw_factor = True
            if peek()[0] == "mul":
                take()
        while True:
            kind, val, pos = peek()
            if kind != "var":
                break
            take()
            var = val
            e = 1
            if peek()[0] == "pow":
                take()
                kind2, val2, pos2 = take()
                if kind2 != "num":
                    raise FormSyntaxError("expected integer exponent after '^'", pos2)
                e = val2
            exps[var] += e
            saw_factor = True
            if peek()[0] == "mul":
                take()
                if peek()[0] != "var" and peek()[0] != "num":
                    raise FormSyntaxError("dangling '*'", peek()[2])
                if peek()[0] == "num":
                    raise FormSyntaxError("coefficient must precede variables", peek()[2])
        if not saw_factor:
            raise FormSyntaxError("empty term", pos)
        if sum(exps) == 0:
            raise FormSyntaxError("constant term in a form", pos)
        raw_terms.append((coeff, tuple(exps)))

    if not raw_terms:
        raise FormSyntaxError("empty input", 0)
    return _build(field, raw_terms)


def twist_s1(f: HomogeneousForm) -> HomogeneousForm:
    """First twist: sum_i (df/dx_i) x_i^p, homogeneous of degree d+p-1."""
    p = f.field.p
    if f.degree >= p:
        raise ValueError(f"twist needs degree < p, got degree {f.degree}, p = {p}")
    terms = []
    for i in range(4):
        g = f.partial(i)
        if g is None:
            continue
        for mon in g.monomials:
            exps = list(mon.exps)
            exps[i] += p
            terms.append((mon.coeff, tuple(exps)))
    out = _build(f.field, terms)
    assert out.degree == f.degree + p - 1
    return out


def twist_s2(f: HomogeneousForm) -> HomogeneousForm:
    """Second twist: sum over ordered pairs (i, j) of f_{x_i x_j} x_i^p x_j^p."""
    p = f.field.p
    if f.degree >= p:
        raise ValueError(f"twist needs degree < p, got degree {f.degree}, p = {p}")
    terms = []
    for i in range(4):
        g = f.partial(i)
        if g is None:
            continue
        for j in range(4):
            h = g.partial(j)
            if h is None:
                continue
            for mon in h.monomials:
                exps = list(mon.exps)
                exps[i] += p
                exps[j] += p
                terms.append((mon.coeff, tuple(exps)))
    out = _build(f.field, terms)
    assert out.degree == f.degree + 2 * p - 2
    return out
