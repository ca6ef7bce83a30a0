"""Upper bounds on rational-point counts of surfaces in P^3.

Every bound is kept as an exact Fraction (denominators divide 6) so that
comparisons against true counts are exact.  Values are always computed;
the report carries per-bound applicability flags driven by the evidence
the caller supplies (smoothness, line multiplicity), because a bound
evaluated outside its hypotheses is a number, not a guarantee.

Bound catalogue, for a smooth degree-d surface over F_p with m rational
lines (T = d(d+p-1)(d+2p-2)/6, G = (3m(d+p-1) - m(m+1))/6):

  deligne              p^2 + 1 + (d^3 - 4d^2 + 6d - 2) p
  elementary           (d-1)(p+1)^2 + p + 1
  elementary_no_lines  (d-1)p^2 + (d-2)(p+1) + 1,  needs m = 0
  triple               T + m(p+1),                 needs 2 < d < p
  triple_capped        T + d(11d-24)(p+1)
  refined              triple - G,                 needs multiplicity one
  refined_capped       T + (11d^2-30d+18)(11d^2-33d+28+3p)/6

refined improves on triple exactly when G >= 0, i.e. m <= 3d+3p-4; with
m at most the line cap 11d^2-30d+18 this holds for every
p > (11d^2-33d+22)/3, the improvement threshold.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

__all__ = [
    "BoundReport",
    "evaluate_bounds",
    "correction_term",
    "improvement_threshold",
    "bauer_rams_cap",
    "crude_line_cap",
]

BOUND_NAMES = (
    "deligne",
    "elementary",
    "elementary_no_lines",
    "triple",
    "triple_capped",
    "refined",
    "refined_capped",
)


def bauer_rams_cap(d: int) -> int:
    """Most lines a smooth degree-d surface can contain (d > 2, p > d)."""
    if d < 3:
        raise ValueError("line cap requires degree at least 3")
    return 11 * d * d - 30 * d + 18


def crude_line_cap(d: int) -> int:
    """The older line cap d(11d - 24) used by the capped triple bound."""
    if d < 3:
        raise ValueError("line cap requires degree at least 3")
    return d * (11 * d - 24)


def correction_term(p: int, d: int, m: int) -> Fraction:
    """G = (3m(d+p-1) - m(m+1))/6; nonnegative exactly when m <= 3d+3p-4."""
    if m < 0:
        raise ValueError("line count must be nonnegative")
    return Fraction(3 * m * (d + p - 1) - m * (m + 1), 6)


def improvement_threshold(d: int) -> Fraction:
    """Primes above (11d^2 - 33d + 22)/3 always gain from the correction."""
    if d < 3:
        raise ValueError("threshold requires degree at least 3")
    return Fraction(11 * d * d - 33 * d + 22, 3)


@dataclass(frozen=True)
class BoundReport:
    """All bounds at (p, d, m) plus applicability verdicts."""

    p: int
    d: int
    m: int | None
    deligne: Fraction
    elementary: Fraction
    elementary_no_lines: Fraction
    triple: Fraction | None
    triple_capped: Fraction | None
    refined: Fraction | None
    refined_capped: Fraction | None
    bauer_rams_cap: int | None
    actual_count: int | None = None
    applicable: dict = field(default_factory=dict)

    def value(self, name: str) -> Fraction | None:
        if name not in BOUND_NAMES:
            raise KeyError(name)
        return getattr(self, name)

    def holds(self, name: str) -> bool | None:
        """Whether actual_count <= the named bound; None when unavailable."""
        v = self.value(name)
        if v is None or self.actual_count is None:
            return None
        return self.actual_count <= v


def evaluate_bounds(p: int, d: int, m: int | None = None,
                    actual_count: int | None = None,
                    smooth: bool | None = None,
                    multiplicity_one: bool | None = None) -> BoundReport:
    """Evaluate every bound at (p, d, m) and tag which ones apply.

    smooth and multiplicity_one are upstream evidence (None = unknown);
    a bound is flagged applicable only when its hypotheses are certified.
    """
    if d < 1:
        raise ValueError("degree must be positive")
    if m is not None and m < 0:
        raise ValueError("line count must be nonnegative")

    t_base = Fraction(d * (d + p - 1) * (d + 2 * p - 2), 6)
    deligne = Fraction(p * p + 1 + (d ** 3 - 4 * d * d + 6 * d - 2) * p)
    elementary = Fraction((d - 1) * (p + 1) ** 2 + p + 1)
    elementary_no_lines = Fraction((d - 1) * p * p + (d - 2) * (p + 1) + 1)
    triple = t_base + m * (p + 1) if m is not None else None
    refined = triple - correction_term(p, d, m) if m is not None else None
    if d >= 3:
        cap = bauer_rams_cap(d)
        triple_capped = t_base + crude_line_cap(d) * (p + 1)
        refined_capped = t_base + Fraction(cap * (11 * d * d - 33 * d + 28 + 3 * p), 6)
    else:
        # the capped variants substitute line caps that need d > 2
        cap = None
        triple_capped = None
        refined_capped = None

    regime = 2 < d < p
    applicable = {
        "deligne": smooth is True,
        "elementary": smooth is True,
        "elementary_no_lines": smooth is True and m == 0,
        "triple": smooth is True and regime and m is not None,
        "triple_capped": smooth is True and regime,
        "refined": smooth is True and regime and m is not None
                   and multiplicity_one is True,
        "refined_capped": smooth is True and regime and multiplicity_one is True,
    }
    return BoundReport(p=p, d=d, m=m, deligne=deligne, elementary=elementary,
                       elementary_no_lines=elementary_no_lines, triple=triple,
                       triple_capped=triple_capped, refined=refined,
                       refined_capped=refined_capped, bauer_rams_cap=cap,
                       actual_count=actual_count, applicable=applicable)
