"""Intersection arithmetic on a smooth surface cut by two more surfaces.

When the three surfaces share the lines L_1 .. L_m with multiplicity one
and otherwise meet in a finite scheme, the degree of the finite part is
controlled by surface intersection products: with H a hyperplane
section, H^2 = d, L_i . H = 1 and L_i^2 = 2 - d (adjunction).  All
functions here are pure integer arithmetic on those facts.
"""

from __future__ import annotations

from dataclasses import dataclass

__all__ = [
    "DegreeTriple",
    "line_self_intersection",
    "deg_gamma",
    "intersection_sandwich_holds",
]


@dataclass(frozen=True)
class DegreeTriple:
    """Degrees of the cut surface and the two cutting surfaces."""

    d: int
    d1: int
    d2: int

    def __post_init__(self):
        if min(self.d, self.d1, self.d2) < 1:
            raise ValueError("degrees must be positive")

    @classmethod
    def for_twists(cls, p: int, d: int) -> "DegreeTriple":
        """Degrees when the cutting surfaces are the two Frobenius twists."""
        return cls(d=d, d1=d + p - 1, d2=d + 2 * p - 2)


def line_self_intersection(d: int) -> int:
    """Self-intersection of a line on a smooth degree-d surface in P^3."""
    if d < 1:
        raise ValueError("degree must be positive")
    return 2 - d


def deg_gamma(t: DegreeTriple, m: int, pair_sum: int) -> int:
    """Degree of the finite intersection part from the measured line data.

    Expands (d1*H - sum L_i) . (d2*H - sum L_i) on the surface:
    d*d1*d2 - m*(d + d1 + d2) + 2m + pair_sum, with pair_sum the sum of
    L_i . L_j over ordered pairs i != j, hence even.
    """
    if m < 0:
        raise ValueError("line count must be nonnegative")
    if pair_sum < 0 or pair_sum % 2:
        raise ValueError("pair_sum must be even and nonnegative")
    return t.d * t.d1 * t.d2 - m * (t.d + t.d1 + t.d2) + 2 * m + pair_sum


def intersection_sandwich_holds(t: DegreeTriple, m: int, deg_gamma_value: int) -> bool:
    """Whether 2m <= deg_gamma - (d*d1*d2 - m*(d+d1+d2)) <= m*(m+1)."""
    middle = deg_gamma_value - (t.d * t.d1 * t.d2 - m * (t.d + t.d1 + t.d2))
    return 2 * m <= middle <= m * (m + 1)
