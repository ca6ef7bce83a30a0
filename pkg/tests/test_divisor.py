import pytest
from hypothesis import given, settings, strategies as st

from surfcensus.divisor import (DegreeTriple, deg_gamma,
                                intersection_sandwich_holds,
                                line_self_intersection)
from surfcensus.families import FamilySpec, build_family
from surfcensus.surfacelines import lines_on_surface, pairwise_intersection_sum


def test_line_self_intersection():
    assert line_self_intersection(1) == 1
    assert line_self_intersection(2) == 0
    assert line_self_intersection(3) == -1
    assert line_self_intersection(5) == -3
    with pytest.raises(ValueError):
        line_self_intersection(0)


def test_for_twists():
    t = DegreeTriple.for_twists(11, 5)
    assert (t.d, t.d1, t.d2) == (5, 15, 25)
    t = DegreeTriple.for_twists(7, 3)
    assert (t.d, t.d1, t.d2) == (3, 9, 15)


def test_degree_validation():
    with pytest.raises(ValueError):
        DegreeTriple(0, 3, 5)
    with pytest.raises(ValueError):
        DegreeTriple(3, -1, 5)


def test_deg_gamma_no_lines():
    t = DegreeTriple.for_twists(11, 5)
    assert deg_gamma(t, 0, 0) == 5 * 15 * 25


def test_deg_gamma_validation():
    t = DegreeTriple(3, 9, 15)
    with pytest.raises(ValueError):
        deg_gamma(t, -1, 0)
    with pytest.raises(ValueError):
        deg_gamma(t, 2, 3)  # odd pair sum
    with pytest.raises(ValueError):
        deg_gamma(t, 2, -2)


def measured_deg_gamma(p):
    """deg of the finite part for the degree (p-1)/2 surface, measured."""
    f = build_family(FamilySpec("half_fermat", p))
    cfg = lines_on_surface(f)
    t = DegreeTriple.for_twists(p, f.degree)
    return deg_gamma(t, cfg.m, pairwise_intersection_sum(cfg)), t, cfg


def test_deg_gamma_vanishes_for_half_fermat():
    # every intersection point of the three surfaces lies on the lines
    for p in (7, 11):
        value, t, cfg = measured_deg_gamma(p)
        assert value == 0
        assert cfg.m == 3 * ((p - 1) // 2) ** 2


def test_sandwich_on_measured_configuration():
    value, t, cfg = measured_deg_gamma(11)
    assert intersection_sandwich_holds(t, cfg.m, value)
    # middle term for the measured surface: m(d+d1+d2) - d*d1*d2 = 1500
    middle = value - (t.d * t.d1 * t.d2 - cfg.m * (t.d + t.d1 + t.d2))
    assert middle == 1500
    assert 2 * cfg.m <= middle <= cfg.m * (cfg.m + 1)


def test_sandwich_tight_at_one_line():
    # a single line forces pair_sum = 0 and middle exactly 2m
    t = DegreeTriple.for_twists(7, 3)
    value = deg_gamma(t, 1, 0)
    assert intersection_sandwich_holds(t, 1, value)
    assert not intersection_sandwich_holds(t, 1, value - 1)  # below 2m
    assert not intersection_sandwich_holds(t, 1, value + 1)  # above m(m+1)


def test_sandwich_rejects_fabricated_low_value():
    t = DegreeTriple.for_twists(11, 5)
    m = 75
    base = t.d * t.d1 * t.d2 - m * (t.d + t.d1 + t.d2)
    assert not intersection_sandwich_holds(t, m, base + 2 * m - 1)
    assert intersection_sandwich_holds(t, m, base + 2 * m)
    assert intersection_sandwich_holds(t, m, base + m * (m + 1))
    assert not intersection_sandwich_holds(t, m, base + m * (m + 1) + 1)


@settings(deadline=None, max_examples=80, derandomize=True)
@given(st.integers(1, 20), st.integers(0, 50), st.integers(0, 100))
def test_deg_gamma_parity_free(d, m, half_pairs):
    # deg formula stays integral and monotone in pair_sum
    t = DegreeTriple.for_twists(23, d)
    lo = deg_gamma(t, m, 0)
    hi = deg_gamma(t, m, 2 * half_pairs)
    assert hi == lo + 2 * half_pairs
