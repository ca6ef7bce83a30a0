from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from surfcensus.bounds import (BOUND_NAMES, bauer_rams_cap, correction_term,
                               crude_line_cap, evaluate_bounds,
                               improvement_threshold)


def test_deligne_pinned():
    # cubic coefficient d^3 - 4d^2 + 6d - 2 = 7
    rep = evaluate_bounds(11, 3)
    assert rep.deligne == 11 * 11 + 1 + 7 * 11 == 199
    rep = evaluate_bounds(13, 3)
    assert rep.deligne == 13 * 13 + 1 + 7 * 13 == 261


def test_fermat_cubic_attains_deligne():
    # p^2 + 7p + 1 rational points: the bound is an equality here
    rep = evaluate_bounds(13, 3, m=27, actual_count=261, smooth=True,
                          multiplicity_one=True)
    assert rep.holds("deligne")
    assert rep.deligne == rep.actual_count


def test_half_fermat_bounds_pinned():
    rep = evaluate_bounds(11, 5, m=75, actual_count=405, smooth=True,
                          multiplicity_one=True)
    assert rep.triple == Fraction(2425, 2)
    assert rep.refined == 1600
    assert rep.holds("triple") and rep.holds("refined")
    assert rep.applicable["triple"] and rep.applicable["refined"]


def test_correction_term_pinned():
    # G at (p, d, m) = (11, 5, 75): (3*75*15 - 75*76)/6 = -575/2
    assert correction_term(11, 5, 75) == Fraction(3375 - 5700, 6)
    assert correction_term(11, 5, 0) == 0
    with pytest.raises(ValueError):
        correction_term(11, 5, -1)


def test_correction_sign_threshold():
    # G >= 0 exactly when m <= 3d + 3p - 4
    for p, d in [(11, 5), (13, 4), (31, 7)]:
        edge = 3 * d + 3 * p - 4
        for m in (edge - 1, edge, edge + 1):
            assert (correction_term(p, d, m) >= 0) == (m <= edge)


def test_improvement_threshold_pinned():
    assert improvement_threshold(3) == Fraction(22, 3)
    assert improvement_threshold(4) == 22
    assert improvement_threshold(5) == 44
    with pytest.raises(ValueError):
        improvement_threshold(2)


def test_line_caps_pinned():
    assert bauer_rams_cap(3) == 27
    assert bauer_rams_cap(4) == 74
    assert bauer_rams_cap(5) == 143
    assert crude_line_cap(4) == 80
    with pytest.raises(ValueError):
        bauer_rams_cap(2)
    with pytest.raises(ValueError):
        crude_line_cap(2)


def test_quartic_line_rich_closed_form():
    # a quartic carrying 64 lines: triple - G = 4(p+3)(2p+2)/6 + 32p + 1984/3
    m = 64
    for p in (53, 101, 149):
        rep = evaluate_bounds(p, 4, m=m)
        closed = (Fraction(4 * (p + 3) * (2 * p + 2), 6)
                  + 32 * p + Fraction(1984, 3))
        assert rep.refined == closed
        # the 1984/3 tail rounds down to 661 in integer statements
        assert Fraction(1984, 3).__floor__() == 661


def test_capped_equals_at_cap():
    # plugging the cap values for m reproduces the capped bounds
    for p, d in [(11, 3), (31, 5), (101, 7)]:
        rep_cap = evaluate_bounds(p, d)
        at_crude = evaluate_bounds(p, d, m=crude_line_cap(d))
        assert rep_cap.triple_capped == at_crude.triple
        at_br = evaluate_bounds(p, d, m=bauer_rams_cap(d))
        assert rep_cap.refined_capped == at_br.refined


def test_applicability_matrix():
    rep = evaluate_bounds(11, 5, m=75, smooth=True, multiplicity_one=None)
    assert rep.applicable["triple"]
    assert not rep.applicable["refined"]  # multiplicity evidence missing
    rep = evaluate_bounds(11, 5, m=75, smooth=None)
    assert not any(rep.applicable.values())
    rep = evaluate_bounds(11, 13, m=0, smooth=True)  # d > p: out of regime
    assert rep.applicable["elementary_no_lines"]
    assert not rep.applicable["triple"]
    rep = evaluate_bounds(11, 5, smooth=True)  # m unknown
    assert rep.applicable["triple_capped"]
    assert not rep.applicable["triple"]
    assert not rep.applicable["elementary_no_lines"]


def test_value_and_holds_interface():
    rep = evaluate_bounds(11, 5, m=75, actual_count=405, smooth=True)
    assert rep.value("triple") == Fraction(2425, 2)
    with pytest.raises(KeyError):
        rep.value("nonsense")
    assert rep.holds("triple") is True
    rep_nc = evaluate_bounds(11, 5, m=75)
    assert rep_nc.holds("triple") is None
    rep_d2 = evaluate_bounds(11, 2, m=0, actual_count=10)
    assert rep_d2.holds("triple_capped") is None  # caps need d >= 3
    assert rep_d2.bauer_rams_cap is None


def test_low_degree_report_has_no_caps():
    rep = evaluate_bounds(7, 2, m=16)
    assert rep.triple is not None
    assert rep.triple_capped is None and rep.refined_capped is None


def test_validation():
    with pytest.raises(ValueError):
        evaluate_bounds(11, 0)
    with pytest.raises(ValueError):
        evaluate_bounds(11, 3, m=-1)


def test_all_bound_names_resolve():
    rep = evaluate_bounds(13, 4, m=10, actual_count=200, smooth=True,
                          multiplicity_one=True)
    for name in BOUND_NAMES:
        assert rep.value(name) is not None
        assert rep.holds(name) is not None
        assert name in rep.applicable


@settings(deadline=None, max_examples=120, derandomize=True)
@given(st.integers(3, 12), st.integers(0, 250))
def test_refined_alternate_form(d, m):
    # triple - G with d1 = d + p - 1 rewrites to
    # [d*d1*d2 - m(3d - 7 - m)]/6 + m(p+1)/2 ... checked in sixths
    p = 997
    rep = evaluate_bounds(p, d, m=m)
    d1, d2 = d + p - 1, d + 2 * p - 2
    alt = (Fraction(d * d1 * d2 - m * (3 * d - 7 - m), 6)
           + Fraction(m * (p + 1), 2))
    # alt counts the pair term with 3m(p+1)/6 folded differently; the two
    # agree after expanding both to a common denominator
    assert 6 * rep.refined == d * d1 * d2 + 6 * m * (p + 1) \
        - 3 * m * d1 + m * (m + 1)
    assert 6 * alt == d * d1 * d2 - m * (3 * d - 7 - m) + 3 * m * (p + 1)


@settings(deadline=None, max_examples=100, derandomize=True)
@given(st.integers(3, 10), st.integers(5, 300))
def test_triple_dominates_refined_iff_g_nonneg(d, p_raw):
    from sympy import nextprime
    p = int(nextprime(p_raw))
    if p <= d:
        return
    for m in (0, 1, d, 3 * d + 3 * p - 4, 3 * d + 3 * p - 3):
        rep = evaluate_bounds(p, d, m=m)
        g = correction_term(p, d, m)
        assert (rep.refined <= rep.triple) == (g >= 0)
