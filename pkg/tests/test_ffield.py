import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from surfcensus.ffield import (ExtField2, PrimeField, is_dth_power, is_prime,
                               primes_below, roots_of_unity)


def test_is_prime_small():
    assert [n for n in range(2, 30) if is_prime(n)] == \
        [2, 3, 5, 7, 11, 13, 17, 19, 23, 29]
    assert not is_prime(1)
    assert not is_prime(0)
    assert is_prime(1009)
    assert not is_prime(1007)  # 19 * 53


def test_primes_below():
    assert primes_below(20) == [2, 3, 5, 7, 11, 13, 17, 19]
    assert primes_below(2) == []


def test_constructor_rejects_bad_moduli():
    with pytest.raises(ValueError):
        PrimeField(1)
    with pytest.raises(ValueError):
        PrimeField(15)
    with pytest.raises(ValueError):
        PrimeField(2)


def test_pow_table_values_and_convention():
    field = PrimeField(11)
    for e in (0, 1, 2, 5, 17):
        tab = field.pow_table(e)
        assert tab.dtype == np.int64
        assert not tab.flags.writeable
        for t in range(11):
            expected = 1 if (t == 0 and e == 0) else pow(t, e, 11)
            assert tab[t] == expected


def test_pow_table_is_cached():
    field = PrimeField(13)
    assert field.pow_table(6) is field.pow_table(6)


def test_dth_roots_pinned():
    assert PrimeField(11).dth_roots(5) == {1, 3, 9, 5, 4}
    assert PrimeField(11).dth_roots(1) == {1}
    assert PrimeField(29).dth_roots(7) == {1, 16, 24, 7, 25, 23, 20}
    assert roots_of_unity(11, 5) == {1, 3, 9, 5, 4}


def test_dth_roots_size():
    field = PrimeField(31)
    for d in (2, 3, 5, 6):
        roots = field.dth_roots(d)
        assert len(roots) == d
        assert all(pow(r, d, 31) == 1 for r in roots)


def test_primitive_dth_root():
    field = PrimeField(11)
    eta = field.primitive_dth_root(5)
    assert pow(eta, 5, 11) == 1
    assert all(pow(eta, k, 11) != 1 for k in range(1, 5))


def test_is_dth_power_pinned():
    assert is_dth_power(10, 5, 11)          # 2^5 = 32 = 10 mod 11
    assert is_dth_power(1, 4, 13)
    assert not is_dth_power(12, 4, 13)      # 4th powers mod 13 are {1,3,9}
    assert {a for a in range(1, 13) if is_dth_power(a, 4, 13)} == {1, 3, 9}


def test_generator_order():
    for p in (7, 11, 29):
        field = PrimeField(p)
        g = field.generator
        seen = {pow(g, k, p) for k in range(p - 1)}
        assert len(seen) == p - 1


def test_sqrt():
    field = PrimeField(13)
    for a in range(13):
        r = field.sqrt(a)
        if r is None:
            assert not is_dth_power(a, 2, 13)
        else:
            assert r * r % 13 == a
            assert r <= (13 - r) % 13  # smaller of the two roots


def test_least_nonresidue():
    for p in (7, 11, 13, 29):
        n = PrimeField(p).least_nonresidue
        assert pow(n, (p - 1) // 2, p) == p - 1


def test_ext_field_norm_identity():
    ext = ExtField2(PrimeField(11))
    for a in range(11):
        for b in range(11):
            x = (a, b)
            conj = (a, (-b) % 11)
            prod = ext.mul(x, conj)
            assert prod == ((a * a - ext.n * b * b) % 11, 0)


@settings(deadline=None, max_examples=60, derandomize=True)
@given(st.integers(0, 12), st.integers(0, 12), st.integers(0, 12),
       st.integers(0, 12))
def test_ext_field_mul_commutes(a, b, c, d):
    ext = ExtField2(PrimeField(13))
    assert ext.mul((a, b), (c, d)) == ext.mul((c, d), (a, b))


def test_ext_field_inverse_and_frobenius():
    ext = ExtField2(PrimeField(7))
    for x in ext.elements():
        if ext.is_zero(x):
            continue
        assert ext.mul(x, ext.inv(x)) == (1, 0)
        # Frobenius is the field automorphism x -> x^p
        assert ext.frobenius(x) == ext.pow(x, 7)
    assert ext.frobenius((3, 0)) == (3, 0)


def test_ext_field_multiplicative_order():
    ext = ExtField2(PrimeField(5))
    for x in ext.elements():
        if not ext.is_zero(x):
            assert ext.pow(x, 24) == (1, 0)


def test_ext_field_sqrt_always_exists():
    # every scalar has a square root once theta^2 = n is available
    for p in (7, 11, 13):
        ext = ExtField2(PrimeField(p))
        for a in range(p):
            s = ext.sqrt(a)
            assert ext.mul(s, s) == (a % p, 0)
