from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from leibniz_super.scalars import (
    QQ,
    BackendMismatch,
    ComplexField,
    Cyclotomic,
    CyclotomicField,
    ExtensionRequired,
    common_field,
    exact_rational_root,
    field_from_name,
    format_rational,
    infer_field,
    kth_roots,
    parse_rational,
    principal_root,
    root_of_unity,
)

fractions = st.fractions(max_denominator=50).filter(lambda x: abs(x) < 10**4)


@given(fractions)
def test_rational_text_roundtrip(x):
    assert parse_rational(format_rational(x)) == x


def test_parse_rational_forms():
    assert parse_rational("3/6") == Fraction(1, 2)
    assert parse_rational("-4") == -4
    with pytest.raises(ValueError):
        parse_rational("1/x")


def test_field_names():
    assert field_from_name("rational") is QQ
    assert isinstance(field_from_name("complex"), ComplexField)
    assert field_from_name("cyclotomic:6") == CyclotomicField(6)
    with pytest.raises(ValueError):
        field_from_name("reals")


def test_infer_refuses_mixing():
    assert infer_field([1, Fraction(1, 2)]) is QQ
    assert isinstance(infer_field([1.5, 2j]), ComplexField)
    with pytest.raises(BackendMismatch):
        infer_field([Fraction(1, 2), 0.5])
    with pytest.raises(BackendMismatch):
        infer_field([Cyclotomic(3, [1]), Cyclotomic(4, [1])])
    # promotion is explicit
    assert isinstance(common_field([Fraction(1, 2), 0.5]), ComplexField)


@pytest.mark.parametrize("N", [3, 4, 5, 6, 8, 12])
def test_cyclotomic_root_has_order_N(N):
    z = Cyclotomic.root_of_unity(N, 1)
    p = Cyclotomic.rational(N, 1)
    for k in range(1, N):
        p = p * z
        assert p != Cyclotomic.rational(N, 1)
    assert p * z == Cyclotomic.rational(N, 1)


@pytest.mark.parametrize("N", [3, 5, 7])
def test_cyclotomic_prime_sum_vanishes(N):
    total = Cyclotomic.rational(N, 0)
    for k in range(N):
        total = total + Cyclotomic.root_of_unity(N, k)
    assert total == Cyclotomic.rational(N, 0)


def test_cyclotomic_inverse_and_complex_value():
    z = Cyclotomic.root_of_unity(8, 1)
    u = z + 2
    assert u * (1 / u) == Cyclotomic.rational(8, 1)
    assert abs(complex(z) - (2**-0.5 + 2**-0.5 * 1j)) < 1e-12
    with pytest.raises(BackendMismatch):
        z + Cyclotomic.root_of_unity(4, 1)


def test_root_of_unity_backends():
    assert root_of_unity(1, 4) == 1j
    assert root_of_unity(1, 2, QQ) == -1
    with pytest.raises(ExtensionRequired):
        root_of_unity(1, 3, QQ)
    w = root_of_unity(1, 3, CyclotomicField(6))
    assert w * w * w == Cyclotomic.rational(6, 1)
    with pytest.raises(ExtensionRequired):
        root_of_unity(1, 4, CyclotomicField(6))


def test_exact_roots():
    assert exact_rational_root(Fraction(27, 8), 3) == Fraction(3, 2)
    assert exact_rational_root(Fraction(-8), 3) == -2
    assert exact_rational_root(Fraction(2), 2) is None
    assert exact_rational_root(Fraction(-4), 2) is None
    assert principal_root(Fraction(9, 4), 2) == Fraction(3, 2)


@given(st.fractions(min_value=-50, max_value=50, max_denominator=9).filter(bool), st.integers(1, 6))
def test_kth_roots_are_roots(c, k):
    roots = kth_roots(c, k)
    assert len(roots) == k
    for r in roots:
        assert abs(complex(r) ** k - complex(c)) <= 1e-9 * max(1, abs(complex(c)))
    vals = [complex(r) for r in roots]
    assert all(abs(a - b) > 1e-9 for i, a in enumerate(vals) for b in vals[i + 1:])


def test_kth_roots_list_exact_first():
    roots = kth_roots(Fraction(4), 2)
    assert roots == [2, -2]
    assert all(isinstance(r, Fraction) for r in roots)
    assert isinstance(kth_roots(Fraction(2), 2)[0], complex)
