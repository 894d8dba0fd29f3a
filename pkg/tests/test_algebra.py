from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from leibniz_super.algebra import (
    GradedBasis,
    SuperAlgebra,
    as_field,
    bracket,
    check_graded_antisymmetry,
    check_graded_jacobi,
    check_graded_leibniz,
    check_grading,
    restrict,
    subalgebra_generated,
)
from leibniz_super.families import build_family, make_params
from leibniz_super.scalars import BackendMismatch, ComplexField

small = st.fractions(min_value=-5, max_value=5, max_denominator=3)


def sample_algebra():
    return build_family("A", make_params("A", 4, [Fraction(1), Fraction(2), Fraction(-3)]))


def heisenberg_super():
    # one odd e with [e, e] = h: a Lie superalgebra
    basis = GradedBasis(["h", "e"], [0, 1])
    return SuperAlgebra.from_products(basis, {(1, 1): {0: 1}})


def vectors(d):
    return st.lists(small, min_size=d, max_size=d)


@given(vectors(9), vectors(9), vectors(9), small)
def test_bracket_bilinear(u, v, w, c):
    A = sample_algebra()
    uv = [a + c * b for a, b in zip(u, v)]
    lhs = bracket(A, uv, w)
    rhs = [a + c * b for a, b in zip(bracket(A, u, w), bracket(A, v, w))]
    assert lhs == rhs
    lhs = bracket(A, w, uv)
    rhs = [a + c * b for a, b in zip(bracket(A, w, u), bracket(A, w, v))]
    assert lhs == rhs


def test_basis_validation():
    with pytest.raises(ValueError):
        GradedBasis(["a", "a"], [0, 1])
    with pytest.raises(ValueError):
        GradedBasis(["a", "b"], [0, 2])
    b = GradedBasis.standard(2, 3)
    assert b.labels == ("x1", "x2", "y1", "y2", "y3")
    assert (b.even_dim, b.odd_dim) == (2, 3)


def test_tensor_shape_checked():
    with pytest.raises(ValueError):
        SuperAlgebra(GradedBasis.standard(1, 1), [[[0, 0]]])


def test_lie_superalgebra_passes_everything():
    L = heisenberg_super()
    for rep in (check_grading(L), check_graded_leibniz(L), check_graded_antisymmetry(L), check_graded_jacobi(L)):
        assert rep.passed, rep.summary()


def test_family_is_leibniz_but_not_lie():
    A = sample_algebra()
    rep = check_graded_leibniz(A)
    assert rep.passed and rep.details["satisfies"] == "right"
    assert not check_graded_antisymmetry(A).passed


def test_opposite_algebra_satisfies_other_convention():
    A = sample_algebra()
    prods = {(j, i): dict(out) for i, j, out in A.nonzero_products()}
    B = SuperAlgebra.from_products(A.basis, prods)
    rep = check_graded_leibniz(B)
    assert not rep.passed
    assert rep.details["satisfies"] == "left"
    assert check_graded_leibniz(B, "left").passed


def test_tampered_constant_is_reported():
    A = sample_algebra()
    bad = A.with_product(4, 4, A.unit(1))  # [y1, y1] = x2 instead of x1
    rep = check_graded_leibniz(bad)
    assert not rep.passed
    idx, residual = rep.violations[0]
    assert len(idx) == 3 and any(residual)
    assert check_grading(bad).passed
    wrong_parity = A.with_product(4, 4, A.unit(5))
    assert not check_grading(wrong_parity).passed


def test_algebras_are_immutable_values():
    A = sample_algebra()
    with pytest.raises(AttributeError):
        A.tensor = None
    assert A == sample_algebra()
    assert A != A.with_product(0, 0, A.zero_vector())


def test_backends_do_not_mix():
    A = sample_algebra()
    C = as_field(A, ComplexField())
    assert check_graded_leibniz(C).passed
    with pytest.raises(BackendMismatch):
        bracket(A, [0.5] + [0] * 8, A.unit(0))


def test_generated_subalgebra_and_restriction():
    A = sample_algebra()
    S = subalgebra_generated(A, [A.unit(4)])
    assert len(S) == 8
    R = restrict(A, S)
    assert (R.basis.even_dim, R.basis.odd_dim) == (4, 4)
    assert check_graded_leibniz(R).passed
    with pytest.raises(ValueError):
        restrict(A, [[0, 0, 0, 0, 1, 0, 0, 0, 0]])
