import random
from fractions import Fraction

import pytest

from leibniz_super.algebra import (
    check_graded_antisymmetry,
    check_graded_leibniz,
    check_grading,
)
from leibniz_super.families import (
    AssociativeSuperAlgebra,
    ConstructionError,
    FamilyAParams,
    FamilyBParams,
    ParameterError,
    build_family,
    build_model_1,
    build_model_2,
    construct_from_associative_D,
    family_param_length,
    make_params,
    matrix_superalgebra_1_1,
    random_params,
    upper_triangular_2x2,
)
from leibniz_super.invariants import generator_info, nilindex


@pytest.mark.parametrize("n,t0,length", [(3, 3, 3), (4, 4, 3), (5, 4, 4), (6, 5, 4), (8, 6, 5)])
def test_family_A_layout(n, t0, length):
    p = FamilyAParams.zero(n)
    assert p.t0 == t0 and p.m == n + 1
    assert family_param_length("A", n) == length == len(p.as_vector())


@pytest.mark.parametrize("n,s0,length", [(3, 4, 1), (4, 4, 2), (5, 5, 2), (6, 5, 3)])
def test_family_B_layout(n, s0, length):
    p = FamilyBParams.zero(n)
    assert p.s0 == s0 and p.m == n + 2
    assert family_param_length("B", n) == length


def test_parameter_validation():
    with pytest.raises(ParameterError, match="n below minimum"):
        FamilyAParams(2, 0, (), 0)
    with pytest.raises(ParameterError, match="n below minimum"):
        FamilyBParams.zero(2)
    with pytest.raises(ParameterError):
        FamilyAParams(5, 0, (1,), 0)
    with pytest.raises(ParameterError):
        make_params("A", 4, [1, 2])
    with pytest.raises(ParameterError):
        make_params("C", 4, [])


def test_family_A_products():
    p = make_params("A", 4, [Fraction(3), Fraction(2), Fraction(5)])
    A = build_family("A", p)
    ix = A.basis.index
    assert dict(A.product(ix("y1"), ix("y1"))) == {ix("x1"): 1}
    assert dict(A.product(ix("x3"), ix("x1"))) == {ix("x4"): 1}
    assert dict(A.product(ix("y5"), ix("y5"))) == {ix("x4"): 3}
    assert dict(A.product(ix("y1"), ix("y5"))) == {ix("x3"): -4, ix("x4"): 5}
    assert check_graded_leibniz(A).passed


@pytest.mark.parametrize("family", ["A", "B"])
@pytest.mark.parametrize("n", range(3, 9))
def test_random_instances_are_leibniz(family, n):
    rng = random.Random(n)
    for _ in range(3):
        A = build_family(family, random_params(family, n, rng))
        assert check_grading(A).passed
        assert check_graded_leibniz(A).passed


def test_families_accept_complex_parameters():
    A = build_family("A", make_params("A", 5, [1j, 0.5, 2 + 1j, -1.0]))
    assert A.field.name == "complex"
    assert check_graded_leibniz(A).passed


@pytest.mark.parametrize("d", range(1, 9))
def test_model_1(d):
    A = build_model_1(d)
    assert nilindex(A) == d + 1
    assert generator_info(A).count == 1


@pytest.mark.parametrize("n,m", [(1, 1), (1, 2), (2, 2), (2, 3), (3, 3), (4, 5), (5, 5)])
def test_model_2(n, m):
    A = build_model_2(n, m)
    assert (A.basis.even_dim, A.basis.odd_dim) == (n, m)
    assert check_grading(A).passed and check_graded_leibniz(A).passed
    assert generator_info(A) == (1, ("odd",))
    assert nilindex(A) == n + m + 1


def test_model_2_rejects_bad_dimensions():
    with pytest.raises(ParameterError):
        build_model_2(3, 5)


def test_associative_construction_examples():
    L = construct_from_associative_D(upper_triangular_2x2("diagonal"))
    assert check_graded_leibniz(L).passed
    assert not check_graded_antisymmetry(L).passed  # genuinely Leibniz
    # D = id recovers the graded commutator, a Lie superalgebra
    L = construct_from_associative_D(matrix_superalgebra_1_1("identity"))
    assert check_graded_antisymmetry(L).passed and check_graded_leibniz(L).passed
    L = construct_from_associative_D(matrix_superalgebra_1_1("zero"))
    assert not list(L.nonzero_products())


def test_associative_construction_rejects_bad_D():
    S = upper_triangular_2x2("zero")
    d = S.basis.dim
    D = [[0] * d for _ in range(d)]
    D[2][0] = 1  # E11 -> E22 violates the D-condition
    bad = AssociativeSuperAlgebra(S.basis, S.mult, tuple(tuple(r) for r in D), S.field)
    with pytest.raises(ConstructionError):
        construct_from_associative_D(bad)
    M = matrix_superalgebra_1_1("zero")
    D = [[0] * 4 for _ in range(4)]
    D[1][0] = 1  # even -> odd
    with pytest.raises(ConstructionError, match="parity"):
        AssociativeSuperAlgebra(M.basis, M.mult, tuple(tuple(r) for r in D), M.field).validate()
