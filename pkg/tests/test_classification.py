import random
from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from leibniz_super.classification import (
    DEFAULT_GRID,
    CanonicalDescriptor,
    canonicalize,
    case_labels,
    descriptor_groups,
    enumerate_descriptors,
    instantiate_grid,
    leading_position,
    pairwise_distinct,
    sample_case_params,
    sample_params,
    v_operator,
    vectors_close,
    w_operator,
)
from leibniz_super.families import make_params
from leibniz_super.isomorphism import are_isomorphic, check_witness, random_witness, transform_params
from leibniz_super.scalars import ExtensionRequired

F = Fraction


def close(u, v):
    return vectors_close(u, v, 1e-12)


def test_v_operator_kinds():
    alpha = [0, F(1), F(3), F(5)]
    assert v_operator(1, 2, 4, alpha) == [0, 1, 3, 5]
    assert close(v_operator(1, 2, 4, alpha, m=1), [0, 1, -3, 5])
    # kind 2 uses S_{m,2j+1}^{2i+1}: here S_{1,3}^5
    z = complex(v_operator(2, 1, 2, [F(1), F(1)], m=1)[1])
    assert abs(z - complex(-0.5, -(3**0.5) / 2)) < 1e-12
    # kind 0 with delta = -1 flips the sign of the first free entry
    assert close(v_operator(0, 2, 3, [0, F(1), F(2)], delta=-1), [0, 1, F(2) * (-1) * 1j ** 3])
    assert v_operator(1, 4, 3, [0, 0, 0]) == [0, 0, 0]


def test_v_operator_argument_checks():
    with pytest.raises(ValueError):
        v_operator(1, 2, 3, [F(1), F(1)])
    with pytest.raises(ValueError):
        v_operator(1, 5, 3, [0, 0, 0])
    with pytest.raises(ValueError):
        v_operator(1, 2, 3, [0, F(1), F(1)], m=2)
    with pytest.raises(ValueError):
        v_operator(3, 1, 2, [F(1), F(1)])


def test_w_operator():
    v = [0, F(1), F(4), F(7), F(2)]
    assert leading_position(v) == 2
    assert w_operator(2, 5, v) == [0, 1, 0, 1, 2]
    assert close(w_operator(2, 5, v, m=1), [0, 1, 0, 1, -2])
    assert w_operator(4, 5, v) == v  # boundary: no second 1
    with pytest.raises(ValueError):
        w_operator(5, 5, v)
    with pytest.raises(ValueError):
        w_operator(1, 5, [0, F(2), 0, 0, 0])


@pytest.mark.parametrize(
    "family,n,count,groups",
    [
        ("A", 5, 11, ["1.1", "1.2", "2.1", "2.2.1", "2.2.2"]),
        ("A", 6, 10, ["1", "2", "zero"]),
        ("A", 3, 6, ["1.1", "1.2", "2.1", "2.2.1", "2.2.2"]),
        ("B", 4, 4, ["W", "zero"]),
        ("B", 6, 7, ["W", "zero"]),
    ],
)
def test_enumeration(family, n, count, groups):
    ds = enumerate_descriptors(family, n)
    assert len(ds) == count
    assert descriptor_groups(ds) == groups == case_labels(family, n)
    assert len(set(ds)) == len(ds)
    assert all(len(d.pattern) == len(make_params(family, n, [0] * len(d.pattern)).as_vector()) for d in ds)


def test_enumeration_rejects_small_n():
    with pytest.raises(ValueError, match="n below minimum"):
        enumerate_descriptors("A", 2)


def test_descriptor_matching():
    d = CanonicalDescriptor("A", 5, "1.1", 1, None, (1, "free-not-half", 1, 0))
    assert d.matches([1, F(3), F(1), 0])
    assert not d.matches([1, F(1, 2), F(1), 0])
    assert d.instantiate([F(2)]) == [1, F(2), 1, 0]
    assert d.free_slots == [1]


def test_canonical_examples():
    c = canonicalize("A", 5, [F(9), F(3), 0, 0])
    assert c.descriptor.case == "1.1" and c.verified
    assert list(c.representative.as_vector()) == [1, 1, 0, 0]
    c = canonicalize("A", 5, [0, 0, 0, 0])
    assert c.descriptor.case == "2.2.2"
    c = canonicalize("A", 5, [F(1), F(1, 2), F(2), F(5)])
    assert c.descriptor.case == "1.2"
    assert close(c.representative.as_vector(), [1, 0.5, 1, 1.25])


def test_rational_backend_refuses_irrational_roots():
    p = [F(1), F(1, 2), F(2), F(5)]
    with pytest.raises(ExtensionRequired):
        canonicalize("A", 5, p, backend="rational")
    c = canonicalize("A", 5, p, backend="complex")
    assert all(isinstance(x, complex) for x in c.representative.as_vector())


@pytest.mark.parametrize("family,n", [("A", 3), ("A", 5), ("A", 6), ("B", 4), ("B", 5)])
def test_every_case_is_reached(family, n):
    rng = random.Random(n)
    for case in case_labels(family, n):
        for _ in range(4):
            c = canonicalize(family, n, sample_case_params(family, n, case, rng))
            assert c.descriptor.case == case


cases = st.sampled_from([("A", 3), ("A", 4), ("A", 5), ("A", 6), ("A", 7), ("B", 4), ("B", 5)])


@given(cases, st.integers(0, 10**6))
def test_canonicalize_idempotent(case, seed):
    family, n = case
    p = sample_params(family, n, random.Random(seed))
    c = canonicalize(family, n, p)
    again = canonicalize(family, n, c.representative)
    assert again.descriptor == c.descriptor
    assert vectors_close(again.representative.as_vector(), c.representative.as_vector())
    assert c.descriptor.matches(c.representative.as_vector(), 1e-9)
    assert c.descriptor in enumerate_descriptors(family, n)


@given(cases, st.integers(0, 10**6))
def test_canonicalize_orbit_sound(case, seed):
    family, n = case
    rng = random.Random(seed)
    p = sample_params(family, n, rng)
    w = random_witness(family, n, rng)
    q = transform_params(family, p, w)
    cp, cq = canonicalize(family, n, p), canonicalize(family, n, q)
    assert cp.descriptor == cq.descriptor
    assert vectors_close(cp.representative.as_vector(), cq.representative.as_vector())


def test_canonical_witness_is_checked_independently():
    rng = random.Random(5)
    for _ in range(10):
        p = sample_params("A", 6, rng)
        c = canonicalize("A", 6, p)
        assert check_witness("A", p, c.representative, c.witness).passed
        assert are_isomorphic("A", p, c.representative)


def test_grid_instantiation_skips_excluded_values():
    pts = instantiate_grid("A", 5)
    assert all(d.matches(v) for d, v in pts)
    assert len(pts) == 23
    assert len(instantiate_grid("A", 5, grid=(0, 1))) < len(pts)
    assert DEFAULT_GRID == (0, 1, -1, 2, 1j)


@pytest.mark.parametrize("family,n", [("B", 4), ("A", 4)])
def test_pairwise_distinct(family, n):
    rep = pairwise_distinct(family, n)
    assert rep.passed
    assert rep.pairs_checked == rep.representatives * (rep.representatives - 1) // 2
    assert rep.to_json()["passed"]


@pytest.mark.parametrize("n", [7, 9])
def test_case_2_1_ambiguity_is_the_root_of_unity_one(n):
    """In case 2.1 the free entries move by S_{m,j}^i only; a delta sign flip is not an isomorphism."""
    q = (n + 1) // 2
    k = q - 2
    flips_ok = []
    for j in range(1, k + 1):
        alpha = [0] * (j - 1) + [F(1)] + [F(3)] * (k - j)
        base = make_params("A", n, [0, 1, *v_operator(1, j, k, alpha), 0])
        for m in range(j):
            rotated = make_params("A", n, [0, 1, *v_operator(1, j, k, alpha, m=m), 0])
            assert are_isomorphic("A", base, rotated)
            flipped = make_params("A", n, [0, 1, *v_operator(0, j, k, alpha, m=m, delta=-1, printed=True), 0])
            flips_ok.append(bool(are_isomorphic("A", base, flipped)))
    assert not all(flips_ok)
