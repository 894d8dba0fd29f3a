"""Acceptance criteria, one test per criterion.

Each test records a PASS/FAIL line; the lines are printed in the pytest
terminal summary, or directly when this file is run as a script.
"""

import cmath
import random
import time

import pytest

from leibniz_super.algebra import check_graded_leibniz, check_grading, restrict, subalgebra_generated
from leibniz_super.classification import (
    canonicalize,
    enumerate_descriptors,
    pairwise_distinct,
    sample_params,
    vectors_close,
)
from leibniz_super.families import build_family, build_model_1, build_model_2, random_params
from leibniz_super.invariants import (
    central_series,
    characteristic_sequence,
    generator_info,
    right_mult_superalgebra_closure,
)
from leibniz_super.isomorphism import (
    B_EXPONENT_CANDIDATES,
    B_EXPONENT_OFFSET,
    IsoConditionSystem,
    IsoWitness,
    check_witness,
    family_tag,
    iso_solvable,
    random_witness,
    resolve_family_B_exponent,
    transform_params,
)

RESULTS = {}

IDENTITY_N = range(3, 9)
IDENTITY_DRAWS = 25


def record(k, title, ok, detail):
    line = f"criterion {k} [{'PASS' if ok else 'FAIL'}] {title}: {detail}"
    RESULTS[k] = line
    print(line)
    return ok


def draws(family, n):
    rng = random.Random(f"acceptance:{family}:{n}")
    return [random_params(family, n, rng, zero_prob=0.2) for _ in range(IDENTITY_DRAWS)]


def test_criterion_1_identity_suite():
    t = time.perf_counter()
    bad = []
    count = 0
    for family in ("A", "B"):
        for n in IDENTITY_N:
            for p in draws(family, n):
                A = build_family(family, p)
                g, lb = check_grading(A), check_graded_leibniz(A)
                count += 1
                if g.violations or lb.violations:
                    bad.append((family, n, p.as_vector(), len(g.violations) + len(lb.violations)))
    dt = time.perf_counter() - t
    ok = not bad and dt < 60
    record(1, "graded identity", ok, f"{count} instances, {len(bad)} with violations, {dt:.1f}s (limit 60s)")
    assert not bad, bad[:3]
    assert dt < 60


def test_criterion_2_invariants():
    bad = []
    count = 0
    for family in ("A", "B"):
        for n in IDENTITY_N:
            m = n + 1 if family == "A" else n + 2
            for p in draws(family, n):
                A = build_family(family, p)
                count += 1
                cs = characteristic_sequence(A)
                got = (central_series(A).nilindex, cs.as_pair(), cs.readings_agree, tuple(generator_info(A)))
                want = (n + m, ((n,), (m - 1, 1)), True, (2, ("odd", "odd")))
                if got != want:
                    bad.append((family, n, p.as_vector(), got))
    ok = not bad
    record(2, "nilindex, characteristic sequence, generators", ok, f"{count} instances, {len(bad)} mismatches")
    assert ok, bad[:3]


def test_criterion_3_models():
    bad = []
    for d in range(1, 9):
        A = build_model_1(d)
        if central_series(A).nilindex != d + 1 or generator_info(A).count != 1:
            bad.append(("model1", d))
    pairs = [(n, m) for n in range(1, 7) for m in (n, n + 1)]
    for n, m in pairs:
        A = build_model_2(n, m)
        if not (check_grading(A).passed and check_graded_leibniz(A).passed and generator_info(A).count == 1):
            bad.append(("model2", n, m))
    ok = not bad
    record(3, "one-generated models", ok, f"8 first-chain and {len(pairs)} second-chain models, {len(bad)} failures")
    assert ok, bad


def test_criterion_4_y1_subalgebra():
    bad = []
    count = 0
    for n in (4, 5, 6):
        m = n + 1
        for p in draws("A", n):
            A = build_family("A", p)
            S = subalgebra_generated(A, [A.unit(n)])
            count += 1
            if len(S) != n + m - 1:
                bad.append((n, p.as_vector(), "dim", len(S)))
                continue
            R = restrict(A, S)
            if central_series(R).nilindex != R.dim + 1 or generator_info(R).count != 1:
                bad.append((n, p.as_vector(), "nilindex/generators"))
    ok = not bad
    record(4, "subalgebra generated by y1", ok, f"{count} family A instances at n=4..6, {len(bad)} failures")
    assert ok, bad[:3]


def _complex_witness(family, n, rng):
    a1 = cmath.rect(rng.choice([0.5, 1.0, 1.5, 2.0]), rng.uniform(0, 2 * cmath.pi))
    b = cmath.rect(rng.choice([0.5, 1.0, 3.0]), rng.uniform(0, 2 * cmath.pi))
    if family == "A":
        return IsoWitness(family_tag("A", n), a1, b, a=complex(rng.uniform(-2, 2), rng.uniform(-2, 2)))
    return IsoWitness("B", a1, b, b_prev=complex(rng.uniform(-2, 2), 0))


def test_criterion_5_iso_soundness():
    t = time.perf_counter()
    per_case = 50
    bad = []
    cases = [("A", 4), ("A", 5), ("B", 4), ("B", 5)]
    for family, n in cases:
        rng = random.Random(f"soundness:{family}:{n}")
        for i in range(per_case):
            p = random_params(family, n, rng, zero_prob=0.2)
            # one in five witnesses is complex, the rest exact
            w = _complex_witness(family, n, rng) if i % 5 == 4 else random_witness(family, n, rng)
            q = transform_params(family, p, w)
            d = iso_solvable(IsoConditionSystem(family, p, q))
            if not d.isomorphic:
                bad.append((family, n, "solver", p.as_vector(), w))
            elif not check_witness(family, p, q, w).passed:
                bad.append((family, n, "materialized", p.as_vector(), w))
            elif not check_witness(family, p, q, d.witness).passed:
                bad.append((family, n, "solver witness", p.as_vector(), d.witness))
    dt = time.perf_counter() - t
    ok = not bad and dt < 120
    record(
        5, "isomorphism soundness", ok,
        f"{per_case} pairs x {len(cases)} cases (A-even, A-odd, B at n=4,5), {len(bad)} failures, {dt:.1f}s (limit 120s)",
    )
    assert not bad, bad[:3]
    assert dt < 120


def test_criterion_6_exponent_resolution():
    rep = resolve_family_B_exponent(n=4, trials=20, seed=0)
    systematic = [r for r in rep["results"] if r["passes"] == r["trials"]]
    ok = len(systematic) == 1 and rep["resolved_offset"] == B_EXPONENT_OFFSET
    tally = ", ".join(f"{r['exponent']}: {r['passes']}/{r['trials']}" for r in rep["results"])
    record(6, "family B exponent", ok, f"{tally}; resolved 2j{rep['resolved_offset']:+d}, shipped 2j{B_EXPONENT_OFFSET:+d}")
    assert len(B_EXPONENT_CANDIDATES) == 2
    assert ok, rep


def test_criterion_7_canonicalization():
    bad = []
    per_family = 200
    total = 0
    for n in (5, 6):
        for family in ("A", "B"):
            rng = random.Random(f"canon:{family}:{n}")
            desc = set(enumerate_descriptors(family, n))
            for _ in range(per_family):
                p = sample_params(family, n, rng)
                total += 1
                c = canonicalize(family, n, p)
                again = canonicalize(family, n, c.representative)
                w = random_witness(family, n, rng)
                moved = canonicalize(family, n, transform_params(family, p, w))
                rv = c.representative.as_vector()
                if not (
                    c.verified
                    and c.descriptor in desc
                    and again.descriptor == c.descriptor == moved.descriptor
                    and vectors_close(rv, again.representative.as_vector(), 1e-9)
                    and vectors_close(rv, moved.representative.as_vector(), 1e-9)
                ):
                    bad.append((family, n, p.as_vector()))
    ok = not bad
    record(7, "canonicalization", ok, f"{total} vectors at n=5,6 (200 per family), {len(bad)} failures")
    assert ok, bad[:3]


def test_criterion_8_pairwise_distinctness():
    lines = []
    collisions = 0
    for family, n in (("A", 5), ("A", 6), ("B", 4), ("B", 5)):
        rep = pairwise_distinct(family, n)
        collisions += len(rep.collisions)
        lines.append(f"{family}{n}: {rep.representatives} reps/{rep.pairs_checked} pairs")
    ok = collisions == 0
    record(8, "pairwise distinctness", ok, f"{'; '.join(lines)}; {collisions} collisions")
    assert ok


def test_criterion_9_right_mult_closure():
    rng = random.Random("closure")
    bad = []
    for i in range(10):
        family = "AB"[i % 2]
        n = 3 + i % 3
        rep = right_mult_superalgebra_closure(build_family(family, random_params(family, n, rng)))
        if not rep.passed:
            bad.append((family, n))
    ok = not bad
    record(9, "right multiplications closed under graded bracket", ok, f"10 instances, {len(bad)} failures")
    assert ok, bad


if __name__ == "__main__":
    import sys

    failed = 0
    for name, fn in sorted(globals().items()):
        if name.startswith("test_criterion_"):
            try:
                fn()
            except AssertionError:
                failed += 1
    sys.exit(1 if failed else 0)
