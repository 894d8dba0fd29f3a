"""Central series, right annihilator, right multiplications, Jordan profiles,
characteristic sequences and generator counts."""

from __future__ import annotations

import random
from dataclasses import dataclass, field as dc_field
from fractions import Fraction
from math import lcm
from typing import NamedTuple

from . import linalg
from .algebra import EVEN, ODD, IdentityReport, SuperAlgebra, bracket, sign
from .scalars import Field, RationalField

PARTS = {"even": EVEN, "odd": ODD}


class NotNilpotent(ValueError):
    pass


class NoEvenGenerators(ValueError):
    pass


@dataclass
class CentralSeries:
    """L^1 ⊇ L^2 ⊇ ... with L^{k+1} = [L^k, L].

    ``status`` is "nilpotent", "stabilized" (the dimension stopped dropping
    above zero, so the algebra is not nilpotent) or "cutoff".
    """

    bases: list
    dims: list
    nilindex: int | None
    status: str

    @property
    def nilpotent(self) -> bool:
        return self.status == "nilpotent"


def central_series(A: SuperAlgebra, cutoff: int | None = None) -> CentralSeries:
    f = A.field
    d = A.dim
    cutoff = d + 2 if cutoff is None else cutoff
    if cutoff < 1:
        raise ValueError("cutoff must be positive")
    cur = linalg.identity(d, f)
    bases, dims = [cur], [d]
    if d == 0:
        return CentralSeries(bases, dims, 1, "nilpotent")
    units = [A.unit(j) for j in range(d)]
    while len(dims) < cutoff:
        prods = [bracket(A, u, e) for u in cur for e in units]
        nxt = linalg.span_basis(prods, f, d)
        bases.append(nxt)
        dims.append(len(nxt))
        if not nxt:
            return CentralSeries(bases, dims, len(dims), "nilpotent")
        if len(nxt) == len(cur):
            return CentralSeries(bases, dims, None, "stabilized")
        cur = nxt
    return CentralSeries(bases, dims, None, "cutoff")


def nilindex(A: SuperAlgebra, cutoff: int | None = None) -> int:
    cs = central_series(A, cutoff)
    if not cs.nilpotent:
        raise NotNilpotent(f"central series {cs.status} at dims {cs.dims}")
    return cs.nilindex


def right_annihilator(A: SuperAlgebra):
    """Row-reduced basis of {z : [b_i, z] = 0 for all i}."""
    d = A.dim
    f = A.field
    rows = []
    for i in range(d):
        for k in range(d):
            rows.append([A.tensor[i][l][k] for l in range(d)])
    null = linalg.nullspace(rows, d, f)
    return linalg.span_basis(null, f, d)


def check_annihilator_membership(A: SuperAlgebra, basis=None) -> IdentityReport:
    """Every [a,b] + (-1)^{|a||b|}[b,a] (basis a, b) lies in the right annihilator."""
    f = A.field
    basis = right_annihilator(A) if basis is None else basis
    rep = IdentityReport("annihilator membership")
    red, piv = linalg.rref(basis, f, A.dim) if basis else ([], [])
    for i in range(A.dim):
        for j in range(i, A.dim):
            s = sign(A.parity[i], A.parity[j])
            v = [x + s * y for x, y in zip(A.tensor[i][j], A.tensor[j][i])]
            if all(f.is_zero(x) for x in v):
                continue
            if not red or linalg.coordinates(red, piv, v, f) is None:
                rep.violations.append(((i, j), v))
    return rep


def right_mult_matrix(A: SuperAlgebra, x, part: str = "both"):
    """Matrix of v -> [v, x] on the requested graded part (columns are images)."""
    f = A.field
    if part == "both":
        idx = list(range(A.dim))
    elif part in PARTS:
        idx = A.basis.indices(PARTS[part])
    else:
        raise ValueError(f"part must be even, odd or both, got {part!r}")
    if not idx:
        raise ValueError(f"the {part} part is empty")
    x = [f.coerce(c) for c in x]
    if len(x) != A.dim:
        raise ValueError("vector length does not match the algebra")
    M = [[f.zero] * len(idx) for _ in idx]
    pos = {k: r for r, k in enumerate(idx)}
    for c, l in enumerate(idx):
        for j, xj in enumerate(x):
            if not xj:
                continue
            for k, v in A.product(l, j):
                if k in pos:
                    M[pos[k]][c] = M[pos[k]][c] + xj * v
    return M


@dataclass(frozen=True)
class JordanProfile:
    blocks: tuple

    def __iter__(self):
        return iter(self.blocks)

    def __len__(self):
        return len(self.blocks)


def _as_integer_matrix(M):
    """Scale a rational matrix to integers (ranks of powers are unchanged)."""
    den = 1
    for row in M:
        for x in row:
            den = lcm(den, Fraction(x).denominator)
    return [[int(Fraction(x) * den) for x in row] for row in M]


def _int_matmul(a, b):
    n = len(b[0]) if b else 0
    out = []
    for row in a:
        acc = [0] * n
        for k, x in enumerate(row):
            if x:
                bk = b[k]
                for j in range(n):
                    if bk[j]:
                        acc[j] += x * bk[j]
        out.append(acc)
    return out


def rank_sequence(M, field: Field):
    """[rank(M^0), rank(M^1), ...] until the rank stops dropping."""
    d = len(M)
    if not field.exact:
        raise ValueError("Jordan profiles need an exact backend")
    ranks = [d]
    if isinstance(field, RationalField):
        base = _as_integer_matrix(M)
        P = base
        while True:
            r = linalg.bareiss_rank(P)
            if r == ranks[-1]:
                break
            ranks.append(r)
            if r == 0:
                break
            P = _int_matmul(P, base)
        return ranks
    P = [list(r) for r in M]
    while True:
        r = linalg.rank(P, field)
        if r == ranks[-1]:
            break
        ranks.append(r)
        if r == 0:
            break
        P = linalg.matmul(P, M, field)
    return ranks


def jordan_profile(M, field: Field | None = None) -> JordanProfile:
    """Jordan block sizes of a nilpotent matrix, largest first."""
    from .scalars import infer_field

    field = field or infer_field([x for row in M for x in row])
    d = len(M)
    if any(len(row) != d for row in M):
        raise ValueError("matrix must be square")
    if d == 0:
        return JordanProfile(())
    ranks = rank_sequence(M, field)
    if ranks[-1] != 0:
        raise NotNilpotent(f"matrix is not nilpotent (rank sequence {ranks})")
    ranks.append(0)
    ge = [ranks[k - 1] - ranks[k] for k in range(1, len(ranks))]  # blocks of size >= k
    ge.append(0)
    blocks = []
    for k in range(len(ge) - 1, 0, -1):
        blocks.extend([k] * (ge[k - 1] - ge[k]))
    return JordanProfile(tuple(blocks))


@dataclass
class CharSequence:
    """Characteristic sequence under both readings.

    ``even``/``odd`` maximize each profile independently; ``joint_*`` is the
    lexicographic maximum of the pair taken at a single element.
    """

    even: tuple
    odd: tuple
    even_witness: list
    odd_witness: list
    joint_even: tuple
    joint_odd: tuple
    joint_witness: list
    candidates: int = 0

    @property
    def readings_agree(self) -> bool:
        return (self.even, self.odd) == (self.joint_even, self.joint_odd)

    def as_pair(self):
        return (self.even, self.odd)


def _even_derived(A: SuperAlgebra):
    f = A.field
    ev = A.basis.indices(EVEN)
    prods = [[x for x in A.tensor[i][j]] for i in ev for j in ev]
    return linalg.rref(prods, f, A.dim) if prods else ([], [])


def characteristic_sequence(A: SuperAlgebra, samples: int = 64, seed: int = 0) -> CharSequence:
    f = A.field
    if not f.exact:
        raise ValueError("characteristic sequences need an exact backend")
    ev = A.basis.indices(EVEN)
    has_odd = bool(A.basis.indices(ODD))
    red, piv = _even_derived(A)

    def outside(v):
        return not red or linalg.coordinates(red, piv, v, f) is None

    cands = []
    for i in ev:
        u = A.unit(i)
        if outside(u):
            cands.append(u)
    if not cands:
        raise NoEvenGenerators("L0 coincides with [L0, L0]; no even element outside the derived part")
    rng = random.Random(seed)
    tries = 0
    while len(cands) < len(ev) + samples and tries < 20 * (samples + 1):
        tries += 1
        v = A.zero_vector()
        for i in ev:
            v[i] = f.coerce(rng.randint(-3, 3))
        if outside(v):
            cands.append(v)

    best_e = best_o = best_j = None
    for x in cands:
        ce = jordan_profile(right_mult_matrix(A, x, "even"), f).blocks
        co = jordan_profile(right_mult_matrix(A, x, "odd"), f).blocks if has_odd else ()
        if best_e is None or ce > best_e[0]:
            best_e = (ce, x)
        if best_o is None or co > best_o[0]:
            best_o = (co, x)
        if best_j is None or (ce, co) > best_j[0]:
            best_j = ((ce, co), x)
    return CharSequence(
        best_e[0], best_o[0], best_e[1], best_o[1], best_j[0][0], best_j[0][1], best_j[1], len(cands)
    )


class GeneratorInfo(NamedTuple):
    count: int
    parities: tuple


def generator_info(A: SuperAlgebra) -> GeneratorInfo:
    """Minimal generator count dim(L/L^2) with the parities of a graded complement."""
    f = A.field
    par = A.parity
    counts = {}
    for part in (EVEN, ODD):
        prods = [
            list(A.tensor[i][j])
            for i in range(A.dim)
            for j in range(A.dim)
            if par[i] ^ par[j] == part and A.product(i, j)
        ]
        counts[part] = len(A.basis.indices(part)) - linalg.rank(prods, f)
    parities = ("even",) * counts[EVEN] + ("odd",) * counts[ODD]
    return GeneratorInfo(counts[EVEN] + counts[ODD], parities)


def _flat(M):
    return [x for row in M for x in row]


def right_mult_superalgebra_closure(A: SuperAlgebra) -> IdentityReport:
    """Check that <R_a, R_b> = R_a R_b - (-1)^{|a||b|} R_b R_a lies in span{R_x}.

    Operators act on column vectors, so (R_a R_b)(v) = [[v, b], a].  Besides
    membership, each pair records whether <R_a, R_b> equals +R_[a,b] or
    -R_[a,b]; the tally goes in ``details["signs"]``.
    """
    f = A.field
    d = A.dim
    par = A.parity
    R = [right_mult_matrix(A, A.unit(i)) for i in range(d)]
    flat = [_flat(M) for M in R]
    red, piv = linalg.rref(flat, f, d * d) if d else ([], [])
    rep = IdentityReport("right multiplication closure")
    signs = {"+": 0, "-": 0, "zero": 0, "neither": 0}
    predicted = 0
    coords_out = {}
    for a in range(d):
        for b in range(d):
            s = sign(par[a], par[b])
            ab = linalg.matmul(R[a], R[b], f)
            ba = linalg.matmul(R[b], R[a], f)
            C = _flat([[x - s * y for x, y in zip(r1, r2)] for r1, r2 in zip(ab, ba)])
            if all(f.is_zero(x) for x in C):
                coords = []
            else:
                coords = linalg.coordinates(red, piv, C, f) if red else None
                if coords is None:
                    rep.violations.append(((a, b), C))
                    continue
            coords_out[(a, b)] = coords
            Rab = _flat(right_mult_matrix(A, list(A.tensor[a][b])))
            plus = all(f.is_zero(x - y) for x, y in zip(C, Rab))
            minus = all(f.is_zero(x + y) for x, y in zip(C, Rab))
            if plus and minus:
                signs["zero"] += 1
            elif plus:
                signs["+"] += 1
            elif minus:
                signs["-"] += 1
            else:
                signs["neither"] += 1
            # expected from the Leibniz identity: <R_a, R_b> = -(-1)^{|a||b|} R_[a,b]
            if (plus and minus) or (minus and s == 1) or (plus and s == -1):
                predicted += 1
    rep.details["signs"] = signs
    rep.details["matches_minus_sign_rule"] = predicted == len(coords_out)
    rep.details["coordinates"] = coords_out
    return rep


def invariant_report(A: SuperAlgebra, samples: int = 64, seed: int = 0) -> dict:
    cs = central_series(A)
    out = {
        "nilindex": cs.nilindex,
        "series_dims": cs.dims,
        "right_annihilator_dim": len(right_annihilator(A)),
    }
    gi = generator_info(A)
    out["generators"] = {"count": gi.count, "parities": list(gi.parities)}
    try:
        ch = characteristic_sequence(A, samples, seed)
        out["char_seq"] = {"even": list(ch.even), "odd": list(ch.odd)}
        out["char_seq_joint"] = {"even": list(ch.joint_even), "odd": list(ch.joint_odd)}
    except NoEvenGenerators as e:
        out["char_seq"] = None
        out["char_seq_error"] = str(e)
    if cs.status != "nilpotent":
        out["series_status"] = cs.status
    return out
