"""Canonical forms for the two families.

Parameter vectors are the scaling-orbit coordinates
(gamma, beta_t0, ..., beta_n, beta) for family A and (beta_s0, ..., beta_{n+1})
for family B.  The canonicalizer follows the normalization cases of the
classification: it lists every witness that brings a vector into normal form
(gamma' in {0, 1}, leading entries 1, killable entries 0), applies them, and
picks one representative by a fixed rule on complex arguments.  Because the
list is the complete set of normal forms in the orbit, the choice is an
orbit invariant.

Case labels, in order of appearance:
  odd n = 2q-1:  1.1, 1.2, 2.1, 2.2.1, 2.2.2
  even n = 2q:   1, 2, zero
  family B:      W, zero
"""

from __future__ import annotations

import cmath
import math
import random
from dataclasses import dataclass, field as dc_field
from fractions import Fraction

from .families import family_param_length, make_params, random_params
from .isomorphism import (
    IsoWitness,
    are_isomorphic,
    check_witness,
    family_tag,
    invariant_separation,
    transform_params,
)
from .families import build_family
from .scalars import (
    DEFAULT_TOL,
    ComplexField,
    ExtensionRequired,
    common_field,
    convert,
    is_exact_value,
    kth_roots,
    principal_root,
    root_of_unity,
)


class VerificationFailure(RuntimeError):
    pass


# ---------------------------------------------------------------------------
# roots of unity and the normalization operators


@dataclass(frozen=True)
class RootOfUnity:
    """S_{m,t} = cos(2 pi m/t) + i sin(2 pi m/t)."""

    m: int
    t: int

    def __post_init__(self):
        if self.t < 1 or not 0 <= self.m < self.t:
            raise ValueError(f"need t >= 1 and 0 <= m < t, got m={self.m}, t={self.t}")

    def value(self, field=None):
        return root_of_unity(self.m, self.t, field)

    def __pow__(self, k: int):
        return root_of_unity(self.m * k, self.t)


def _check_v_args(j: int, k: int, alpha):
    if len(alpha) != k:
        raise ValueError(f"expected {k} entries, got {len(alpha)}")
    if not 1 <= j <= k + 1:
        raise ValueError(f"leading position j={j} outside 1..{k + 1}")


def v_operator(kind: int, j: int, k: int, alpha, m: int = 0, delta: int = 1, printed: bool = False):
    """V^kind_{j,k}(alpha): leading 1 at position j, later entries rescaled.

    kind 1: S_{m,j}^i alpha_i;  kind 2: S_{m,2j+1}^{2i+1} alpha_i;
    kind 0: delta * r^i * S_{m,j}^i alpha_i with r a j-th root of delta.
    With ``printed`` the kind-0 factor is the principal root of delta^i
    instead of the i-th power of one fixed root.  j = k+1 gives zeros.
    """
    alpha = list(alpha)
    _check_v_args(j, k, alpha)
    if delta not in (1, -1):
        raise ValueError("delta must be +1 or -1")
    if j == k + 1:
        return [0] * k
    order = 2 * j + 1 if kind == 2 else j
    if kind not in (0, 1, 2):
        raise ValueError("kind must be 0, 1 or 2")
    if not 0 <= m < order:
        raise ValueError(f"root index m={m} outside 0..{order - 1}")
    out = [0] * (j - 1) + [1]
    base = principal_root(delta, j)
    for i in range(j + 1, k + 1):
        a = alpha[i - 1]
        if kind == 1:
            out.append(root_of_unity(m * i, j) * a if m else a)
        elif kind == 2:
            out.append(root_of_unity(m * (2 * i + 1), order) * a if m else a)
        else:
            r = principal_root(delta**i, j) if printed else base**i
            s = root_of_unity(m * i, j) if m else 1
            out.append(delta * r * s * a)
    return out


def leading_position(v, tol: float = DEFAULT_TOL):
    """1-based index of the first nonzero entry, or None."""
    for i, x in enumerate(v):
        if abs(complex(x)) > tol:
            return i + 1
    return None


def w_operator(s: int, k: int, v, m: int = 0):
    """W_{s,k}: put a second normalized 1 at position j+s after the leading 1.

    Entries strictly between become 0 and later entries i pick up S_{m,s}^{i-j}.
    The boundary value s = k+1-j leaves v unchanged.
    """
    v = list(v)
    if len(v) != k:
        raise ValueError(f"expected {k} entries, got {len(v)}")
    j = leading_position(v)
    if j is None or v[j - 1] != 1:
        raise ValueError("W needs a vector whose first nonzero entry is 1")
    if not 1 <= s <= k + 1 - j:
        raise ValueError(f"shift s={s} outside 1..{k + 1 - j}")
    if s == k + 1 - j:
        return v
    if not 0 <= m < s:
        raise ValueError(f"root index m={m} outside 0..{s - 1}")
    out = v[:j] + [0] * (s - 1) + [1]
    for i in range(j + s + 1, k + 1):
        out.append(root_of_unity(m * (i - j), s) * v[i - 1] if m else v[i - 1])
    return out


# ---------------------------------------------------------------------------
# descriptors


FREE, FREE_NOT_HALF = "free", "free-not-half"


def _v_pattern(j: int, k: int):
    if j == k + 1:
        return [0] * k
    return [0] * (j - 1) + [1] + [FREE] * (k - j)


def _w_pattern(j: int, s: int, k: int):
    if s == k + 1 - j:
        return [0] * (j - 1) + [1] + [0] * (k - j)
    return [0] * (j - 1) + [1] + [0] * (s - 1) + [1] + [FREE] * (k - j - s)


@dataclass(frozen=True)
class CanonicalDescriptor:
    """One row of the representative lists, with its index choices fixed.

    ``pattern`` has one entry per parameter slot: a fixed value, "free", or
    "free-not-half" (free except +-1/2).  ``ambiguity`` names the residual
    root-of-unity group acting on the free slots.
    """

    family: str
    n: int
    case: str
    j: int | None = None
    s: int | None = None
    pattern: tuple = ()
    ambiguity: str = ""

    @property
    def parity(self):
        return None if self.family == "B" else ("odd" if self.n % 2 else "even")

    @property
    def free_slots(self):
        return [i for i, e in enumerate(self.pattern) if e in (FREE, FREE_NOT_HALF)]

    def matches(self, vec, tol: float = DEFAULT_TOL) -> bool:
        vec = list(vec)
        if len(vec) != len(self.pattern):
            return False
        for x, e in zip(vec, self.pattern):
            if e == FREE:
                continue
            if e == FREE_NOT_HALF:
                if abs(complex(x) - 0.5) <= tol or abs(complex(x) + 0.5) <= tol:
                    return False
                continue
            if abs(complex(x) - complex(e)) > tol:
                return False
        return True

    def instantiate(self, values):
        """Fill the free slots in order."""
        values = list(values)
        if len(values) != len(self.free_slots):
            raise ValueError(f"descriptor has {len(self.free_slots)} free slots")
        out = []
        it = iter(values)
        for e in self.pattern:
            out.append(next(it) if e in (FREE, FREE_NOT_HALF) else e)
        return out

    def to_json(self) -> dict:
        return {
            "family": self.family,
            "n": self.n,
            "parity": self.parity,
            "case": self.case,
            "j": self.j,
            "s": self.s,
            "pattern": [e if isinstance(e, str) else str(Fraction(e)) for e in self.pattern],
            "ambiguity": self.ambiguity,
        }


def case_labels(family: str, n: int):
    if family == "B":
        return ["W", "zero"]
    return ["1.1", "1.2", "2.1", "2.2.1", "2.2.2"] if n % 2 else ["1", "2", "zero"]


def _descriptor(family, n, case, j=None, s=None) -> CanonicalDescriptor:
    half = Fraction(1, 2)
    if family == "B":
        k = family_param_length("B", n)
        if case == "zero":
            return CanonicalDescriptor("B", n, case, pattern=tuple([0] * k))
        amb = f"S_(m,{s})" if s <= k - j else "none"
        return CanonicalDescriptor("B", n, case, j, s, tuple(_w_pattern(j, s, k)), amb)
    if n % 2:
        q = (n + 1) // 2
        if case == "1.1":
            pat = [1, FREE_NOT_HALF] + _v_pattern(j, q - 2) + [0]
            return CanonicalDescriptor("A", n, case, j, None, tuple(pat), f"delta=+-1, S_(m,{j})")
        if case == "1.2":
            pat = [1, half] + _v_pattern(j, q - 1)
            return CanonicalDescriptor("A", n, case, j, None, tuple(pat), f"S_(m,{j})")
        if case == "2.1":
            pat = [0, 1] + _v_pattern(j, q - 2) + [0]
            return CanonicalDescriptor("A", n, case, j, None, tuple(pat), f"S_(m,{j})")
        if case == "2.2.1":
            pat = [0, 0] + _w_pattern(j, s, q - 1)
            amb = f"S_(m,{s})" if s <= q - 1 - j else "none"
            return CanonicalDescriptor("A", n, case, j, s, tuple(pat), amb)
        if case == "2.2.2":
            return CanonicalDescriptor("A", n, case, pattern=tuple([0] * (q + 1)))
    else:
        q = n // 2
        if case == "1":
            pat = [1] + _v_pattern(j, q - 1) + [0]
            return CanonicalDescriptor("A", n, case, j, None, tuple(pat), f"S_(m,{2 * j - 1})")
        if case == "2":
            pat = [0] + _w_pattern(j, s, q)
            amb = f"S_(m,{s})" if s <= q - j else "none"
            return CanonicalDescriptor("A", n, case, j, s, tuple(pat), amb)
        if case == "zero":
            return CanonicalDescriptor("A", n, case, pattern=tuple([0] * (q + 1)))
    raise ValueError(f"unknown case {case!r} for family {family}, n={n}")


def enumerate_descriptors(family: str, n: int):
    """Every representative row for (family, n) with its j and s ranges expanded."""
    if n < 3:
        raise ValueError(f"n below minimum: n >= 3 required, got {n}")
    out = []
    if family == "B":
        k = family_param_length("B", n)
        for j in range(1, k + 1):
            for s in range(1, k + 2 - j):
                out.append(_descriptor("B", n, "W", j, s))
        out.append(_descriptor("B", n, "zero"))
        return out
    if family != "A":
        raise ValueError(f"unknown family {family!r}")
    if n % 2:
        q = (n + 1) // 2
        out += [_descriptor("A", n, "1.1", j) for j in range(1, q)]
        out += [_descriptor("A", n, "1.2", j) for j in range(1, q + 1)]
        out += [_descriptor("A", n, "2.1", j) for j in range(1, q)]
        out += [_descriptor("A", n, "2.2.1", j, s) for j in range(1, q) for s in range(1, q - j + 1)]
        out.append(_descriptor("A", n, "2.2.2"))
    else:
        q = n // 2
        out += [_descriptor("A", n, "1", j) for j in range(1, q + 1)]
        out += [_descriptor("A", n, "2", j, s) for j in range(1, q + 1) for s in range(1, q + 2 - j)]
        out.append(_descriptor("A", n, "zero"))
    return out


def descriptor_groups(descriptors):
    seen = []
    for d in descriptors:
        if d.case not in seen:
            seen.append(d.case)
    return seen


# ---------------------------------------------------------------------------
# canonicalization


@dataclass
class Canonical:
    descriptor: CanonicalDescriptor
    representative: object  # parameter record
    witness: IsoWitness
    verified: bool
    branches: int = 0

    def to_json(self, field=None) -> dict:
        from .io import params_to_json, witness_to_json

        return {
            "descriptor": self.descriptor.to_json(),
            "representative": params_to_json(self.representative),
            "witness": witness_to_json(self.witness),
            "verified": self.verified,
        }


def _nz(x, tol):
    return abs(complex(x)) > tol


def _first_nonzero(vals, tol):
    for i, x in enumerate(vals):
        if _nz(x, tol):
            return i + 1
    return None


def _second_nonzero(vals, t, tol):
    for i in range(t, len(vals)):
        if _nz(vals[i], tol):
            return i + 1
    return None


def _a1_roots(c, k):
    """All a1 with a1^k = c (k >= 1)."""
    return kth_roots(c, k)


def _a1_square_roots(c, k):
    """One a1 per value of a1^2 with (a1^2)^k = c."""
    out = []
    for r in kth_roots(c, k):
        out.append(principal_root(r, 2))
    return out


def _branches(family, n, p, tol):
    """(case, j, s, witness) for every witness putting p into normal form."""
    vec = list(p.as_vector())
    one = Fraction(1)
    tag = family_tag(family, n)
    out = []
    if family == "B":
        T = vec
        k = len(T)
        t = _first_nonzero(T, tol)
        if t is None:
            return [("zero", None, None, IsoWitness(tag, one, one))]
        s0 = p.s0
        r = _second_nonzero(T, t, tol)
        a1s = [one] if r is None else _a1_square_roots(T[r - 1] / T[t - 1], r - t)
        s = (k + 1 - t) if r is None else r - t
        for a1 in a1s:
            b = a1 ** (2 * (s0 + t - 1) - 3) / T[t - 1]
            out.append(("W", t, s, IsoWitness(tag, a1, b)))
        return out
    gamma = vec[0]
    if n % 2:
        q = (n + 1) // 2
        w0 = vec[1]
        tail = vec[2:-1]
        beta = vec[-1]
        delta = gamma - 4 * w0 * w0
        if _nz(gamma, tol):
            sg = principal_root(gamma, 2)
            if _nz(delta, tol):
                case, T, k = "1.1", tail, q - 2
            else:
                case, T, k = "1.2", tail + [beta], q - 1
            t = _first_nonzero(T, tol)
            for sgn in (1, -1):
                if t is None:
                    a1s = [one]
                else:
                    a1s = _a1_square_roots(sgn * T[t - 1] / sg, t)
                for a1 in a1s:
                    b = sgn * a1**n / sg
                    a = -a1 * beta / delta if case == "1.1" else Fraction(0)
                    out.append((case, t or k + 1, None, IsoWitness(tag, a1, b, a)))
            return out
        if _nz(w0, tol):
            T = tail
            t = _first_nonzero(T, tol)
            a1s = [one] if t is None else _a1_square_roots(T[t - 1] / w0, t)
            for a1 in a1s:
                b = a1**n / w0
                a = a1 * beta / (4 * w0 * w0)
                out.append(("2.1", t or q - 1, None, IsoWitness(tag, a1, b, a)))
            return out
        T = tail + [beta]
        k = q - 1
        t = _first_nonzero(T, tol)
        if t is None:
            return [("2.2.2", None, None, IsoWitness(tag, one, one))]
        r = _second_nonzero(T, t, tol)
        a1s = [one] if r is None else _a1_square_roots(T[r - 1] / T[t - 1], r - t)
        s = (k + 1 - t) if r is None else r - t
        for a1 in a1s:
            b = a1 ** (n + 2 * t) / T[t - 1]
            out.append(("2.2.1", t, s, IsoWitness(tag, a1, b)))
        return out
    q = n // 2
    tail = vec[1:-1]
    beta = vec[-1]
    if _nz(gamma, tol):
        sg = principal_root(gamma, 2)
        T = tail
        t = _first_nonzero(T, tol)
        for sgn in (1, -1):
            a1s = [one] if t is None else _a1_roots(sgn * T[t - 1] / sg, 2 * t - 1)
            for a1 in a1s:
                b = sgn * a1**n / sg
                a = -a1 * beta / gamma
                out.append(("1", t or q, None, IsoWitness(tag, a1, b, a)))
        return out
    T = tail + [beta]
    k = q
    t = _first_nonzero(T, tol)
    if t is None:
        return [("zero", None, None, IsoWitness(tag, one, one))]
    r = _second_nonzero(T, t, tol)
    a1s = [one] if r is None else _a1_square_roots(T[r - 1] / T[t - 1], r - t)
    s = (k + 1 - t) if r is None else r - t
    for a1 in a1s:
        b = a1 ** (n + 2 * t - 1) / T[t - 1]
        out.append(("2", t, s, IsoWitness(tag, a1, b)))
    return out


def _arg(x, tol):
    z = complex(x)
    if abs(z) <= tol:
        return None
    a = cmath.phase(z) % (2 * math.pi)
    if a > 2 * math.pi - 1e-9:
        a = 0.0
    return a


def _select(cands, tol):
    """Lexicographic rule: smallest argument entry by entry, then smallest modulus."""
    pool = list(cands)
    width = len(pool[0][1])
    for idx in range(width):
        args = [_arg(c[1][idx], tol) for c in pool]
        if all(a is None for a in args):
            continue
        best = min(a for a in args if a is not None)
        pool = [c for c, a in zip(pool, args) if a is not None and a <= best + 1e-9]
        mods = [abs(complex(c[1][idx])) for c in pool]
        mb = min(mods)
        pool = [c for c, m in zip(pool, mods) if m <= mb * (1 + 1e-9) + tol]
    exact = [c for c in pool if c[2].exact]
    return (exact or pool)[0]


def _snap(vec, pattern, field):
    """Force slots that are 0 or 1 by construction to exact values."""
    out = []
    for x, e in zip(vec, pattern):
        if e in (FREE, FREE_NOT_HALF):
            out.append(x)
        else:
            out.append(convert(e, field))
    return out


def canonicalize(family: str, n: int, p, backend: str = "auto", verify: bool = True, tol: float = DEFAULT_TOL):
    """Map a parameter record (or vector) onto its representative.

    backend: "auto" keeps exact arithmetic when every root involved is
    rational; "rational" raises ExtensionRequired otherwise; "complex"
    converts the result to floating point.
    """
    if not hasattr(p, "as_vector"):
        p = make_params(family, n, p)
    if p.n != n:
        raise ValueError("parameter record has a different n")
    if backend not in ("auto", "rational", "complex"):
        raise ValueError(f"unknown backend {backend!r}")
    branches = _branches(family, n, p, tol)
    cands = []
    for case, j, s, w in branches:
        q = transform_params(family, p, w)
        cands.append(((case, j, s), list(q.as_vector()), w))
    (case, j, s), vec, w = _select(cands, tol)
    desc = _descriptor(family, n, case, j, s)
    if not w.exact and backend == "rational":
        raise ExtensionRequired(
            f"canonical form of {family}, n={n} needs irrational roots (case {case}); use the complex backend"
        )
    F = common_field([*vec, *w.values()])
    if backend == "complex":
        F = ComplexField(tol)
        w = IsoWitness(w.family, complex(w.a1), complex(w.b), complex(w.a), complex(w.b_prev))
    vec = _snap([convert(x, F) for x in vec], desc.pattern, F)
    rep = make_params(family, n, vec)
    if not desc.matches(vec, max(tol, 1e-7)):
        raise VerificationFailure(f"representative {vec} does not fit descriptor {desc.case}")
    verified = False
    if verify:
        report = check_witness(family, p, rep, w)
        if not report.passed:
            raise VerificationFailure(
                f"canonical witness failed homomorphism check at {report.violations[0][0]} for {p}"
            )
        verified = True
    return Canonical(desc, rep, w, verified, len(branches))


def vectors_close(u, v, tol: float = 1e-9) -> bool:
    return len(u) == len(v) and all(
        abs(complex(a) - complex(b)) <= tol * max(1.0, abs(complex(a)), abs(complex(b))) for a, b in zip(u, v)
    )


# ---------------------------------------------------------------------------
# samplers


def _rand_q(rng, bound=5, nonzero=False):
    while True:
        x = Fraction(rng.randint(-bound, bound), rng.randint(1, 3))
        if x or not nonzero:
            return x


def sample_case_params(family: str, n: int, case: str, rng, zero_prob: float = 0.35):
    """Random rational parameters landing in the given normalization case."""
    L = family_param_length(family, n)

    def filler(k, need_nonzero):
        while True:
            vals = [Fraction(0) if rng.random() < zero_prob else _rand_q(rng) for _ in range(k)]
            if not need_nonzero or any(vals):
                return vals

    if family == "B":
        return make_params("B", n, filler(L, True) if case == "W" else [Fraction(0)] * L)
    if n % 2:
        q = (n + 1) // 2
        if case in ("1.1", "1.2"):
            c = _rand_q(rng, nonzero=True)
            if case == "1.2":
                gamma, w0 = 4 * c * c, rng.choice([c, -c])
            else:
                gamma = c * c if rng.random() < 0.5 else _rand_q(rng, nonzero=True)
                w0 = _rand_q(rng)
                while gamma == 4 * w0 * w0:
                    w0 = _rand_q(rng)
            return make_params("A", n, [gamma, w0, *filler(q - 2, False), _rand_q(rng)])
        if case == "2.1":
            return make_params("A", n, [0, _rand_q(rng, nonzero=True), *filler(q - 2, False), _rand_q(rng)])
        if case == "2.2.1":
            return make_params("A", n, [0, 0, *filler(q - 1, True)])
        if case == "2.2.2":
            return make_params("A", n, [Fraction(0)] * (q + 1))
    else:
        q = n // 2
        if case == "1":
            c = _rand_q(rng, nonzero=True)
            gamma = c * c if rng.random() < 0.5 else _rand_q(rng, nonzero=True)
            return make_params("A", n, [gamma, *filler(q - 1, False), _rand_q(rng)])
        if case == "2":
            return make_params("A", n, [0, *filler(q, True)])
        if case == "zero":
            return make_params("A", n, [Fraction(0)] * (q + 1))
    raise ValueError(f"unknown case {case!r}")


def sample_params(family: str, n: int, rng):
    """Mixture over cases so that every normalization branch is exercised."""
    if rng.random() < 0.2:
        return random_params(family, n, rng, zero_prob=0.3)
    return sample_case_params(family, n, rng.choice(case_labels(family, n)), rng)


# ---------------------------------------------------------------------------
# pairwise distinctness on a grid


DEFAULT_GRID = (0, 1, -1, 2, 1j)


@dataclass
class DistinctnessReport:
    family: str
    n: int
    points: int = 0
    representatives: int = 0
    merged: list = dc_field(default_factory=list)  # (point, point) pairs merged by residual ambiguity
    pairs_checked: int = 0
    separated_by_invariants: int = 0
    collisions: list = dc_field(default_factory=list)
    groups: list = dc_field(default_factory=list)

    @property
    def passed(self) -> bool:
        return not self.collisions

    def to_json(self) -> dict:
        return {
            "family": self.family,
            "n": self.n,
            "points": self.points,
            "representatives": self.representatives,
            "merged_by_residual_ambiguity": len(self.merged),
            "pairs_checked": self.pairs_checked,
            "separated_by_invariants": self.separated_by_invariants,
            "collisions": [[str(a), str(b)] for a, b in self.collisions],
            "groups": self.groups,
            "passed": self.passed,
        }


def _grid_value(g):
    if isinstance(g, complex):
        return g
    return Fraction(g)


def instantiate_grid(family: str, n: int, grid=DEFAULT_GRID):
    """(descriptor, vector) for every descriptor and grid filling of its free slots."""
    from itertools import product

    grid = [_grid_value(g) for g in grid]
    out = []
    for d in enumerate_descriptors(family, n):
        for vals in product(grid, repeat=len(d.free_slots)):
            vec = d.instantiate(vals)
            if not d.matches(vec):
                continue  # excluded values such as beta_{q+1} = +-1/2
            if any(isinstance(x, complex) for x in vec):
                vec = [complex(x) for x in vec]
            else:
                vec = [Fraction(x) for x in vec]
            out.append((d, vec))
    return out


def pairwise_distinct(family: str, n: int, grid=DEFAULT_GRID, use_invariants: bool = False) -> DistinctnessReport:
    """Check that grid instances of different representatives are never isomorphic.

    Grid points equivalent under the residual root-of-unity or sign ambiguity
    canonicalize to the same representative; such merges are verified to be
    isomorphic and then counted once.
    """
    rep = DistinctnessReport(family, n)
    pts = instantiate_grid(family, n, grid)
    rep.points = len(pts)
    rep.groups = descriptor_groups(d for d, _ in pts)
    classes = []  # (canonical vector, descriptor, source vector)
    for d, vec in pts:
        c = canonicalize(family, n, make_params(family, n, vec), verify=False)
        cv = list(c.representative.as_vector())
        for cls in classes:
            if vectors_close(cls[0], cv, 1e-7):
                if not are_isomorphic(family, make_params(family, n, cls[2]), make_params(family, n, vec)):
                    rep.collisions.append((cls[2], vec))
                rep.merged.append((cls[2], vec))
                break
        else:
            classes.append((cv, d, vec))
    rep.representatives = len(classes)
    for i in range(len(classes)):
        for k in range(i + 1, len(classes)):
            pa = make_params(family, n, classes[i][2])
            pb = make_params(family, n, classes[k][2])
            rep.pairs_checked += 1
            if use_invariants:
                F = common_field([*pa.as_vector(), *pb.as_vector()])
                if F.exact and not invariant_separation(build_family(family, pa), build_family(family, pb)).inconclusive:
                    rep.separated_by_invariants += 1
                    continue
            if are_isomorphic(family, pa, pb):
                rep.collisions.append((classes[i][2], classes[k][2]))
    return rep
