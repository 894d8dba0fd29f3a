"""Constructors for the explicit algebras: the two one-generated chain models,
the m = n+1 family L(gamma, beta_t0..beta_n, beta) and the m = n+2 family
L(beta_s0..beta_{n+1}), plus Leibniz superalgebras obtained from an
associative superalgebra and a map D.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .algebra import EVEN, ODD, GradedBasis, SuperAlgebra, check_graded_leibniz, sign
from .scalars import QQ, Field, infer_field

MIN_N = 3


class ParameterError(ValueError):
    pass


def _half(field: Field):
    return field.one / field.coerce(2)


@dataclass(frozen=True)
class FamilyAParams:
    """Parameters of the m = n+1 family.

    ``beta`` holds beta_t0, ..., beta_n with t0 = floor((n+4)/2);
    ``beta_last`` is the separate coefficient of x_n in [y_1, y_{n+1}].
    """

    n: int
    gamma: object
    beta: tuple
    beta_last: object

    def __post_init__(self):
        object.__setattr__(self, "beta", tuple(self.beta))
        if self.n < MIN_N:
            raise ParameterError(f"n below minimum: family A needs n >= {MIN_N}, got {self.n}")
        want = self.n - self.t0 + 1
        if len(self.beta) != want:
            raise ParameterError(f"family A with n={self.n} takes {want} beta values (t0={self.t0}), got {len(self.beta)}")

    @property
    def t0(self) -> int:
        return (self.n + 4) // 2

    @property
    def m(self) -> int:
        return self.n + 1

    def beta_at(self, k: int):
        return self.beta[k - self.t0]

    def as_vector(self) -> tuple:
        return (self.gamma, *self.beta, self.beta_last)

    @classmethod
    def from_vector(cls, n: int, vec) -> "FamilyAParams":
        vec = tuple(vec)
        return cls(n, vec[0], vec[1:-1], vec[-1])

    @classmethod
    def zero(cls, n: int) -> "FamilyAParams":
        return cls(n, Fraction(0), (Fraction(0),) * (n - (n + 4) // 2 + 1), Fraction(0))

    def field(self) -> Field:
        return infer_field(self.as_vector())


@dataclass(frozen=True)
class FamilyBParams:
    """Parameters beta_s0, ..., beta_{n+1} (s0 = floor((n+5)/2)) of the m = n+2 family."""

    n: int
    beta: tuple

    def __post_init__(self):
        object.__setattr__(self, "beta", tuple(self.beta))
        if self.n < MIN_N:
            raise ParameterError(f"n below minimum: family B needs n >= {MIN_N}, got {self.n}")
        want = self.n + 2 - self.s0
        if len(self.beta) != want:
            raise ParameterError(f"family B with n={self.n} takes {want} beta values (s0={self.s0}), got {len(self.beta)}")

    @property
    def s0(self) -> int:
        return (self.n + 5) // 2

    @property
    def m(self) -> int:
        return self.n + 2

    def beta_at(self, k: int):
        return self.beta[k - self.s0]

    def as_vector(self) -> tuple:
        return tuple(self.beta)

    @classmethod
    def from_vector(cls, n: int, vec) -> "FamilyBParams":
        return cls(n, tuple(vec))

    @classmethod
    def zero(cls, n: int) -> "FamilyBParams":
        return cls(n, (Fraction(0),) * (n + 2 - (n + 5) // 2))

    def field(self) -> Field:
        return infer_field(self.as_vector())


def family_param_length(family: str, n: int) -> int:
    if family == "A":
        return n - (n + 4) // 2 + 3
    if family == "B":
        return n + 2 - (n + 5) // 2
    raise ParameterError(f"unknown family {family!r}")


def make_params(family: str, n: int, vec):
    vec = tuple(vec)
    want = family_param_length(family, n)
    if len(vec) != want:
        raise ParameterError(f"family {family} with n={n} takes {want} parameters, got {len(vec)}")
    if family == "A":
        return FamilyAParams.from_vector(n, vec)
    if family == "B":
        return FamilyBParams.from_vector(n, vec)
    raise ParameterError(f"unknown family {family!r}")


class _Table:
    def __init__(self, field: Field):
        self.field = field
        self.products = {}

    def add(self, i, j, k, v):
        if v == 0:
            return
        out = self.products.setdefault((i, j), {})
        out[k] = out.get(k, self.field.zero) + self.field.coerce(v)


def build_model_1(dim: int, field: Field = QQ) -> SuperAlgebra:
    """[e_i, e_1] = e_{i+1}, all basis vectors even."""
    if dim < 1:
        raise ParameterError("dimension must be at least 1")
    basis = GradedBasis([f"e{i}" for i in range(1, dim + 1)], [EVEN] * dim)
    t = _Table(field)
    for i in range(1, dim):
        t.add(i - 1, 0, i, 1)
    return SuperAlgebra.from_products(basis, t.products, field, meta={"family": "model1"})


def build_model_2(n: int, m: int, field: Field = QQ) -> SuperAlgebra:
    """[e_i, e_1] = e_{i+1}, [e_i, e_2] = 2 e_{i+2}; parities alternate starting with e_1 odd."""
    if n < 1 or m not in (n, n + 1):
        raise ParameterError(f"second chain model needs m = n or m = n+1, got (n, m) = ({n}, {m})")
    d = n + m
    parity = [ODD if i % 2 == 0 else EVEN for i in range(d)]
    basis = GradedBasis([f"e{i}" for i in range(1, d + 1)], parity)
    t = _Table(field)
    for i in range(1, d):
        t.add(i - 1, 0, i, 1)
    for i in range(1, d - 1):
        t.add(i - 1, 1, i + 1, 2)
    return SuperAlgebra.from_products(basis, t.products, field, meta={"family": "model2"})


def build_zero_filiform(n: int, field: Field = QQ) -> SuperAlgebra:
    """The n-dimensional null-filiform Leibniz algebra (even part of both families)."""
    return build_model_1(n, field)


def build_family_A(p: FamilyAParams, field: Field | None = None) -> SuperAlgebra:
    field = field or p.field()
    n = p.n
    X = lambda i: i - 1
    Y = lambda j: n + j - 1
    t0 = p.t0
    half = _half(field)
    t = _Table(field)
    for i in range(1, n):
        t.add(X(i), X(1), X(i + 1), 1)
    for j in range(1, n):
        t.add(Y(j), X(1), Y(j + 1), 1)
    for i in range(1, n):
        t.add(X(i), Y(1), Y(i + 1), half)
    for j in range(1, n + 1):
        t.add(Y(j), Y(1), X(j), 1)
    t.add(Y(n + 1), Y(n + 1), X(n), p.gamma)
    for i in range(1, (n - 1) // 2 + 1):
        for k in range(t0, n + 2 - i):
            t.add(X(i), Y(n + 1), Y(k - 1 + i), p.beta_at(k))
    for k in range(t0, n + 1):
        t.add(Y(1), Y(n + 1), X(k - 1), -2 * field.coerce(p.beta_at(k)))
    t.add(Y(1), Y(n + 1), X(n), p.beta_last)
    for j in range(2, (n + 1) // 2 + 1):
        for k in range(t0, n + 3 - j):
            t.add(Y(j), Y(n + 1), X(k - 2 + j), -2 * field.coerce(p.beta_at(k)))
    return SuperAlgebra.from_products(
        GradedBasis.standard(n, n + 1), t.products, field, meta={"family": "A", "n": n}
    )


def build_family_B(p: FamilyBParams, field: Field | None = None) -> SuperAlgebra:
    field = field or p.field()
    n = p.n
    X = lambda i: i - 1
    Y = lambda j: n + j - 1
    s0 = p.s0
    half = _half(field)
    t = _Table(field)
    for i in range(1, n):
        t.add(X(i), X(1), X(i + 1), 1)
    for j in range(1, n + 1):
        t.add(Y(j), X(1), Y(j + 1), 1)
    for i in range(1, n + 1):
        t.add(X(i), Y(1), Y(i + 1), half)
    for j in range(1, n + 1):
        t.add(Y(j), Y(1), X(j), 1)
    for i in range(1, n // 2 + 1):
        for k in range(s0, n + 3 - i):
            t.add(X(i), Y(n + 2), Y(k - 1 + i), p.beta_at(k))
    for j in range(1, n // 2 + 1):
        for k in range(s0, n + 3 - j):
            t.add(Y(j), Y(n + 2), X(k - 2 + j), -2 * field.coerce(p.beta_at(k)))
    return SuperAlgebra.from_products(
        GradedBasis.standard(n, n + 2), t.products, field, meta={"family": "B", "n": n}
    )


def build_family(family: str, p, field: Field | None = None) -> SuperAlgebra:
    if family == "A":
        return build_family_A(p, field)
    if family == "B":
        return build_family_B(p, field)
    raise ParameterError(f"unknown family {family!r}")


# ---------------------------------------------------------------------------
# associative superalgebras and the D-construction


class ConstructionError(ValueError):
    pass


@dataclass(frozen=True)
class AssociativeSuperAlgebra:
    """Associative product tensor ``mult[i][j][k]`` (b_i b_j = sum_k ...) and a linear map D.

    ``D[k][i]`` is the coefficient of b_k in D(b_i) (columns are images).
    """

    basis: GradedBasis
    mult: tuple
    D: tuple
    field: Field = QQ

    def product_algebra(self) -> SuperAlgebra:
        return SuperAlgebra(self.basis, self.mult, self.field)

    def apply_D(self, v):
        d = self.basis.dim
        return [sum((self.D[k][i] * v[i] for i in range(d) if v[i]), self.field.zero) for k in range(d)]

    def mul(self, u, v):
        A = self.product_algebra()
        from .algebra import bracket

        return bracket(A, u, v)

    def validate(self):
        """Raise ConstructionError on the first violated axiom."""
        d = self.basis.dim
        f = self.field
        par = self.basis.parity
        A = self.product_algebra()
        from .algebra import bracket

        for i in range(d):
            for k in range(d):
                if not f.is_zero(self.D[k][i]) and par[k] != par[i]:
                    raise ConstructionError(f"D does not preserve parity: D(b{i}) has a b{k} component")
        e = [A.unit(i) for i in range(d)]
        for i in range(d):
            for j in range(d):
                for k in range(d):
                    lhs = bracket(A, bracket(A, e[i], e[j]), e[k])
                    rhs = bracket(A, e[i], bracket(A, e[j], e[k]))
                    if any(not f.is_zero(a - b) for a, b in zip(lhs, rhs)):
                        raise ConstructionError(f"product is not associative on basis triple {(i, j, k)}")
        for i in range(d):
            for j in range(d):
                Db = self.apply_D(e[j])
                Da = self.apply_D(e[i])
                one = self.apply_D(bracket(A, e[i], Db))
                two = bracket(A, Da, Db)
                three = self.apply_D(bracket(A, Da, e[j]))
                if any(not f.is_zero(a - b) for a, b in zip(one, two)) or any(
                    not f.is_zero(a - b) for a, b in zip(two, three)
                ):
                    raise ConstructionError(f"D-condition D(a Db) = Da Db = D((Da) b) fails on basis pair {(i, j)}")


def construct_from_associative_D(S: AssociativeSuperAlgebra) -> SuperAlgebra:
    """<a, b>_D = a (D b) - (-1)^{|a||b|} (D b) a."""
    S.validate()
    from .algebra import bracket

    A = S.product_algebra()
    f = S.field
    d = S.basis.dim
    par = S.basis.parity
    t = []
    for i in range(d):
        row = []
        for j in range(d):
            a = A.unit(i)
            Db = S.apply_D(A.unit(j))
            left = bracket(A, a, Db)
            right = bracket(A, Db, a)
            s = sign(par[i], par[j])
            row.append([x - s * y for x, y in zip(left, right)])
        t.append(row)
    L = SuperAlgebra(S.basis, t, f, meta={"family": "D-construction"})
    rep = check_graded_leibniz(L)
    if not rep.passed:
        raise ConstructionError(f"D-construction produced a non-Leibniz bracket at {rep.violations[0][0]}")
    return L


def _matrix_units(p: int, q: int, keep, field: Field):
    """Associative tensor of the span of selected matrix units E_ab of M(p+q)."""
    units = list(keep)
    idx = {u: r for r, u in enumerate(units)}
    d = len(units)
    zero = field.zero
    mult = [[[zero] * d for _ in range(d)] for _ in range(d)]
    for (a, b) in units:
        for (c, e) in units:
            if b == c and (a, e) in idx:
                mult[idx[(a, b)]][idx[(c, e)]][idx[(a, e)]] = field.one
    # block parity: rows/cols < p are even
    parity = [int((a < p) != (b < p)) for (a, b) in units]
    labels = [f"E{a + 1}{b + 1}" for (a, b) in units]
    return GradedBasis(labels, parity), mult


def upper_triangular_2x2(D: str = "diagonal", field: Field = QQ) -> AssociativeSuperAlgebra:
    """Upper-triangular 2x2 matrices (all even) with D the diagonal projection, identity or zero."""
    basis, mult = _matrix_units(2, 0, [(0, 0), (0, 1), (1, 1)], field)
    d = basis.dim
    zero, one = field.zero, field.one
    if D == "diagonal":
        Dm = [[one if (i == k and basis.labels[i] in ("E11", "E22")) else zero for i in range(d)] for k in range(d)]
    elif D == "identity":
        Dm = [[one if i == k else zero for i in range(d)] for k in range(d)]
    elif D == "zero":
        Dm = [[zero] * d for _ in range(d)]
    else:
        raise ValueError(f"unknown D {D!r}")
    return AssociativeSuperAlgebra(basis, _freeze(mult), _freeze(Dm), field)


def matrix_superalgebra_1_1(D: str = "identity", field: Field = QQ) -> AssociativeSuperAlgebra:
    """M(1|1): 2x2 matrices with E11, E22 even and E12, E21 odd."""
    basis, mult = _matrix_units(1, 1, [(0, 0), (0, 1), (1, 0), (1, 1)], field)
    d = basis.dim
    zero, one = field.zero, field.one
    if D == "identity":
        Dm = [[one if i == k else zero for i in range(d)] for k in range(d)]
    elif D == "zero":
        Dm = [[zero] * d for _ in range(d)]
    else:
        raise ValueError(f"unknown D {D!r}")
    return AssociativeSuperAlgebra(basis, _freeze(mult), _freeze(Dm), field)


def _freeze(t):
    if isinstance(t, list):
        return tuple(_freeze(x) for x in t)
    return t


def random_params(family: str, n: int, rng, zero_prob: float = 0.0, bound: int = 5):
    """Seeded rational draw; each entry is zeroed with probability ``zero_prob``."""
    vals = []
    for _ in range(family_param_length(family, n)):
        if rng.random() < zero_prob:
            vals.append(Fraction(0))
        else:
            vals.append(Fraction(rng.randint(-bound, bound), rng.randint(1, 4)))
    return make_params(family, n, vals)
