"""Graded bases, structure-constant tensors and the identity checkers."""

from __future__ import annotations

from dataclasses import dataclass, field as dc_field
from itertools import product as iproduct

from . import linalg
from .scalars import BackendMismatch, Field, QQ

EVEN, ODD = 0, 1


def sign(a: int, b: int) -> int:
    """(-1)^(a*b) for parities a, b."""
    return -1 if (a & b & 1) else 1


@dataclass(frozen=True)
class GradedBasis:
    labels: tuple
    parity: tuple

    def __post_init__(self):
        object.__setattr__(self, "labels", tuple(self.labels))
        object.__setattr__(self, "parity", tuple(int(p) for p in self.parity))
        if len(self.labels) != len(self.parity):
            raise ValueError("labels and parity vector differ in length")
        if len(set(self.labels)) != len(self.labels):
            raise ValueError("basis labels must be distinct")
        if any(p not in (EVEN, ODD) for p in self.parity):
            raise ValueError("parities must be 0 (even) or 1 (odd)")

    @classmethod
    def standard(cls, n: int, m: int) -> "GradedBasis":
        """x1..xn even, then y1..ym odd."""
        labels = [f"x{i}" for i in range(1, n + 1)] + [f"y{j}" for j in range(1, m + 1)]
        return cls(labels, [EVEN] * n + [ODD] * m)

    @property
    def dim(self) -> int:
        return len(self.labels)

    @property
    def even_dim(self) -> int:
        return self.parity.count(EVEN)

    @property
    def odd_dim(self) -> int:
        return self.parity.count(ODD)

    def indices(self, part: int):
        return [i for i, p in enumerate(self.parity) if p == part]

    def index(self, label: str) -> int:
        return self.labels.index(label)


class SuperAlgebra:
    """Finite-dimensional Z2-graded algebra given by dense structure constants.

    ``tensor[i][j][k]`` is the coefficient of b_k in [b_i, b_j].  Instances
    are immutable; use :meth:`with_product` to derive modified copies.
    """

    __slots__ = ("basis", "field", "tensor", "_table", "meta")

    def __init__(self, basis: GradedBasis, tensor, field: Field = QQ, meta=None):
        d = basis.dim
        if len(tensor) != d or any(len(row) != d for row in tensor) or any(
            len(cell) != d for row in tensor for cell in row
        ):
            raise ValueError(f"structure tensor must be {d}x{d}x{d}")
        zt, co = type(field.zero), field.coerce
        t = tuple(tuple(tuple(x if type(x) is zt else co(x) for x in cell) for cell in row) for row in tensor)
        table = tuple(
            tuple(tuple((k, x) for k, x in enumerate(t[i][j]) if x) for j in range(d)) for i in range(d)
        )
        object.__setattr__(self, "basis", basis)
        object.__setattr__(self, "field", field)
        object.__setattr__(self, "tensor", t)
        object.__setattr__(self, "_table", table)
        object.__setattr__(self, "meta", dict(meta or {}))

    def __setattr__(self, key, value):
        raise AttributeError("SuperAlgebra is immutable")

    @classmethod
    def from_products(cls, basis: GradedBasis, products, field: Field = QQ, meta=None) -> "SuperAlgebra":
        """Build from a sparse mapping {(i, j): {k: value}}; omitted pairs are zero."""
        d = basis.dim
        zero = field.zero
        t = [[[zero] * d for _ in range(d)] for _ in range(d)]
        for (i, j), out in products.items():
            for k, v in out.items():
                t[i][j][k] = t[i][j][k] + field.coerce(v)
        return cls(basis, t, field, meta)

    @classmethod
    def zero_algebra(cls, n: int, m: int, field: Field = QQ) -> "SuperAlgebra":
        return cls.from_products(GradedBasis.standard(n, m), {}, field)

    @property
    def dim(self) -> int:
        return self.basis.dim

    @property
    def parity(self):
        return self.basis.parity

    def product(self, i: int, j: int):
        """Sparse [b_i, b_j] as a tuple of (k, coefficient)."""
        return self._table[i][j]

    def unit(self, i: int):
        v = [self.field.zero] * self.dim
        v[i] = self.field.one
        return v

    def zero_vector(self):
        return [self.field.zero] * self.dim

    def with_product(self, i: int, j: int, vec) -> "SuperAlgebra":
        t = [[list(cell) for cell in row] for row in self.tensor]
        t[i][j] = [self.field.coerce(x) for x in vec]
        return SuperAlgebra(self.basis, t, self.field, self.meta)

    def nonzero_products(self):
        for i in range(self.dim):
            for j in range(self.dim):
                if self._table[i][j]:
                    yield i, j, self._table[i][j]

    def __eq__(self, other):
        return (
            isinstance(other, SuperAlgebra)
            and self.basis == other.basis
            and self.field == other.field
            and self.tensor == other.tensor
        )

    def __hash__(self):
        return hash((self.basis, self.field, self.tensor))

    def __repr__(self):
        return f"SuperAlgebra(n={self.basis.even_dim}, m={self.basis.odd_dim}, {self.field.name})"


def _check_vector(A: SuperAlgebra, v):
    if len(v) != A.dim:
        raise ValueError(f"vector of length {len(v)} in a {A.dim}-dimensional algebra")
    zt, co = type(A.field.zero), A.field.coerce
    return [x if type(x) is zt else co(x) for x in v]


def bracket(A: SuperAlgebra, u, v):
    """Bilinear extension of the structure tensor."""
    u = _check_vector(A, u)
    v = _check_vector(A, v)
    out = A.zero_vector()
    for i, ui in enumerate(u):
        if not ui:
            continue
        row = A._table[i]
        for j, vj in enumerate(v):
            if not vj:
                continue
            s = ui * vj
            for k, c in row[j]:
                out[k] = out[k] + s * c
    return out


def _sparse_bracket_left(A: SuperAlgebra, i: int, vec: dict) -> dict:
    """[b_i, vec] for a sparse vector {index: coeff}."""
    out = {}
    row = A._table[i]
    for l, c in vec.items():
        for k, x in row[l]:
            out[k] = out.get(k, 0) + c * x
    return out


def _sparse_bracket_right(A: SuperAlgebra, vec: dict, j: int) -> dict:
    """[vec, b_j] for a sparse vector."""
    out = {}
    for l, c in vec.items():
        for k, x in A._table[l][j]:
            out[k] = out.get(k, 0) + c * x
    return out


@dataclass
class IdentityReport:
    """Outcome of an exhaustive identity check.

    ``violations`` holds (index tuple, residual) pairs; the residual is a
    dense vector, or None for pure index-level failures.
    """

    name: str
    violations: list = dc_field(default_factory=list)
    details: dict = dc_field(default_factory=dict)

    @property
    def passed(self) -> bool:
        return not self.violations

    def __bool__(self):
        return self.passed

    def summary(self) -> str:
        status = "pass" if self.passed else f"FAIL ({len(self.violations)} violations)"
        return f"{self.name}: {status}"


def check_grading(A: SuperAlgebra) -> IdentityReport:
    par = A.parity
    rep = IdentityReport("grading")
    for i, j, out in A.nonzero_products():
        for k, x in out:
            if not A.field.is_zero(x) and par[k] != (par[i] ^ par[j]):
                rep.violations.append(((i, j, k), None))
    return rep


def _dense(A: SuperAlgebra, sparse: dict):
    v = A.zero_vector()
    for k, x in sparse.items():
        v[k] = v[k] + x
    return v


def _leibniz_residuals(A: SuperAlgebra, convention: str):
    """Yield ((i, j, k), residual) for every failing basis triple."""
    d = A.dim
    par = A.parity
    f = A.field
    for j, k in iproduct(range(d), repeat=2):
        jk = dict(A._table[j][k])
        for i in range(d):
            if convention == "right":
                # [x,[y,z]] - [[x,y],z] + (-1)^{|y||z|} [[x,z],y]
                lhs = _sparse_bracket_left(A, i, jk)
                r1 = _sparse_bracket_right(A, dict(A._table[i][j]), k)
                r2 = _sparse_bracket_right(A, dict(A._table[i][k]), j)
                s = sign(par[j], par[k])
            else:
                # left Leibniz: [x,[y,z]] - [[x,y],z] - (-1)^{|x||y|} [y,[x,z]]
                lhs = _sparse_bracket_left(A, i, jk)
                r1 = _sparse_bracket_right(A, dict(A._table[i][j]), k)
                r2 = _sparse_bracket_left(A, j, dict(A._table[i][k]))
                s = -sign(par[i], par[j])
            res = dict(lhs)
            for key, x in r1.items():
                res[key] = res.get(key, 0) - x
            for key, x in r2.items():
                res[key] = res.get(key, 0) + s * x
            if any(not f.is_zero(x) for x in res.values()):
                yield (i, j, k), _dense(A, res)


def check_graded_leibniz(A: SuperAlgebra, convention: str = "right") -> IdentityReport:
    """Exhaustive check of [x,[y,z]] = [[x,y],z] - (-1)^{|y||z|}[[x,z],y] on basis triples.

    When the identity fails, the report's ``details["satisfies"]`` records
    whether the left-handed convention holds instead.
    """
    if convention not in ("right", "left"):
        raise ValueError("convention must be 'right' or 'left'")
    rep = IdentityReport(f"graded Leibniz ({convention})")
    rep.violations = list(_leibniz_residuals(A, convention))
    if rep.violations:
        other = "left" if convention == "right" else "right"
        rep.details["satisfies"] = other if next(_leibniz_residuals(A, other), None) is None else None
    else:
        rep.details["satisfies"] = convention
    return rep


def check_graded_antisymmetry(A: SuperAlgebra) -> IdentityReport:
    """[x,y] + (-1)^{|x||y|}[y,x] = 0 on basis pairs."""
    par = A.parity
    f = A.field
    rep = IdentityReport("graded antisymmetry")
    for i in range(A.dim):
        for j in range(i, A.dim):
            res = dict(A._table[i][j])
            s = sign(par[i], par[j])
            for k, x in A._table[j][i]:
                res[k] = res.get(k, 0) + s * x
            if any(not f.is_zero(x) for x in res.values()):
                rep.violations.append(((i, j), _dense(A, res)))
    return rep


def check_graded_jacobi(A: SuperAlgebra) -> IdentityReport:
    """Super Jacobi in derivation form: [x,[y,z]] = [[x,y],z] + (-1)^{|x||y|}[y,[x,z]]."""
    rep = IdentityReport("graded Jacobi")
    rep.violations = list(_leibniz_residuals(A, "left"))
    return rep


def subalgebra_generated(A: SuperAlgebra, gens):
    """Row-reduced basis of the smallest bracket-closed subspace containing ``gens``."""
    f = A.field
    gens = [_check_vector(A, g) for g in gens]
    if not gens:
        raise ValueError("need at least one generator")
    basis = linalg.span_basis(gens, f, A.dim)
    while True:
        new = list(basis)
        for u in basis:
            for v in basis:
                new.append(bracket(A, u, v))
        grown = linalg.span_basis(new, f, A.dim)
        if len(grown) == len(basis):
            return grown
        basis = grown


def restrict(A: SuperAlgebra, sub_basis) -> SuperAlgebra:
    """The subalgebra spanned by a closed subspace, in its own basis.

    ``sub_basis`` must be row-reduced with homogeneous rows (as returned by
    :func:`subalgebra_generated` on homogeneous generators).
    """
    f = A.field
    red, pivots = linalg.rref(sub_basis, f, A.dim)
    parities = []
    for row in red:
        ps = {A.parity[k] for k, x in enumerate(row) if not f.is_zero(x)}
        if len(ps) != 1:
            raise ValueError("subspace basis vectors must be homogeneous")
        parities.append(ps.pop())
    order = sorted(range(len(red)), key=lambda r: parities[r])
    sb = GradedBasis([f"u{r + 1}" for r in range(len(red))], [parities[r] for r in order])
    t = []
    for a in order:
        row_t = []
        for b in order:
            coords = linalg.coordinates(red, pivots, bracket(A, red[a], red[b]), f)
            if coords is None:
                raise ValueError("subspace is not closed under the bracket")
            row_t.append([coords[r] for r in order])
        t.append(row_t)
    return SuperAlgebra(sb, t, f)


def ensure_same_backend(*algebras):
    fields = {a.field for a in algebras}
    if len(fields) > 1:
        raise BackendMismatch(f"algebras use different scalar backends: {sorted(x.name for x in fields)}")


def as_field(A: SuperAlgebra, field: Field) -> SuperAlgebra:
    """Copy of A over another backend (exact to complex, or the same backend)."""
    from .scalars import convert

    if A.field == field:
        return A
    t = [[[convert(x, field) for x in cell] for cell in row] for row in A.tensor]
    return SuperAlgebra(A.basis, t, field, A.meta)
