"""Dense linear algebra over a scalar backend.

Matrices are lists of rows.  Exact backends use plain elimination (and
fraction-free Bareiss for ranks over Q); the complex backend uses partial
pivoting with the field tolerance.
"""

from __future__ import annotations

from fractions import Fraction
from math import lcm

from .scalars import ComplexField, Field, RationalField


class SingularMatrix(ValueError):
    pass


def zeros(r: int, c: int, field: Field):
    z = field.zero
    return [[z] * c for _ in range(r)]


def identity(d: int, field: Field):
    m = zeros(d, d, field)
    for i in range(d):
        m[i][i] = field.one
    return m


def transpose(m):
    return [list(col) for col in zip(*m)] if m else []


def matmul(a, b, field: Field):
    if not a:
        return []
    inner = len(b)
    cols = len(b[0]) if b else 0
    out = zeros(len(a), cols, field)
    for i, row in enumerate(a):
        acc = out[i]
        for k in range(inner):
            x = row[k]
            if not x:
                continue
            bk = b[k]
            for j in range(cols):
                y = bk[j]
                if y:
                    acc[j] = acc[j] + x * y
    return out


def mat_vec(m, v, field: Field):
    out = []
    for row in m:
        s = field.zero
        for x, y in zip(row, v):
            if x and y:
                s = s + x * y
        out.append(s)
    return out


def mat_sub(a, b):
    return [[x - y for x, y in zip(ra, rb)] for ra, rb in zip(a, b)]


def mat_scale(a, s):
    return [[s * x for x in row] for row in a]


def is_zero_matrix(m, field: Field) -> bool:
    return all(field.is_zero(x) for row in m for x in row)


def _pivot_row(rows, start, col, field: Field):
    if isinstance(field, ComplexField):
        best, best_abs = None, 0.0
        for r in range(start, len(rows)):
            a = abs(rows[r][col])
            if a > best_abs:
                best, best_abs = r, a
        if best is None or field.is_zero(best_abs):
            return None
        return best
    for r in range(start, len(rows)):
        if not field.is_zero(rows[r][col]):
            return r
    return None


def rref(rows, field: Field, ncols: int | None = None):
    """Reduced row echelon form.  Returns (nonzero rows, pivot columns)."""
    m = [list(r) for r in rows]
    if not m:
        return [], []
    ncols = len(m[0]) if ncols is None else ncols
    pivots = []
    r = 0
    for c in range(ncols):
        if r >= len(m):
            break
        p = _pivot_row(m, r, c, field)
        if p is None:
            continue
        m[r], m[p] = m[p], m[r]
        inv = field.one / m[r][c]
        m[r] = [x * inv for x in m[r]]
        m[r][c] = field.one
        for i in range(len(m)):
            if i != r:
                f = m[i][c]
                if f:
                    m[i] = [a - f * b for a, b in zip(m[i], m[r])]
                    m[i][c] = field.zero
        pivots.append(c)
        r += 1
    out = m[:r]
    if not field.exact:
        out = [[field.zero if field.is_zero(x) else x for x in row] for row in out]
    return out, pivots


def _integer_rows(rows):
    out = []
    for row in rows:
        den = 1
        for x in row:
            den = lcm(den, Fraction(x).denominator)
        out.append([int(Fraction(x) * den) for x in row])
    return out


def bareiss_rank(int_rows) -> int:
    """Rank of an integer matrix by fraction-free (Bareiss) elimination."""
    m = [list(r) for r in int_rows if any(r)]
    if not m:
        return 0
    ncols = len(m[0])
    prev = 1
    r = 0
    for c in range(ncols):
        if r >= len(m):
            break
        p = next((i for i in range(r, len(m)) if m[i][c] != 0), None)
        if p is None:
            continue
        m[r], m[p] = m[p], m[r]
        piv = m[r][c]
        for i in range(r + 1, len(m)):
            mi = m[i]
            a = mi[c]
            mi_new = [(piv * mi[j] - a * m[r][j]) // prev for j in range(ncols)]
            m[i] = mi_new
        prev = piv
        r += 1
    return r


def _column_scales(m):
    ncols = len(m[0]) if m else 0
    out = []
    for c in range(ncols):
        s = max(abs(row[c]) for row in m)
        out.append(1.0 / s if s else 1.0)
    return out


def _equilibrate(m):
    """Scale columns to unit max-norm so the floating pivot tolerance is relative."""
    sc = _column_scales(m)
    return [[x * s for x, s in zip(row, sc)] for row in m], sc


def rank(rows, field: Field) -> int:
    rows = [list(r) for r in rows]
    if not rows:
        return 0
    if isinstance(field, RationalField):
        return bareiss_rank(_integer_rows(rows))
    if not field.exact:
        rows = _equilibrate(rows)[0]
    return len(rref(rows, field)[0])


def nullspace(rows, ncols: int, field: Field):
    """Basis of {z : rows . z = 0}, one vector per free column."""
    red, pivots = rref(rows, field, ncols) if rows else ([], [])
    free = [c for c in range(ncols) if c not in pivots]
    basis = []
    for f in free:
        v = [field.zero] * ncols
        v[f] = field.one
        for row, p in zip(red, pivots):
            v[p] = -row[f]
        basis.append(v)
    return basis


def span_basis(vectors, field: Field, dim: int):
    """Row-reduced basis of the span of ``vectors``."""
    vecs = [list(v) for v in vectors]
    if not vecs:
        return []
    return rref(vecs, field, dim)[0]


def coordinates(basis_rref, pivots, v, field: Field):
    """Coordinates of v in an RREF basis, or None when v is outside the span."""
    coords = [v[p] for p in pivots]
    resid = list(v)
    for c, row in zip(coords, basis_rref):
        if c:
            resid = [a - c * b for a, b in zip(resid, row)]
    if all(field.is_zero(x) for x in resid):
        return coords
    return None


def inverse(m, field: Field):
    d = len(m)
    if not field.exact:
        q, sc = _equilibrate(m)
        qi = _inverse(q, field, d)
        return [[s * x for x in row] for row, s in zip(qi, sc)]
    return _inverse(m, field, d)


def _inverse(m, field: Field, d: int):
    aug = [list(row) + e for row, e in zip(m, identity(d, field))]
    red, pivots = rref(aug, field, d)
    if pivots != list(range(d)):
        raise SingularMatrix(f"matrix has rank {len(pivots)} < {d}")
    return [row[d:] for row in red]


def solve(m, b, field: Field):
    """One solution x of m x = b, or None if inconsistent."""
    ncols = len(m[0]) if m else 0
    aug = [list(row) + [bi] for row, bi in zip(m, b)]
    red, pivots = rref(aug, field, ncols + 1)
    if ncols in pivots:
        return None
    x = [field.zero] * ncols
    for row, p in zip(red, pivots):
        x[p] = row[ncols]
    return x


def combine_columns(cols, coeffs, field: Field):
    """sum_k coeffs[k] * cols[k] for an iterable of (k, coeff) pairs."""
    d = len(cols[0]) if cols else 0
    out = [field.zero] * d
    for k, c in coeffs:
        if not c:
            continue
        for r, x in enumerate(cols[k]):
            if x:
                out[r] = out[r] + c * x
    return out
