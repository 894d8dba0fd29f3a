"""Ground-field backends: exact rationals, tolerance-compared complex floats,
and exact cyclotomic numbers Q(zeta_N).

A backend is represented by a ``Field`` object that knows how to validate,
compare and serialise its own values.  Values themselves are plain Python
objects (``Fraction``, ``complex``) or :class:`Cyclotomic` instances; the
tolerance of the complex backend lives on the field, never on the values.
"""

from __future__ import annotations

import cmath
import math
from fractions import Fraction
from functools import lru_cache
from numbers import Integral


class BackendMismatch(TypeError):
    """Raised when values from different scalar backends are combined."""


class ExtensionRequired(ValueError):
    """Raised when an exact backend cannot represent a required root."""


DEFAULT_TOL = 1e-9


def parse_rational(text) -> Fraction:
    if isinstance(text, bool):
        raise BackendMismatch(f"not a rational: {text!r}")
    if isinstance(text, (Integral, Fraction)):
        return Fraction(text)
    if isinstance(text, str):
        return Fraction(text.strip())
    raise BackendMismatch(f"not a rational: {text!r}")


def format_rational(x: Fraction) -> str:
    x = Fraction(x)
    if x.denominator == 1:
        return str(x.numerator)
    return f"{x.numerator}/{x.denominator}"


# ---------------------------------------------------------------------------
# cyclotomic numbers


@lru_cache(maxsize=None)
def cyclotomic_polynomial(N: int) -> tuple[int, ...]:
    """Integer coefficients (lowest degree first) of the N-th cyclotomic polynomial."""
    if N < 1:
        raise ValueError("conductor must be positive")
    num = [-1] + [0] * (N - 1) + [1]
    for d in range(1, N):
        if N % d == 0:
            num = _poly_exact_div(num, list(cyclotomic_polynomial(d)))
    return tuple(num)


def _poly_exact_div(num, den):
    num = list(num)
    out = [0] * (len(num) - len(den) + 1)
    for i in range(len(out) - 1, -1, -1):
        c = num[i + len(den) - 1] // den[-1]
        out[i] = c
        for j, dj in enumerate(den):
            num[i + j] -= c * dj
    assert not any(num), "inexact cyclotomic division"
    return out


class Cyclotomic:
    """Exact element of Q(zeta_N), stored as coefficients in the power basis
    1, z, ..., z^(phi(N)-1) with z = exp(2*pi*i/N)."""

    __slots__ = ("N", "coeffs")

    def __init__(self, N: int, coeffs=()):
        self.N = N
        phi = len(cyclotomic_polynomial(N)) - 1
        cs = [Fraction(c) for c in coeffs]
        self.coeffs = tuple(_reduce(cs, N)) if len(cs) > phi else tuple(cs + [Fraction(0)] * (phi - len(cs)))

    @classmethod
    def root_of_unity(cls, N: int, power: int) -> "Cyclotomic":
        cs = [0] * (power % N + 1)
        cs[power % N] = 1
        return cls(N, cs)

    @classmethod
    def rational(cls, N: int, value) -> "Cyclotomic":
        return cls(N, [Fraction(value)])

    def _other(self, other):
        if isinstance(other, Cyclotomic):
            if other.N != self.N:
                raise BackendMismatch(f"cyclotomic conductors differ: {self.N} vs {other.N}")
            return other
        if isinstance(other, (Integral, Fraction)) and not isinstance(other, bool):
            return Cyclotomic(self.N, [other])
        raise BackendMismatch(f"cannot combine cyclotomic:{self.N} with {type(other).__name__}")

    def __add__(self, other):
        o = self._other(other)
        return Cyclotomic(self.N, [a + b for a, b in zip(self.coeffs, o.coeffs)])

    __radd__ = __add__

    def __neg__(self):
        return Cyclotomic(self.N, [-a for a in self.coeffs])

    def __sub__(self, other):
        return self + (-self._other(other))

    def __rsub__(self, other):
        return self._other(other) - self

    def __mul__(self, other):
        o = self._other(other)
        prod = [Fraction(0)] * (2 * len(self.coeffs))
        for i, a in enumerate(self.coeffs):
            if a:
                for j, b in enumerate(o.coeffs):
                    if b:
                        prod[i + j] += a * b
        return Cyclotomic(self.N, prod)

    __rmul__ = __mul__

    def inverse(self) -> "Cyclotomic":
        if not self:
            raise ZeroDivisionError("cyclotomic zero has no inverse")
        phi = len(self.coeffs)
        # columns: self * z^k in the power basis
        cols = []
        for k in range(phi):
            cols.append((self * Cyclotomic.root_of_unity(self.N, k)).coeffs)
        rows = [[cols[k][r] for k in range(phi)] + [Fraction(int(r == 0))] for r in range(phi)]
        for c in range(phi):
            p = next(r for r in range(c, phi) if rows[r][c] != 0)
            rows[c], rows[p] = rows[p], rows[c]
            piv = rows[c][c]
            rows[c] = [v / piv for v in rows[c]]
            for r in range(phi):
                if r != c and rows[r][c] != 0:
                    f = rows[r][c]
                    rows[r] = [a - f * b for a, b in zip(rows[r], rows[c])]
        return Cyclotomic(self.N, [rows[r][phi] for r in range(phi)])

    def __truediv__(self, other):
        return self * self._other(other).inverse()

    def __rtruediv__(self, other):
        return self._other(other) * self.inverse()

    def __pow__(self, k: int):
        if not isinstance(k, Integral):
            raise TypeError("cyclotomic powers must be integral")
        base = self if k >= 0 else self.inverse()
        result = Cyclotomic(self.N, [1])
        k = abs(k)
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def __bool__(self):
        return any(self.coeffs)

    def __eq__(self, other):
        try:
            o = self._other(other)
        except BackendMismatch:
            return NotImplemented
        return self.coeffs == o.coeffs

    def __hash__(self):
        return hash((self.N, self.coeffs))

    def __complex__(self):
        z = cmath.exp(2j * math.pi / self.N)
        return complex(sum(complex(float(c)) * z ** k for k, c in enumerate(self.coeffs)))

    def __abs__(self):
        return abs(complex(self))

    def __repr__(self):
        terms = [f"{format_rational(c)}*z^{k}" for k, c in enumerate(self.coeffs) if c]
        return f"Cyclotomic({self.N}: {' + '.join(terms) or '0'})"


def _reduce(cs, N):
    phi_poly = cyclotomic_polynomial(N)
    deg = len(phi_poly) - 1
    cs = list(cs)
    for i in range(len(cs) - 1, deg - 1, -1):
        c = cs[i]
        if c:
            for j in range(deg + 1):
                cs[i - deg + j] -= c * phi_poly[j]
    return cs[:deg]


# ---------------------------------------------------------------------------
# fields


class Field:
    name = "abstract"
    exact = True

    def coerce(self, x):
        raise NotImplementedError

    def is_zero(self, x) -> bool:
        return x == 0

    def eq(self, a, b) -> bool:
        return a == b

    @property
    def zero(self):
        z = self.__dict__.get("_zero")
        if z is None:
            z = self.__dict__["_zero"] = self.coerce(0)
        return z

    @property
    def one(self):
        o = self.__dict__.get("_one")
        if o is None:
            o = self.__dict__["_one"] = self.coerce(1)
        return o

    def __eq__(self, other):
        return isinstance(other, Field) and self.name == other.name

    def __hash__(self):
        return hash(self.name)

    def __repr__(self):
        return f"<field {self.name}>"


class RationalField(Field):
    name = "rational"

    def coerce(self, x):
        t = type(x)
        if t is Fraction:
            return x
        if t is int:
            return Fraction(x)
        if isinstance(x, Fraction):
            return x
        if isinstance(x, Integral) and not isinstance(x, bool):
            return Fraction(x)
        raise BackendMismatch(f"rational backend rejects {type(x).__name__} value {x!r}")

    def to_json(self, x):
        return format_rational(x)

    def from_json(self, v):
        return parse_rational(v)


class ComplexField(Field):
    exact = False

    def __init__(self, tol: float = DEFAULT_TOL):
        if not tol > 0:
            raise ValueError("tolerance must be positive")
        self.tol = tol

    name = "complex"

    def coerce(self, x):
        t = type(x)
        if t is complex:
            return x
        if t is float or t is int:
            return complex(x)
        if isinstance(x, bool):
            raise BackendMismatch("booleans are not scalars")
        if isinstance(x, (complex, float, Integral)):
            return complex(x)
        raise BackendMismatch(f"complex backend rejects {type(x).__name__} value {x!r}")

    def is_zero(self, x) -> bool:
        return abs(x) <= self.tol

    def eq(self, a, b) -> bool:
        return abs(a - b) <= self.tol * max(1.0, abs(a), abs(b))

    def to_json(self, x):
        return {"re": x.real, "im": x.imag}

    def from_json(self, v):
        if isinstance(v, dict):
            return complex(float(v["re"]), float(v.get("im", 0.0)))
        if isinstance(v, (int, float)) and not isinstance(v, bool):
            return complex(v)
        raise BackendMismatch(f"complex backend expects {{re, im}}, got {v!r}")


class CyclotomicField(Field):
    def __init__(self, N: int):
        if N < 1:
            raise ValueError("conductor must be positive")
        self.N = N
        self.name = f"cyclotomic:{N}"

    def coerce(self, x):
        if isinstance(x, Cyclotomic):
            if x.N != self.N:
                raise BackendMismatch(f"cyclotomic conductor {x.N} in a cyclotomic:{self.N} context")
            return x
        if isinstance(x, (Integral, Fraction)) and not isinstance(x, bool):
            return Cyclotomic(self.N, [x])
        raise BackendMismatch(f"cyclotomic backend rejects {type(x).__name__} value {x!r}")

    def is_zero(self, x) -> bool:
        return not x

    def to_json(self, x):
        return [format_rational(c) for c in x.coeffs]

    def from_json(self, v):
        if not isinstance(v, list):
            raise BackendMismatch(f"cyclotomic backend expects a coefficient list, got {v!r}")
        return Cyclotomic(self.N, [parse_rational(c) for c in v])


QQ = RationalField()


def field_from_name(name: str, tol: float = DEFAULT_TOL) -> Field:
    if name == "rational":
        return QQ
    if name == "complex":
        return ComplexField(tol)
    if name.startswith("cyclotomic:"):
        return CyclotomicField(int(name.split(":", 1)[1]))
    raise ValueError(f"unknown scalar backend {name!r}")


def infer_field(values, tol: float = DEFAULT_TOL) -> Field:
    """Pick the backend that holds every value without conversion.

    Mixing exact rationals with floats, or cyclotomics of different
    conductors, is an error.
    """
    kinds = set()
    conductors = set()
    for v in values:
        if isinstance(v, bool):
            raise BackendMismatch("booleans are not scalars")
        if isinstance(v, Integral):
            continue
        if isinstance(v, Fraction):
            kinds.add("q")
        elif isinstance(v, (float, complex)):
            kinds.add("c")
        elif isinstance(v, Cyclotomic):
            kinds.add("z")
            conductors.add(v.N)
        else:
            raise BackendMismatch(f"unsupported scalar {v!r}")
    if "c" in kinds and kinds - {"c"}:
        raise BackendMismatch("refusing to mix floating values with exact ones")
    if len(conductors) > 1:
        raise BackendMismatch(f"mixed cyclotomic conductors {sorted(conductors)}")
    if "c" in kinds:
        return ComplexField(tol)
    if "z" in kinds:
        return CyclotomicField(conductors.pop())
    return QQ


def to_complex(x) -> complex:
    return complex(x)


# ---------------------------------------------------------------------------
# roots


def root_of_unity(m: int, t: int, field: Field | None = None):
    """S_{m,t} = cos(2 pi m / t) + i sin(2 pi m / t) in the requested backend."""
    if t < 1:
        raise ValueError("order must be positive")
    m %= t
    if field is None or isinstance(field, ComplexField):
        if 4 * m % t == 0:
            # exact quarter turns
            return complex(*[(1, 0), (0, 1), (-1, 0), (0, -1)][4 * m // t])
        ang = 2 * math.pi * m / t
        return complex(math.cos(ang), math.sin(ang))
    if isinstance(field, CyclotomicField):
        if field.N % t:
            raise ExtensionRequired(f"S_{{{m},{t}}} needs conductor divisible by {t}, context has {field.N}")
        return Cyclotomic.root_of_unity(field.N, m * (field.N // t))
    if 2 * m % t == 0:
        return Fraction(1 if m == 0 else -1)
    raise ExtensionRequired(f"S_{{{m},{t}}} is not rational; use the complex or cyclotomic backend")


def exact_rational_root(c: Fraction, k: int):
    """Return a rational r with r**k == c, preferring r > 0, or None."""
    c = Fraction(c)
    if c == 0:
        return Fraction(0)
    if c < 0 and k % 2 == 0:
        return None
    sign = -1 if c < 0 else 1
    num = _int_root(abs(c.numerator), k)
    den = _int_root(c.denominator, k)
    if num is None or den is None:
        return None
    return sign * Fraction(num, den)


def _int_root(n: int, k: int):
    if n in (0, 1):
        return n
    r = round(n ** (1.0 / k)) if n < 2 ** 1000 else int(math.exp(math.log(n) / k))
    for cand in (r - 1, r, r + 1):
        if cand >= 0 and cand ** k == n:
            return cand
    # fall back to integer Newton iteration for large inputs
    lo, hi = 0, 1 << (n.bit_length() // k + 1)
    while lo < hi:
        mid = (lo + hi) // 2
        if mid ** k < n:
            lo = mid + 1
        else:
            hi = mid
    return lo if lo ** k == n else None


def kth_roots(c, k: int) -> list:
    """All k-th roots of c (c nonzero).

    Roots that are rational are returned exactly as Fractions and listed
    first; the rest are principal-branch complex values multiplied by
    S_{m,k}.
    """
    if k < 1:
        raise ValueError("root order must be positive")
    if isinstance(c, (Fraction, Integral)) and not isinstance(c, bool):
        r = exact_rational_root(Fraction(c), k)
        if r is not None:
            exact = [r] if k % 2 else [r, -r]
            rest = []
            for m in range(k):
                z = complex(r) * root_of_unity(m, k)
                if abs(z.imag) > 1e-12 * max(1.0, abs(z)):
                    rest.append(z)
            return exact + rest
    z = complex(c)
    if z == 0:
        return [complex(0)] * k
    base = cmath.rect(abs(z) ** (1.0 / k), cmath.phase(z) / k)
    return [base * root_of_unity(m, k) for m in range(k)]


def principal_root(c, k: int):
    """Principal k-th root; exact when c is a rational with a rational root."""
    if isinstance(c, (Fraction, Integral)) and not isinstance(c, bool):
        r = exact_rational_root(Fraction(c), k)
        if r is not None and r >= 0:
            return r
    z = complex(c)
    return cmath.rect(abs(z) ** (1.0 / k), cmath.phase(z) / k)


def is_exact_value(x) -> bool:
    return isinstance(x, (Fraction, Integral, Cyclotomic)) and not isinstance(x, bool)


def common_field(values, tol: float = DEFAULT_TOL) -> Field:
    """Smallest backend holding every value, promoting exact values to complex
    when a floating value is present."""
    vals = list(values)
    if any(isinstance(v, (float, complex)) for v in vals):
        return ComplexField(tol)
    return infer_field(vals, tol)


def convert(x, field: Field):
    """Move a value into ``field``; exact to complex is the only lossy direction allowed."""
    if isinstance(field, ComplexField):
        return complex(x)
    return field.coerce(x)
