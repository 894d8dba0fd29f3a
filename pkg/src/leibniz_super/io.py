"""JSON encodings for scalars, algebras, parameter records and witnesses.

Rationals are "p/q" strings, complex numbers {"re", "im"} pairs and
cyclotomic numbers lists of rational coefficients (conductor in the header).
"""

from __future__ import annotations

import json
import os
from fractions import Fraction

from .algebra import GradedBasis, SuperAlgebra
from .families import FamilyAParams, FamilyBParams, make_params
from .isomorphism import IsoWitness
from .scalars import BackendMismatch, Cyclotomic, field_from_name, format_rational, parse_rational


class SchemaError(ValueError):
    pass


def scalar_to_json(x):
    if isinstance(x, bool):
        raise BackendMismatch("booleans are not scalars")
    if isinstance(x, (int, Fraction)):
        return format_rational(x)
    if isinstance(x, (complex, float)):
        z = complex(x)
        return {"re": z.real, "im": z.imag}
    if isinstance(x, Cyclotomic):
        return {"cyclotomic": x.N, "coeffs": [format_rational(c) for c in x.coeffs]}
    raise BackendMismatch(f"cannot encode {x!r}")


def scalar_from_json(v):
    """Inverse of scalar_to_json; bare integers are read as rationals."""
    if isinstance(v, bool):
        raise SchemaError("booleans are not scalars")
    if isinstance(v, str):
        try:
            return parse_rational(v)
        except (ValueError, ZeroDivisionError) as e:
            raise SchemaError(f"bad rational {v!r}") from e
    if isinstance(v, int):
        return Fraction(v)
    if isinstance(v, float):
        return complex(v)
    if isinstance(v, dict) and "re" in v:
        try:
            return complex(float(v["re"]), float(v.get("im", 0.0)))
        except (TypeError, ValueError) as e:
            raise SchemaError(f"bad complex {v!r}") from e
    if isinstance(v, dict) and "cyclotomic" in v:
        return Cyclotomic(int(v["cyclotomic"]), [parse_rational(c) for c in v["coeffs"]])
    raise SchemaError(f"cannot decode scalar {v!r}")


def algebra_to_json(A: SuperAlgebra) -> dict:
    f = A.field
    brackets = []
    for i, j, out in A.nonzero_products():
        entries = [{"k": k, "v": f.to_json(x)} for k, x in out if not f.is_zero(x)]
        if entries:
            brackets.append({"l": i, "r": j, "out": entries})
    return {
        "even_dim": A.basis.even_dim,
        "odd_dim": A.basis.odd_dim,
        "basis": list(A.basis.labels),
        "parity": list(A.basis.parity),
        "scalar": f.name,
        "brackets": brackets,
    }


def algebra_from_json(obj, tol: float | None = None) -> SuperAlgebra:
    if not isinstance(obj, dict):
        raise SchemaError("algebra JSON must be an object")
    try:
        labels = obj["basis"]
        parity = obj["parity"]
        scalar = obj.get("scalar", "rational")
        brackets = obj.get("brackets", [])
    except KeyError as e:
        raise SchemaError(f"missing key {e}") from e
    try:
        basis = GradedBasis(labels, parity)
        field = field_from_name(scalar) if tol is None else field_from_name(scalar, tol)
    except ValueError as e:
        raise SchemaError(str(e)) from e
    if "even_dim" in obj and obj["even_dim"] != basis.even_dim:
        raise SchemaError("even_dim does not match the parity vector")
    if "odd_dim" in obj and obj["odd_dim"] != basis.odd_dim:
        raise SchemaError("odd_dim does not match the parity vector")
    d = basis.dim
    products = {}
    for br in brackets:
        try:
            i, j = int(br["l"]), int(br["r"])
            out = br["out"]
        except (KeyError, TypeError, ValueError) as e:
            raise SchemaError(f"malformed bracket entry {br!r}") from e
        if not (0 <= i < d and 0 <= j < d):
            raise SchemaError(f"bracket indices ({i}, {j}) out of range")
        cell = products.setdefault((i, j), {})
        for e in out:
            k = int(e["k"])
            if not 0 <= k < d:
                raise SchemaError(f"output index {k} out of range")
            try:
                cell[k] = field.from_json(e["v"])
            except (BackendMismatch, ValueError, KeyError, TypeError) as err:
                raise SchemaError(f"bad coefficient {e!r}: {err}") from err
    return SuperAlgebra.from_products(basis, products, field)


def params_to_json(p) -> dict:
    if isinstance(p, FamilyAParams):
        return {
            "gamma": scalar_to_json(p.gamma),
            "beta": [scalar_to_json(x) for x in p.beta],
            "beta_last": scalar_to_json(p.beta_last),
        }
    if isinstance(p, FamilyBParams):
        return {"beta": [scalar_to_json(x) for x in p.beta]}
    raise TypeError(f"not a parameter record: {p!r}")


def params_from_json(family: str, n: int, obj):
    """Accepts {"gamma", "beta", "beta_last"} / {"beta"} objects or a flat vector."""
    try:
        if isinstance(obj, list):
            vec = [scalar_from_json(v) for v in obj]
        elif family == "A":
            vec = [scalar_from_json(obj["gamma"]), *map(scalar_from_json, obj["beta"]), scalar_from_json(obj["beta_last"])]
        elif family == "B":
            vec = [scalar_from_json(v) for v in obj["beta"]]
        else:
            raise SchemaError(f"family {family!r} takes no parameters")
    except (KeyError, TypeError) as e:
        raise SchemaError(f"malformed parameter record: {e}") from e
    return make_params(family, n, vec)


def witness_to_json(w: IsoWitness) -> dict:
    out = {"family": w.family, "a1": scalar_to_json(w.a1), "b": scalar_to_json(w.b)}
    if w.family.startswith("A"):
        out["a"] = scalar_to_json(w.a)
    else:
        out["b_prev"] = scalar_to_json(w.b_prev)
    return out


def witness_from_json(obj) -> IsoWitness:
    return IsoWitness(
        obj["family"],
        scalar_from_json(obj["a1"]),
        scalar_from_json(obj["b"]),
        scalar_from_json(obj.get("a", "0")),
        scalar_from_json(obj.get("b_prev", "0")),
    )


def load_json_arg(text: str):
    """Inline JSON, or a path to a JSON file ('-' reads stdin)."""
    import sys

    if text == "-":
        return json.load(sys.stdin)
    if os.path.exists(text):
        with open(text) as fh:
            return json.load(fh)
    return json.loads(text)


def dumps(obj) -> str:
    return json.dumps(obj, sort_keys=True, indent=2)
