"""Command-line front end.

Exit codes: 0 all checks pass (or: isomorphic), 1 a mathematical violation
(or: not isomorphic), 2 usage or parse error.
"""

from __future__ import annotations

import argparse
import json
import logging
import os
import random
import sys
from dataclasses import asdict, dataclass, field as dc_field

from . import io as lio
from .algebra import check_grading, check_graded_leibniz, restrict, subalgebra_generated
from .classification import (
    VerificationFailure,
    canonicalize,
    descriptor_groups,
    enumerate_descriptors,
    pairwise_distinct,
    sample_params,
    vectors_close,
)
from .families import ParameterError, build_family, build_model_1, build_model_2, random_params
from .invariants import central_series, characteristic_sequence, generator_info, invariant_report
from .isomorphism import IsoConditionSystem, iso_solvable, random_witness, transform_params
from .scalars import DEFAULT_TOL, BackendMismatch, ExtensionRequired, field_from_name

log = logging.getLogger("leibniz_super")

FAMILIES = ("A", "B")
MAX_N = 12


class UsageError(ValueError):
    pass


@dataclass
class RunConfig:
    command: str
    n_values: list = dc_field(default_factory=list)
    families: list = dc_field(default_factory=lambda: list(FAMILIES))
    scalar: str = "rational"
    tol: float = DEFAULT_TOL
    samples: int = 64
    seed: int = 0
    out: str | None = None
    json: bool = False
    verbosity: str = "WARNING"
    inject_bug: bool = False

    def __post_init__(self):
        if not self.tol > 0:
            raise UsageError("tolerance must be positive")
        if self.samples < 0:
            raise UsageError("sample count must be non-negative")
        for n in self.n_values:
            if not 1 <= n <= MAX_N:
                raise UsageError(f"n={n} outside the supported range 1..{MAX_N}")


def parse_n_values(text: str):
    """'5' -> [5]; '3..8' -> [3, 4, 5, 6, 7, 8]."""
    try:
        if ".." in text:
            lo, hi = text.split("..", 1)
            lo, hi = int(lo), int(hi)
            if hi < lo:
                raise UsageError(f"empty n-range {text!r}")
            return list(range(lo, hi + 1))
        return [int(text)]
    except ValueError as e:
        raise UsageError(f"bad n value {text!r}") from e


# ---------------------------------------------------------------------------
# pipeline


def _labels(A, idx):
    return "(" + ", ".join(A.basis.labels[i] for i in idx) + ")"


def _stage_identity(family, n, samples, seed, inject_bug, char_samples):
    rng = random.Random(f"{seed}:identity:{family}:{n}")
    m = n + 1 if family == "A" else n + 2
    res = {"instances": 0, "failures": []}
    instances = []
    for s in range(samples):
        p = random_params(family, n, rng, zero_prob=0.2)
        A = build_family(family, p)
        if inject_bug and s == 0:
            y1 = n
            A = A.with_product(y1, y1, A.unit(1))
        instances.append(p)
        res["instances"] += 1
        fail = {}
        g = check_grading(A)
        if not g.passed:
            fail["grading"] = [list(v[0]) for v in g.violations[:5]]
        lb = check_graded_leibniz(A)
        if not lb.passed:
            fail["leibniz"] = [_labels(A, v[0]) for v in lb.violations[:5]]
        if g.passed and lb.passed:
            cs = central_series(A)
            if cs.nilindex != n + m:
                fail["nilindex"] = cs.nilindex
            ch = characteristic_sequence(A, char_samples, seed)
            want = ((n,), (m - 1, 1))
            if ch.as_pair() != want or not ch.readings_agree:
                fail["char_seq"] = [list(ch.even), list(ch.odd), list(ch.joint_even), list(ch.joint_odd)]
            gi = generator_info(A)
            if gi.count != 2 or gi.parities != ("odd", "odd"):
                fail["generators"] = [gi.count, list(gi.parities)]
        if fail:
            fail["params"] = lio.params_to_json(p)
            res["failures"].append(fail)
    res["passed"] = not res["failures"]
    return res, instances


def _stage_y1_subalgebra(family, n, instances):
    res = {"checked": 0, "failures": []}
    if family != "A":
        res["skipped"] = "family B"
        res["passed"] = True
        return res
    for p in instances:
        A = build_family("A", p)
        m = n + 1
        S = subalgebra_generated(A, [A.unit(n)])
        ok = len(S) == n + m - 1
        if ok:
            R = restrict(A, S)
            ok = central_series(R).nilindex == R.dim + 1 and generator_info(R).count == 1
        res["checked"] += 1
        if not ok:
            res["failures"].append(lio.params_to_json(p))
    res["passed"] = not res["failures"]
    return res


def _stage_canon(family, n, samples, seed):
    rng = random.Random(f"{seed}:canon:{family}:{n}")
    desc = enumerate_descriptors(family, n)
    res = {"draws": 0, "failures": [], "cases": {}}
    for _ in range(samples):
        p = sample_params(family, n, rng)
        res["draws"] += 1
        try:
            c = canonicalize(family, n, p)
            again = canonicalize(family, n, c.representative)
            w = random_witness(family, n, rng)
            moved = canonicalize(family, n, transform_params(family, p, w))
        except VerificationFailure as e:
            res["failures"].append({"params": lio.params_to_json(p), "error": str(e)})
            continue
        res["cases"][c.descriptor.case] = res["cases"].get(c.descriptor.case, 0) + 1
        rv = c.representative.as_vector()
        ok = (
            c.verified
            and c.descriptor in desc
            and again.descriptor == c.descriptor
            and moved.descriptor == c.descriptor
            and vectors_close(rv, again.representative.as_vector())
            and vectors_close(rv, moved.representative.as_vector())
        )
        if not ok:
            res["failures"].append({"params": lio.params_to_json(p), "witness": lio.witness_to_json(w)})
    res["cases"] = dict(sorted(res["cases"].items()))
    res["passed"] = not res["failures"]
    return res


def verify_classification_run(family, n, samples=25, seed=0, inject_bug=False, char_samples=64) -> dict:
    log.info("verify-classification family=%s n=%d", family, n)
    ident, instances = _stage_identity(family, n, samples, seed, inject_bug, char_samples)
    stages = {"identity_invariants": ident}
    stages["canonicalize"] = _stage_canon(family, n, samples, seed)
    pd = pairwise_distinct(family, n)
    stages["pairwise_distinct"] = pd.to_json()
    stages["y1_subalgebra"] = _stage_y1_subalgebra(family, n, instances)
    groups = descriptor_groups(enumerate_descriptors(family, n))
    return {
        "family": family,
        "n": n,
        "m": n + 1 if family == "A" else n + 2,
        "descriptor_groups": groups,
        "stages": stages,
        "passed": all(s["passed"] for s in stages.values()),
    }


# ---------------------------------------------------------------------------
# commands


def _emit(cfg: RunConfig, obj):
    text = lio.dumps(obj) if not isinstance(obj, str) else obj
    if cfg.out:
        with open(cfg.out, "w") as fh:
            fh.write(text + "\n")
    else:
        print(text)


def _params(args, family, n):
    if args.params is None:
        from .families import make_params, family_param_length
        from fractions import Fraction

        return make_params(family, n, [Fraction(0)] * family_param_length(family, n))
    return lio.params_from_json(family, n, lio.load_json_arg(args.params))


def _build(args, cfg):
    family = args.family
    if family is None:
        raise UsageError("--family is required")
    if not cfg.n_values:
        raise UsageError("--n is required")
    n = cfg.n_values[0]
    if family == "model1":
        A = build_model_1(n)
    elif family == "model2":
        A = build_model_2(n, args.m if args.m is not None else n)
    elif family in FAMILIES:
        A = build_family(family, _params(args, family, n))
    else:
        raise UsageError(f"unknown family {family!r}")
    if cfg.scalar != A.field.name:
        from .algebra import as_field

        target = field_from_name(cfg.scalar, cfg.tol)
        if A.field.exact and target.exact and target != A.field:
            raise UsageError(f"cannot convert a {A.field.name} algebra to {cfg.scalar}")
        A = as_field(A, target)
    return A


def cmd_build(args, cfg):
    _emit(cfg, lio.algebra_to_json(_build(args, cfg)))
    return 0


def _load_algebra(args, cfg):
    if args.algebra is not None:
        return lio.algebra_from_json(lio.load_json_arg(args.algebra), cfg.tol)
    return _build(args, cfg)


def cmd_check(args, cfg):
    A = _load_algebra(args, cfg)
    reports = [check_grading(A), check_graded_leibniz(A)]
    ok = all(r.passed for r in reports)
    if cfg.json:
        out = {
            "passed": ok,
            "reports": [
                {
                    "name": r.name,
                    "passed": r.passed,
                    "violations": [
                        {
                            "indices": list(v[0]),
                            "labels": [A.basis.labels[i] for i in v[0]],
                            "residual": None if v[1] is None else [A.field.to_json(x) for x in v[1]],
                        }
                        for v in r.violations
                    ],
                }
                for r in reports
            ],
        }
        if not reports[1].passed:
            out["satisfies_convention"] = reports[1].details.get("satisfies")
        _emit(cfg, out)
    else:
        lines = []
        for r in reports:
            lines.append(r.summary())
            for idx, _ in r.violations[:20]:
                lines.append(f"  violation at {_labels(A, idx)}")
        _emit(cfg, "\n".join(lines))
    return 0 if ok else 1


def cmd_invariants(args, cfg):
    A = _load_algebra(args, cfg)
    _emit(cfg, invariant_report(A, cfg.samples, cfg.seed))
    return 0


def cmd_iso(args, cfg):
    family, n = _family_n(args, cfg)
    p = lio.params_from_json(family, n, lio.load_json_arg(args.left))
    q = lio.params_from_json(family, n, lio.load_json_arg(args.right))
    d = iso_solvable(IsoConditionSystem(family, p, q))
    out = {"isomorphic": d.isomorphic, "reason": d.reason}
    if d.witness is not None:
        out["witness"] = lio.witness_to_json(d.witness)
        if args.witness:
            with open(args.witness, "w") as fh:
                fh.write(lio.dumps(out["witness"]) + "\n")
    _emit(cfg, out)
    return 0 if d.isomorphic else 1


def cmd_canon(args, cfg):
    family, n = _family_n(args, cfg)
    p = _params(args, family, n)
    backend = args.backend
    c = canonicalize(family, n, p, backend=backend, tol=cfg.tol)
    _emit(cfg, c.to_json())
    return 0


def cmd_enumerate(args, cfg):
    family, n = _family_n(args, cfg)
    ds = enumerate_descriptors(family, n)
    _emit(cfg, {"family": family, "n": n, "groups": descriptor_groups(ds), "descriptors": [d.to_json() for d in ds]})
    return 0


def cmd_verify_classification(args, cfg):
    if not cfg.n_values:
        raise UsageError("--n or --n-range is required")
    runs = []
    for family in sorted(cfg.families):
        for n in cfg.n_values:
            if n < 3:
                raise UsageError("n below minimum: the families need n >= 3")
            runs.append(verify_classification_run(family, n, cfg.samples, cfg.seed, cfg.inject_bug))
    ok = all(r["passed"] for r in runs)
    cfg_json = {k: v for k, v in asdict(cfg).items() if k not in ("out", "verbosity", "json")}
    report = {"config": cfg_json, "runs": runs, "passed": ok}
    if cfg.json or cfg.out:
        _emit(cfg, report)
    else:
        lines = [f"{'family':<7}{'n':>3}{'m':>4}  groups  identity  canon  distinct  y1-sub  result"]
        for r in runs:
            st = r["stages"]
            flag = lambda s: "ok" if s["passed"] else "FAIL"
            lines.append(
                f"{r['family']:<7}{r['n']:>3}{r['m']:>4}  {len(r['descriptor_groups']):>6}  "
                f"{flag(st['identity_invariants']):>8}  {flag(st['canonicalize']):>5}  "
                f"{flag(st['pairwise_distinct']):>8}  {flag(st['y1_subalgebra']):>6}  {'pass' if r['passed'] else 'FAIL'}"
            )
        lines.append("all checks passed" if ok else "violations found")
        if not ok:
            failing = [r for r in runs if not r["passed"]]
            lines.append(lio.dumps(failing[0]))
        _emit(cfg, "\n".join(lines))
    return 0 if ok else 1


def _family_n(args, cfg):
    if args.family not in FAMILIES:
        raise UsageError("--family must be A or B")
    if not cfg.n_values:
        raise UsageError("--n is required")
    return args.family, cfg.n_values[0]


# ---------------------------------------------------------------------------


def make_parser():
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--family", help="A, B (or model1, model2 for build); verify-classification also accepts 'both'")
    common.add_argument("--n", help="even dimension, or a range like 3..8")
    common.add_argument("--n-range", help="range of n, e.g. 3..8")
    common.add_argument("--params", help="parameter JSON (inline or file)")
    common.add_argument("--scalar", default="rational", help="rational, complex or cyclotomic:N")
    common.add_argument("--tol", type=float, default=DEFAULT_TOL)
    common.add_argument("--samples", type=int, default=None)
    common.add_argument("--seed", type=int, default=0)
    common.add_argument("--json", action="store_true", help="machine-readable output")
    common.add_argument("--out", help="write output to this file")
    common.add_argument("--inject-bug", action="store_true", help=argparse.SUPPRESS)

    ap = argparse.ArgumentParser(prog="leibniz-super", description=__doc__.split("\n")[0])
    sub = ap.add_subparsers(dest="command", required=True)
    b = sub.add_parser("build", parents=[common], help="emit an algebra as JSON")
    b.add_argument("--m", type=int, help="odd dimension for model2")
    c = sub.add_parser("check", parents=[common], help="grading and graded Leibniz identity")
    c.add_argument("algebra", nargs="?", help="algebra JSON file, inline JSON or '-'")
    c.add_argument("--m", type=int)
    i = sub.add_parser("invariants", parents=[common], help="nilindex, series, characteristic sequence, ...")
    i.add_argument("algebra", nargs="?")
    i.add_argument("--m", type=int)
    s = sub.add_parser("iso", parents=[common], help="decide isomorphism of two parameter records")
    s.add_argument("--left", required=True)
    s.add_argument("--right", required=True)
    s.add_argument("--witness", help="write the witness here when isomorphic")
    k = sub.add_parser("canon", parents=[common], help="canonical representative with a verified witness")
    k.add_argument("--backend", default="auto", choices=["auto", "rational", "complex"])
    sub.add_parser("enumerate", parents=[common], help="list representative descriptors")
    sub.add_parser("verify-classification", parents=[common], help="end-to-end verification pipeline")
    return ap


COMMANDS = {
    "build": cmd_build,
    "check": cmd_check,
    "invariants": cmd_invariants,
    "iso": cmd_iso,
    "canon": cmd_canon,
    "enumerate": cmd_enumerate,
    "verify-classification": cmd_verify_classification,
}


def _config(args) -> RunConfig:
    n_text = args.n_range or args.n
    n_values = parse_n_values(n_text) if n_text else []
    if args.command == "verify-classification":
        fam = args.family or "both"
        if fam not in ("A", "B", "both"):
            raise UsageError("--family must be A, B or both")
        families = list(FAMILIES) if fam == "both" else [fam]
        samples = 25 if args.samples is None else args.samples
    else:
        families = [args.family] if args.family else []
        samples = 64 if args.samples is None else args.samples
    return RunConfig(
        command=args.command,
        n_values=n_values,
        families=families,
        scalar=args.scalar,
        tol=args.tol,
        samples=samples,
        seed=args.seed,
        out=args.out,
        json=args.json,
        verbosity=os.environ.get("LEIBNIZ_SUPER_LOG", "WARNING").upper(),
        inject_bug=args.inject_bug,
    )


def main(argv=None) -> int:
    ap = make_parser()
    try:
        args = ap.parse_args(argv)
    except SystemExit as e:
        return int(e.code or 0)
    try:
        cfg = _config(args)
        logging.basicConfig(level=getattr(logging, cfg.verbosity, logging.WARNING), format="%(levelname)s %(message)s")
        return COMMANDS[args.command](args, cfg)
    except (UsageError, ParameterError, lio.SchemaError, BackendMismatch, ExtensionRequired, json.JSONDecodeError, OSError) as e:
        print(f"error: {e}", file=sys.stderr)
        return 2
    except VerificationFailure as e:
        print(f"verification failure: {e}", file=sys.stderr)
        return 1
    except ValueError as e:
        print(f"error: {e}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
