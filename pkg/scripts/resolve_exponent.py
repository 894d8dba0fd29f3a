"""Decide the family B scaling exponent by materializing witnesses.

Each candidate exponent 2j + offset predicts the target parameters of a
random witness; the prediction is accepted only if the induced basis change
is a homomorphism.  Exactly one candidate should pass every trial.
"""

import argparse
import json

from leibniz_super.isomorphism import resolve_family_B_exponent


def main():
    ap = argparse.ArgumentParser(description=__doc__.split("\n")[0])
    ap.add_argument("--n", type=int, nargs="+", default=[4, 5, 6])
    ap.add_argument("--trials", type=int, default=20)
    ap.add_argument("--seed", type=int, default=0)
    args = ap.parse_args()
    reports = [resolve_family_B_exponent(n, args.trials, args.seed) for n in args.n]
    for rep in reports:
        tally = "  ".join(f"{r['exponent']}: {r['passes']:>2}/{r['trials']}" for r in rep["results"])
        print(f"n={rep['n']}  {tally}  -> resolved offset {rep['resolved_offset']}")
    print(json.dumps(reports, indent=2))


if __name__ == "__main__":
    main()
