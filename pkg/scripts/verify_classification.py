"""Run the verification pipeline over a range of n and write a JSON report.

Same as `leibniz-super verify-classification`, with defaults sized for a
full desk-scale sweep.
"""

import argparse
import sys
import time

from leibniz_super.cli import main as cli_main


def main():
    ap = argparse.ArgumentParser(description=__doc__.split("\n")[0])
    ap.add_argument("--n-range", default="3..8")
    ap.add_argument("--family", default="both")
    ap.add_argument("--samples", type=int, default=25)
    ap.add_argument("--seed", type=int, default=0)
    ap.add_argument("--out", default=None, help="also write the JSON report here")
    args = ap.parse_args()
    common = ["--n-range", args.n_range, "--family", args.family, "--samples", str(args.samples), "--seed", str(args.seed)]
    t = time.perf_counter()
    code = cli_main(["verify-classification", *common])
    if args.out:
        code = max(code, cli_main(["verify-classification", *common, "--out", args.out]))
    print(f"elapsed {time.perf_counter() - t:.1f}s", file=sys.stderr)
    return code


if __name__ == "__main__":
    sys.exit(main())
