"""Solve every small problem in problems/ and print the witness operators."""

import argparse
import time
from pathlib import Path

from bispectral.parser import print_op
from bispectral.problem import Problem, run_problem

ROOT = Path(__file__).resolve().parent.parent


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--problems", default=ROOT / "problems", type=Path)
    ap.add_argument("--include-slow", action="store_true")
    args = ap.parse_args()
    for path in sorted(args.problems.glob("*.json")):
        if path.stem.endswith("_conditions"):
            continue
        problem = Problem.load(path)
        if problem.slow and not args.include_slow:
            print(f"{path.stem:16s} skipped (slow)")
            continue
        t0 = time.perf_counter()
        t, res, _ = run_problem(problem)
        w = res.witness
        shown = print_op(w.x_op) if w is not None else "only constants"
        print(f"{path.stem:16s} dim {res.dimension:2d}  {time.perf_counter() - t0:6.2f} s  {shown}")


if __name__ == "__main__":
    main()
