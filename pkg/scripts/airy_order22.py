"""Airy transform with u = w^2 - 1, w = (1-x)D^2 + D + x^2 - x.

Solves the full 274-generator problem and reports the dimension and the
membership of the displayed order-22 operator.  ``--truncate N`` also
solves the system with jets of x^j, j <= N only, as a diagnostic.
"""

import argparse
import time
from pathlib import Path

from bispectral.concomitant import SolveConfig, solve, verify_bisymmetric
from bispectral.darboux import CandidatePair, conj_p, conj_u
from bispectral.problem import Problem

ROOT = Path(__file__).resolve().parent.parent


def displayed_pair(t):
    from bispectral.context import parse_gen

    d = "(Dx^2 - x)"
    gu = parse_gen(t.ctx, f"35*{d}^4 + 84*{d}^5 + 70*{d}^6 + 20*{d}^7")
    gp = parse_gen(t.ctx, "1 - 4*x + 10*x^2 - 20*x^3")
    a, b = conj_u(t, gu), conj_p(t, gp)
    return CandidatePair("displayed", "displayed", a.x_op + b.x_op, a.y_op + b.y_op)


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--truncate", type=int)
    args = ap.parse_args()
    problem = Problem.load(ROOT / "problems" / "airy_order22.json")
    t, _ = problem.build()
    ep = problem.endpoints()
    t0 = time.perf_counter()
    res = solve(t, ep, problem.config())
    print(f"generators {len(res.candidates)}  dimension {res.dimension}  orders {res.orders}  ({time.perf_counter() - t0:.1f} s)")
    pair = displayed_pair(t)
    rep = verify_bisymmetric(pair, ep)
    print(f"displayed operator: order {pair.order}, co-order {pair.coorder}")
    print(f"  in span: {res.contains_operator(pair.x_op)}")
    print(f"  bisymmetric: {rep.ok}")
    for m in rep.messages[:4]:
        print(f"  {m}")
    if args.truncate is not None:
        cfg = SolveConfig(L=problem.L, M=problem.M, N=args.truncate, jets=problem.jets)
        r = solve(t, ep, cfg, cands=res.candidates)
        print(f"truncated N={args.truncate}: dimension {r.dimension}  orders {r.orders}")


if __name__ == "__main__":
    main()
