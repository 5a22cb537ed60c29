"""Check the tabulated bidegree-(2,2) Bessel solutions for several nu.

For each nu the transform u = X2*BB + (2nu-1)S + nu(nu+1) + nu(nu-2) is
built, the 21-generator system is solved and each table row is tested for
bisymmetry and span membership.
"""

import argparse
import sys
from fractions import Fraction
from pathlib import Path

sys.path.insert(0, str(Path(__file__).resolve().parent.parent / "tests"))

from bispectral.concomitant import EndpointSpec, SolveConfig, solve, verify_bisymmetric
from bispectral.context import make_context, parse_gen
from bispectral.darboux import CandidatePair, build_transform, conj_p, conj_u
from data.bessel22_tables import tables

BOUNDS = {"u_family": [4, 2], "p_family": [8, 4], "constant": False}


def pair_for(t, ctx, sol):
    P, U = [], []
    for key, v in sol.items():
        if not v:
            continue
        fam, j, k = key[0], int(key[1]), int(key[2])
        mid = f"BB^{j}" if fam in "ac" else f"X2^{j}"
        (P if fam in "ab" else U).append(f"({v})*S^{k}*{mid}*(-S-1)^{k}")
    a = conj_p(t, parse_gen(ctx, " + ".join(P)))
    b = conj_u(t, parse_gen(ctx, " + ".join(U)))
    return CandidatePair("table", "table", a.x_op + b.x_op, a.y_op + b.y_op)


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--nu", nargs="+", default=["1/2", "1/3", "3/2", "2/5"])
    args = ap.parse_args()
    for nu_text in args.nu:
        ctx = make_context("bessel", nu_text)
        t = build_transform(ctx, parse_gen(ctx, "X2*BB + (2*nu-1)*S + nu*(nu+1) + nu*(nu-2)"))
        ep = EndpointSpec(1, 1)
        res = solve(t, ep, SolveConfig(bounds=BOUNDS))
        row = [f"nu={nu_text}", f"gens={len(res.candidates)}", f"dim={res.dimension}", f"orders={res.orders}"]
        for i, sol in enumerate(tables(Fraction(nu_text)), 1):
            pair = pair_for(t, ctx, sol)
            ok = verify_bisymmetric(pair, ep).ok
            row.append(f"sol{i}: bisym={ok} in_span={res.contains_operator(pair.x_op)}")
        print("  ".join(row))


if __name__ == "__main__":
    main()
