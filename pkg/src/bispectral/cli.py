"""Command-line interface.

Exit codes: 0 success, 1 validation failure, 2 parse error, 3 only
constant solutions, 4 plane not Lagrangian or not sigma-stable.
"""

from __future__ import annotations

import argparse
import json
import sys

from .concomitant import verify_bisymmetric
from .context import sym_basis
from .darboux import CandidatePair
from .errors import BispectralError, NotLagrangian, NotSigmaStable, ParseError
from .grassmannian import AdelicPlane, is_lagrangian, is_sigma_stable, to_darboux
from .parser import parse_op, parse_scalar, print_op
from .problem import Problem, ProblemError, dumps, gen_from_text, result_document, run_problem

EXIT_OK, EXIT_INVALID, EXIT_PARSE, EXIT_CONSTANTS, EXIT_GRASSMANNIAN = 0, 1, 2, 3, 4


def _params(items):
    out = {}
    for item in items or ():
        if "=" not in item:
            raise ParseError(f"--param expects name=value, got {item!r}")
        k, v = item.split("=", 1)
        out[k.strip()] = v.strip()
    return out


def _add_context(p):
    p.add_argument("--context", choices=("exp", "airy", "bessel"))
    p.add_argument("--nu", help="Bessel parameter, e.g. 1/2")
    p.add_argument("--param", action="append", default=[], metavar="NAME=VALUE")


def _add_endpoints(p):
    p.add_argument("--x-endpoint")
    p.add_argument("--y-endpoint")
    p.add_argument("--x-mode", choices=("sym", "inf"))
    p.add_argument("--y-mode", choices=("sym", "inf"))


def _apply_overrides(problem: Problem, args):
    if getattr(args, "context", None):
        problem.kind = args.context
    if getattr(args, "nu", None):
        problem.nu = args.nu
    problem.params.update(_params(getattr(args, "param", None)))
    for attr, key in (("x_endpoint", "x_point"), ("y_endpoint", "y_point"), ("x_mode", "x_mode"), ("y_mode", "y_mode")):
        v = getattr(args, attr, None)
        if v is not None:
            setattr(problem, key, v)
    for key in ("L", "M"):
        v = getattr(args, key, None)
        if v is not None:
            setattr(problem, key, v)
    if getattr(args, "bounds_override", None):
        problem.bounds = json.loads(args.bounds_override)
    problem.validate()
    return problem


def _write(doc, out):
    text = dumps(doc)
    if out:
        with open(out, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _solve_and_report(problem: Problem, args, t=None, grass=None):
    from .concomitant import solve

    if problem.slow and not args.slow_ok:
        print("problem is marked slow; rerun with --slow-ok", file=sys.stderr)
        return EXIT_INVALID
    if t is None:
        t, res, grass = run_problem(problem)
    else:
        res = solve(t, problem.endpoints(), problem.config())
    _write(result_document(problem, t, res, grass), args.out)
    w = res.witness
    if w is None:
        print("only constant solutions", file=sys.stderr)
        return EXIT_CONSTANTS
    print(f"dimension {res.dimension}; witness {print_op(w.x_op)}", file=sys.stderr)
    return EXIT_OK


# commands ----------------------------------------------------------------------------------------
def cmd_solve(args):
    problem = Problem.load(args.problem) if args.problem else Problem()
    _apply_overrides(problem, args)
    return _solve_and_report(problem, args)


def _pair_from_text(ctx, text, env, y_text=None):
    if y_text is not None:
        return CandidatePair("input", "input", parse_op(text, "x", env), parse_op(y_text, "y", env))
    g = gen_from_text(ctx, text, env) if ctx.kind == "bessel" else _raw_or_gen(ctx, text, env)
    return CandidatePair("input", "input", g.x_op, g.y_op)


def _raw_or_gen(ctx, text, env):
    from .context import fourier_of_operator

    return fourier_of_operator(ctx, parse_op(text, "x", env))


def cmd_verify(args):
    problem = _apply_overrides(Problem(), args)
    ctx = problem.context()
    pair = _pair_from_text(ctx, args.operator, problem.env(), args.y_op)
    ep = problem.endpoints()
    rep = verify_bisymmetric(pair, ep)
    print(f"x-operator: {print_op(pair.x_op)}")
    print(f"y-operator: {print_op(pair.y_op)}")
    print(f"formally symmetric: x={rep.x_symmetric} y={rep.y_symmetric}")
    for key, v in rep.residuals.items():
        print(f"nonzero concomitant entries at {key}: {v}")
    for m in rep.messages:
        print(m)
    print("bisymmetric" if rep.ok else "NOT bisymmetric")
    return EXIT_OK if rep.ok else EXIT_INVALID


def _load_plane(path):
    with open(path) as fh:
        doc = json.load(fh)
    if isinstance(doc, list):
        doc = {"conditions": doc}
    if not isinstance(doc, dict) or "conditions" not in doc:
        raise ProblemError("conditions file needs a 'conditions' list")
    conds = []
    for c in doc["conditions"]:
        if not isinstance(c, dict) or "point" not in c or "coeffs" not in c:
            raise ProblemError("each condition needs 'point' and 'coeffs'")
        conds.append({"point": parse_scalar(str(c["point"])), "coeffs": [parse_scalar(str(a)) for a in c["coeffs"]]})
    amb = doc.get("ambient")
    if amb is not None:
        amb = {parse_scalar(str(k)): int(v) for k, v in amb.items()}
    return AdelicPlane(tuple(conds), amb), doc


def cmd_grassmannian(args):
    plane, doc = _load_plane(args.conditions)
    lag, stable = is_lagrangian(plane), is_sigma_stable(plane)
    print(f"lagrangian: {lag}")
    print(f"sigma-stable: {stable}")
    g = to_darboux(plane)
    print(f"u = {print_op(g.annihilator.u)}")
    print(f"p = {g.annihilator.p}")
    print(f"q = {plane.q}")
    unit, f = g.factorization
    print(f"((1/p)u)*((1/p)u) = ({unit}) * f(Dx), f(T) = {f}")
    if not args.solve:
        return EXIT_OK
    problem = Problem(kind="exp", transform={"conditions": doc["conditions"], **({"ambient": doc["ambient"]} if "ambient" in doc else {})})
    problem.x_point, problem.y_point = "1", "i"
    _apply_overrides(problem, args)
    return _solve_and_report(problem, args, g.transform, g)


def cmd_algebra(args):
    problem = _apply_overrides(Problem(kind=args.context or "exp"), args)
    env = problem.env()
    var = args.var
    op = args.op
    if op == "mul":
        r = parse_op(args.a, var, env) * parse_op(args.b, var, env)
        print(print_op(r))
    elif op == "adjoint":
        print(print_op(parse_op(args.a, var, env).adjoint()))
    elif op == "apply":
        f = parse_op(args.b, var, env)
        if f.order > 0:
            raise ParseError("apply expects a function (no derivatives) as second argument")
        r = parse_op(args.a, var, env).apply(f.c[0] if f.c else 0)
        from .orealg import OreOp

        print(print_op(OreOp.mult(r, var)))
    elif op == "fourier":
        ctx = problem.context()
        g = gen_from_text(ctx, args.a, env) if ctx.kind == "bessel" else _raw_or_gen(ctx, args.a, env)
        print(print_op(g.y_op))
    elif op == "basis":
        ctx = problem.context()
        for b in sym_basis(ctx, args.l, args.m):
            print(f"{b.label}\torder {b.order}\tcoorder {b.coorder}\t{print_op(b.expr.x_op)}\t|\t{print_op(b.expr.y_op)}")
    return EXIT_OK


# parser -------------------------------------------------------------------------------------------------
def build_parser():
    ap = argparse.ArgumentParser(prog="bispectral", description="Exact bisymmetric commuting operators")
    sub = ap.add_subparsers(dest="cmd", required=True)

    s = sub.add_parser("solve", help="solve a problem file")
    s.add_argument("problem", nargs="?")
    _add_context(s)
    _add_endpoints(s)
    s.add_argument("--L", type=int)
    s.add_argument("--M", type=int)
    s.add_argument("--bounds-override")
    s.add_argument("--out")
    s.add_argument("--slow-ok", action="store_true")
    s.set_defaults(fn=cmd_solve)

    v = sub.add_parser("verify", help="check bisymmetry of an operator")
    v.add_argument("operator")
    v.add_argument("--y-op", help="explicit y-side image (for transformed kernels)")
    _add_context(v)
    _add_endpoints(v)
    v.set_defaults(fn=cmd_verify)

    g = sub.add_parser("grassmannian", help="Darboux data from delta conditions")
    g.add_argument("conditions")
    g.add_argument("--solve", action="store_true")
    _add_endpoints(g)
    g.add_argument("--L", type=int)
    g.add_argument("--M", type=int)
    g.add_argument("--bounds-override")
    g.add_argument("--out")
    g.add_argument("--slow-ok", action="store_true")
    g.set_defaults(fn=cmd_grassmannian)

    a = sub.add_parser("algebra", help="operator algebra primitives")
    asub = a.add_subparsers(dest="op", required=True)
    for name, nargs in (("mul", 2), ("adjoint", 1), ("apply", 2), ("fourier", 1), ("basis", 0)):
        p = asub.add_parser(name)
        if nargs >= 1:
            p.add_argument("a")
        if nargs == 2:
            p.add_argument("b")
        p.add_argument("--var", default="x", choices=("x", "y"))
        _add_context(p)
        if name == "basis":
            p.add_argument("--l", type=int, default=1)
            p.add_argument("--m", type=int, default=1)
        p.set_defaults(fn=cmd_algebra)
    return ap


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.fn(args)
    except ParseError as exc:
        print(f"parse error: {exc}", file=sys.stderr)
        return EXIT_PARSE
    except json.JSONDecodeError as exc:
        print(f"parse error: {exc}", file=sys.stderr)
        return EXIT_PARSE
    except (NotLagrangian, NotSigmaStable) as exc:
        print(f"{type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_GRASSMANNIAN
    except (BispectralError, ProblemError, ValueError, OSError) as exc:
        print(f"{type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_INVALID


if __name__ == "__main__":
    sys.exit(main())
