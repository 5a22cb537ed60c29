"""Problem files: JSON documents with every exact number written as text.

Layout::

    {
      "context": {"kind": "exp", "nu": null},
      "params": {"t": "1", "s": "1"},
      "transform": null | {"u": "...", "p": "...", "q": "..."}
                        | {"conditions": [{"point": "0", "coeffs": ["0", "1"]}]},
      "endpoints": {"x": {"point": "t", "mode": "sym"},
                    "y": {"point": "s*i", "mode": "sym"}},
      "L": 1, "M": 1, "bounds": null, "N": null, "jets": "monomial",
      "slow": false
    }
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field

from .concomitant import MODES, EndpointSpec, SolveConfig, SolveResult, solve
from .context import Context, GenExpr, fourier_of_operator, make_context, parse_gen
from .darboux import DarbouxTransform, build_transform, trivial_transform
from .errors import ReservedSymbolMisuse
from .parser import ParamEnv, parse_op, parse_scalar, print_op

__all__ = ["Problem", "ProblemError", "gen_from_text", "result_document", "run_problem", "dumps"]


class ProblemError(ValueError):
    """Schema violation in a problem file."""


@dataclass
class Problem:
    kind: str = "exp"
    nu: str | None = None
    params: dict = field(default_factory=dict)
    transform: dict | None = None
    x_point: str = "1"
    y_point: str = "1"
    x_mode: str = "sym"
    y_mode: str = "sym"
    L: int | None = None
    M: int | None = None
    bounds: dict | None = None
    N: int | None = None
    jets: str = "monomial"
    slow: bool = False

    @classmethod
    def from_dict(cls, d: dict) -> "Problem":
        if not isinstance(d, dict):
            raise ProblemError("problem must be a JSON object")
        known = {"context", "params", "transform", "endpoints", "L", "M", "bounds", "N", "jets", "slow", "comment"}
        extra = set(d) - known
        if extra:
            raise ProblemError(f"unknown keys {sorted(extra)}")
        ctx = d.get("context", {"kind": "exp"})
        if isinstance(ctx, str):
            ctx = {"kind": ctx}
        eps = d.get("endpoints", {})
        x = eps.get("x", {})
        y = eps.get("y", {})
        params = d.get("params") or {}
        if not all(isinstance(v, str) for v in params.values()):
            raise ProblemError("parameter values must be strings")
        p = cls(
            kind=ctx.get("kind", "exp"),
            nu=None if ctx.get("nu") is None else str(ctx["nu"]),
            params=dict(params),
            transform=d.get("transform"),
            x_point=str(x.get("point", "1")),
            y_point=str(y.get("point", "1")),
            x_mode=x.get("mode", "sym"),
            y_mode=y.get("mode", "sym"),
            L=d.get("L"),
            M=d.get("M"),
            bounds=d.get("bounds"),
            N=d.get("N"),
            jets=d.get("jets", "monomial"),
            slow=bool(d.get("slow", False)),
        )
        p.validate()
        return p

    @classmethod
    def load(cls, path) -> "Problem":
        with open(path) as fh:
            return cls.from_dict(json.load(fh))

    def validate(self):
        if self.x_mode not in MODES or self.y_mode not in MODES:
            raise ProblemError(f"endpoint modes must be one of {MODES}")
        if self.jets not in ("monomial", "taylor"):
            raise ProblemError("jets must be 'monomial' or 'taylor'")
        for k in ("L", "M", "N"):
            v = getattr(self, k)
            if v is not None and (not isinstance(v, int) or v < 0):
                raise ProblemError(f"{k} must be a nonnegative integer")
        if self.transform is not None and not isinstance(self.transform, dict):
            raise ProblemError("transform must be an object or null")

    def to_dict(self) -> dict:
        return {
            "context": {"kind": self.kind, "nu": self.nu},
            "params": dict(sorted(self.params.items())),
            "transform": self.transform,
            "endpoints": {
                "x": {"point": self.x_point, "mode": self.x_mode},
                "y": {"point": self.y_point, "mode": self.y_mode},
            },
            "L": self.L,
            "M": self.M,
            "bounds": self.bounds,
            "N": self.N,
            "jets": self.jets,
            "slow": self.slow,
        }

    # construction ---------------------------------------------------------------------
    def env(self) -> ParamEnv:
        vals = dict(self.params)
        if self.nu is not None:
            vals.setdefault("nu", self.nu)
        return ParamEnv(vals)

    def context(self) -> Context:
        nu = parse_scalar(self.nu, self.env()) if self.nu is not None else None
        return make_context(self.kind, nu)

    def endpoints(self) -> EndpointSpec:
        env = self.env()
        return EndpointSpec(
            parse_scalar(self.x_point, env), parse_scalar(self.y_point, env), self.x_mode, self.y_mode
        )

    def build(self):
        """(transform, grassmannian result or None)."""
        ctx = self.context()
        tr = self.transform
        if not tr:
            return trivial_transform(ctx), None
        if "conditions" in tr:
            from .grassmannian import AdelicPlane, to_darboux

            if ctx.kind != "exp":
                raise ProblemError("condition planes live in the exp context")
            plane = AdelicPlane(tuple(tr["conditions"]), tr.get("ambient"))
            g = to_darboux(plane)
            return g.transform, g
        if "u" not in tr:
            raise ProblemError("transform needs 'u' or 'conditions'")
        env = self.env()
        u_expr = gen_from_text(ctx, tr["u"], env)
        p = _lead_poly(tr.get("p"), "x", env)
        q = _lead_poly(tr.get("q"), "y", env)
        return build_transform(ctx, u_expr, p, q), None

    def config(self) -> SolveConfig:
        return SolveConfig(L=self.L, M=self.M, bounds=self.bounds, N=self.N, jets=self.jets)


def _lead_poly(text, var, env):
    if text is None:
        return None
    op = parse_op(str(text), var, env)
    if op.order != 0 or not op.c[0].is_poly():
        raise ProblemError(f"{text!r} is not a polynomial in {var}")
    return op.c[0].num


def gen_from_text(ctx: Context, text: str, env=None) -> GenExpr:
    """Generator text in the context dialect, or raw x/Dx text for Bessel."""
    try:
        return parse_gen(ctx, text, env)
    except ReservedSymbolMisuse:
        if ctx.kind != "bessel":
            raise
    env = ParamEnv.of(env)
    if "nu" not in env:
        env = env.with_values(nu=ctx.nu)
    return fourier_of_operator(ctx, parse_op(text, "x", env))


def _pair_doc(pair):
    return {"x": print_op(pair.x_op), "y": print_op(pair.y_op), "order": pair.order, "coorder": pair.coorder}


def result_document(problem: Problem, t: DarbouxTransform, res: SolveResult, grass=None) -> dict:
    """Machine-readable result (no timings, so reruns are byte-identical)."""
    stats = {k: v for k, v in sorted(res.stats.items()) if not k.startswith("t_")}
    w = res.witness
    doc = {
        "problem": problem.to_dict(),
        "transform": t.report(),
        "dimension": res.dimension,
        "orders": res.orders,
        "basis": [_pair_doc(p) for p in res.echelon_pairs()],
        "witness": _pair_doc(w) if w is not None else None,
        "only_constants": res.only_constants,
        "stats": stats,
    }
    if grass is not None:
        doc["grassmannian"] = grass.report()
    return doc


def run_problem(problem: Problem):
    t, grass = problem.build()
    res = solve(t, problem.endpoints(), problem.config())
    return t, res, grass


def dumps(doc) -> str:
    return json.dumps(doc, indent=2, sort_keys=False) + "\n"

