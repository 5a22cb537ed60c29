"""Bilinear concomitant, the bisymmetry linear system and the solver.

For d = sum_j d_j D^j the concomitant is

    C_d(f, g; p) = sum_{j>=1} sum_{k<j} (-1)^k f^(j-1-k)(p) (d_j g)^(k)(p)

and d is symmetric with respect to a path when C_d vanishes at its finite
endpoints for all test functions.  Only the jets of f and g of order below
ord(d) enter, so testing on monomials x^0..x^N with N >= ord(d) - 1 is
complete.
"""

from __future__ import annotations

import time
from dataclasses import dataclass, field
from math import comb

from .darboux import CandidatePair, DarbouxTransform, candidate_space
from .errors import EndpointAtPole, NotSigmaInvariant, PoleAtPoint
from .exactnum import GaussianRational, Poly, RatFunc, format_scalar, gr, lcm_all, scalar
from .linalg import modp_matrix, modp_rank_profile, nullspace, rank, rref
from .orealg import OreOp

__all__ = [
    "EndpointSpec",
    "SolveConfig",
    "SolveResult",
    "VerifyReport",
    "concomitant",
    "concomitant_function",
    "concomitant_matrix",
    "concomitant_derivative_identity_check",
    "concomitant_decomposition_check",
    "assemble_system",
    "solve",
    "verify_bisymmetric",
    "operator_coordinates",
]

MODES = ("sym", "inf")


@dataclass
class EndpointSpec:
    """Finite endpoints of the two paths.

    ``sym``: the path runs from -p to p; conditions are imposed at p and
    the mirror endpoint follows from sigma-invariance.  ``inf``: the path
    runs from p to infinity with decay; conditions at p only.
    """

    x_point: object
    y_point: object
    x_mode: str = "sym"
    y_mode: str = "sym"

    def __post_init__(self):
        self.x_point = gr(self.x_point)
        self.y_point = gr(self.y_point)
        for m in (self.x_mode, self.y_mode):
            if m not in MODES:
                raise ValueError(f"endpoint mode must be one of {MODES}, got {m!r}")

    def point(self, side):
        return self.x_point if side == "x" else self.y_point

    def mode(self, side):
        return self.x_mode if side == "x" else self.y_mode

    def to_dict(self):
        return {
            "x": format_scalar(self.x_point),
            "y": format_scalar(self.y_point),
            "x_mode": self.x_mode,
            "y_mode": self.y_mode,
        }


# concomitant -------------------------------------------------------------------------
def _as_rf(f, var):
    if isinstance(f, RatFunc):
        return f
    if isinstance(f, Poly):
        return RatFunc.from_poly(f)
    return RatFunc.const(f, var)


def concomitant_function(d: OreOp, f, g) -> RatFunc:
    """C_d(f, g; x) as a rational function of x."""
    f, g = _as_rf(f, d.var), _as_rf(g, d.var)
    n = len(d.c) - 1
    fd = [f]
    for _ in range(max(0, n - 1)):
        fd.append(fd[-1].derivative())
    total = RatFunc.zero(d.var)
    for j in range(1, n + 1):
        h = d.c[j] * g
        for k in range(j):
            if k:
                h = h.derivative()
            term = fd[j - 1 - k] * h
            total = total + (term if k % 2 == 0 else -term)
    return total


def concomitant(d: OreOp, f, g, p) -> GaussianRational:
    """C_d(f, g; p) by the double-sum formula."""
    p = scalar(p)
    f, g = _as_rf(f, d.var), _as_rf(g, d.var)
    n = len(d.c) - 1
    try:
        fvals = []
        fk = f
        for k in range(max(0, n)):
            fvals.append(fk.eval(p))
            fk = fk.derivative()
        total = 0
        for j in range(1, n + 1):
            h = d.c[j] * g
            for k in range(j):
                if k:
                    h = h.derivative()
                v = fvals[j - 1 - k] * h.eval(p)
                total = total + (v if k % 2 == 0 else -v)
    except PoleAtPoint as exc:
        raise EndpointAtPole(str(exc)) from exc
    return gr(total)


def concomitant_matrix(d: OreOp, p):
    """Matrix M with C_d(f, g; p) = sum_{a,b} f^(a)(p) M[a][b] g^(b)(p).

    M[a][b] = sum_j (-1)^(j-1-a) C(j-1-a, b) d_j^(j-1-a-b)(p), a,b < ord d.
    """
    p = scalar(p)
    n = len(d.c) - 1
    if n <= 0:
        return []
    fact = [1]
    for k in range(1, n + 1):
        fact.append(fact[-1] * k)
    derivs = []
    for j in range(n + 1):
        a = d.c[j]
        if j == 0 or not a.num.c:
            derivs.append(None)
            continue
        try:
            tay = a.taylor(p, j)
        except PoleAtPoint as exc:
            raise EndpointAtPole(str(exc)) from exc
        derivs.append([tay[r] * fact[r] for r in range(j)])
    zero = scalar(0)
    M = [[zero] * n for _ in range(n)]
    for j in range(1, n + 1):
        dv = derivs[j]
        if dv is None:
            continue
        for a in range(j):
            k = j - 1 - a
            sign = -1 if k % 2 else 1
            row = M[a]
            for b in range(k + 1):
                v = dv[k - b]
                if v:
                    c = comb(k, b) * sign
                    row[b] = row[b] + v * c
    return M


def concomitant_derivative_identity_check(d: OreOp, f, g) -> bool:
    """d/dx C_d(f, g) == (d f) g - f (d* g)."""
    f, g = _as_rf(f, d.var), _as_rf(g, d.var)
    lhs = concomitant_function(d, f, g).derivative()
    rhs = d.apply(f) * g - f * d.adjoint().apply(g)
    return lhs == rhs


def concomitant_decomposition_check(a: OreOp, b: OreOp, f, g, p) -> bool:
    """C_{ab}(f, g) == C_a(b f, g) + C_b(f, a* g) at p."""
    f, g = _as_rf(f, a.var), _as_rf(g, a.var)
    lhs = concomitant(a * b, f, g, p)
    rhs = concomitant(a, b.apply(f), g, p) + concomitant(b, f, a.adjoint().apply(g), p)
    return lhs == rhs


# system assembly -----------------------------------------------------------------------
def _jet_matrix(p, N, n):
    """J[j][a] = a-th derivative of x^j at p (falling factorial times p^(j-a))."""
    p = scalar(p)
    J = []
    for j in range(N + 1):
        row = []
        for a in range(n):
            if a > j:
                row.append(scalar(0))
            else:
                ff = 1
                for t in range(a):
                    ff *= j - t
                row.append(p ** (j - a) * ff)
        J.append(row)
    return J


@dataclass
class LinearSystem:
    rows: list
    labels: list
    ncols: int


def _side_ops(cands, side):
    return [c.x_op if side == "x" else c.y_op for c in cands]


def _side_rows(ops, p, mode, N, jets):
    if mode == "sym":
        for op in ops:
            if not op.is_sigma_invariant():
                raise NotSigmaInvariant("symmetric-pair endpoints need sigma-invariant candidates")
    n = max([op.order for op in ops if op.c] + [0])
    if n <= 0:
        return [], []
    mats = [concomitant_matrix(op, p) for op in ops]
    if jets == "taylor":
        keys = [(a, b) for a in range(n) for b in range(n) if a + b <= n - 1]
        rows = []
        for a, b in keys:
            rows.append([M[a][b] if a < len(M) and b < len(M) else scalar(0) for M in mats])
        return rows, keys
    N = max(N if N is not None else n, n - 1)
    J = _jet_matrix(p, N, n)
    cols = []
    for M in mats:
        m = len(M)
        if m == 0:
            cols.append(None)
            continue
        # JM[j][b] = sum_a J[j][a] M[a][b]
        JM = []
        for j in range(N + 1):
            Jj = J[j]
            JM.append([sum((Jj[a] * M[a][b] for a in range(m) if Jj[a] and M[a][b]), scalar(0)) for b in range(m)])
        cols.append([[sum((JM[j][b] * J[k][b] for b in range(m) if JM[j][b] and J[k][b]), scalar(0))
                      for k in range(N + 1)] for j in range(N + 1)])
    keys = [(j, k) for j in range(N + 1) for k in range(N + 1)]
    rows = [[(c[j][k] if c is not None else scalar(0)) for c in cols] for j, k in keys]
    return rows, keys


def assemble_system(cands, ep: EndpointSpec, N=None, jets="monomial") -> LinearSystem:
    """Rows C(x^j, x^k; p1) and C(y^j, y^k; p2) per candidate column."""
    rows, labels = [], []
    for side in ("x", "y"):
        r, keys = _side_rows(_side_ops(cands, side), ep.point(side), ep.mode(side), N, jets)
        for row, key in zip(r, keys):
            if any(row):
                rows.append(row)
                labels.append((side,) + key)
    return LinearSystem(rows, labels, len(cands))


# coordinates ------------------------------------------------------------------------------
@dataclass
class Coordinates:
    """Operators as numerator coefficient vectors over per-order common denominators."""

    var: str
    dens: list
    widths: list
    cols: list

    @property
    def nrows(self):
        return sum(self.widths)

    def column_rows(self):
        return [list(r) for r in zip(*self.cols)] if self.cols else []

    def combine(self, vec) -> OreOp:
        coeffs = []
        off = 0
        for j, (L, w) in enumerate(zip(self.dens, self.widths)):
            num = [scalar(0)] * w
            for c, col in zip(vec, self.cols):
                if c:
                    for t in range(w):
                        v = col[off + t]
                        if v:
                            num[t] = num[t] + c * v
            off += w
            coeffs.append(RatFunc(Poly(num, self.var), L))
        return OreOp(coeffs, self.var)

    def coords_of(self, op: OreOp):
        """Coordinates of ``op`` in this frame, or None if it does not fit."""
        out = []
        for j, (L, w) in enumerate(zip(self.dens, self.widths)):
            a = op.coeff(j)
            if not a.num.c:
                out.extend([scalar(0)] * w)
                continue
            if not a.den.divides(L):
                return None
            num = a.num * L.exact_div(a.den)
            if len(num.c) > w:
                return None
            out.extend(list(num.c) + [scalar(0)] * (w - len(num.c)))
        if len(op.c) > len(self.dens):
            return None
        return out


def operator_coordinates(ops, var="x") -> Coordinates:
    n = max([len(op.c) for op in ops] + [0])
    dens, widths = [], []
    nums = [[None] * n for _ in ops]
    for j in range(n):
        L = lcm_all([op.coeff(j).den for op in ops], var)
        w = 0
        for i, op in enumerate(ops):
            a = op.coeff(j)
            num = a.num if a.den == L else a.num * L.exact_div(a.den)
            nums[i][j] = num
            w = max(w, len(num.c))
        dens.append(L)
        widths.append(w)
    cols = []
    for i in range(len(ops)):
        col = []
        for j in range(n):
            c = nums[i][j].c
            col.extend(list(c) + [scalar(0)] * (widths[j] - len(c)))
        cols.append(col)
    return Coordinates(var, dens, widths, cols)


def _independent_columns(coords: Coordinates, stats):
    """Indices of a maximal independent subset of candidate columns (exact)."""
    n = len(coords.cols)
    rows = coords.column_rows()
    arr = modp_matrix(rows, n)
    if arr is not None:
        r, piv, _ = modp_rank_profile(arr)
        if r == n:
            # full rank modulo p certifies full rank over Q(i)
            stats["dedup"] = "full rank (modular certificate)"
            return list(range(n))
    from .linalg import _integer_rows, _is_complex, bareiss

    cplx = _is_complex(rows)
    _, piv = bareiss(_integer_rows(rows, cplx), n, cplx)
    stats["dedup"] = f"removed {n - len(piv)} dependent candidates"
    return piv


# solving ------------------------------------------------------------------------------------
@dataclass
class SolveConfig:
    L: int | None = None
    M: int | None = None
    bounds: object = None
    N: int | None = None
    jets: str = "monomial"
    dedup: bool = True


@dataclass
class SolveResult:
    candidates: list
    kernel: list
    x_coords: Coordinates
    y_coords: Coordinates
    echelon_orders: list
    witness_index: int | None
    echelon: list
    stats: dict = field(default_factory=dict)

    @property
    def dimension(self):
        return len(self.kernel)

    @property
    def orders(self):
        return sorted(set(self.echelon_orders))

    def pair(self, vec, label="solution") -> CandidatePair:
        return CandidatePair(label, "solution", self.x_coords.combine(vec), self.y_coords.combine(vec))

    def basis(self):
        return [self.pair(v, f"solution[{i}]") for i, v in enumerate(self.kernel)]

    def echelon_pairs(self):
        return [self.pair(v, f"echelon[{i}]") for i, v in enumerate(self.echelon)]

    @property
    def witness(self):
        if self.witness_index is None:
            return None
        p = self.pair(self.echelon[self.witness_index], "witness")
        lead = p.x_op.leading_coefficient().num.lc()
        return p.scaled(1 / lead)

    @property
    def only_constants(self):
        return self.witness_index is None

    def contains_vector(self, vec) -> bool:
        """Exact membership of a candidate-coordinate vector in the kernel span."""
        K = [list(v) for v in self.kernel]
        return rank(K + [list(vec)], len(self.candidates)) == rank(K, len(self.candidates)) if K else not any(vec)

    def contains_operator(self, op: OreOp) -> bool:
        """Exact membership of an x-operator in the span of the solutions (rank test)."""
        c = self.x_coords.coords_of(op)
        if c is None:
            return False
        sols = [self.x_coords_vector(v) for v in self.kernel]
        n = len(c)
        if not sols:
            return not any(c)
        return rank(sols + [c], n) == rank(sols, n)

    def x_coords_vector(self, vec):
        out = [scalar(0)] * self.x_coords.nrows
        for c, col in zip(vec, self.x_coords.cols):
            if c:
                for t, v in enumerate(col):
                    if v:
                        out[t] = out[t] + c * v
        return out


def _order_major(coords: Coordinates, vec):
    """Reorder a coordinate vector so that the highest derivative block comes first."""
    blocks = []
    off = 0
    for w in coords.widths:
        blocks.append(vec[off : off + w])
        off += w
    out, owners = [], []
    for j in range(len(blocks) - 1, -1, -1):
        out.extend(reversed(blocks[j]))
        owners.extend([j] * len(blocks[j]))
    return out, owners


def solve(t: DarbouxTransform, ep: EndpointSpec, config: SolveConfig | None = None, cands=None) -> SolveResult:
    """Exact bisymmetric operators in the candidate span."""
    config = config or SolveConfig()
    stats = {}
    t0 = time.perf_counter()
    if cands is None:
        cands = candidate_space(t, config.L, config.M, config.bounds)
    stats["candidates"] = len(cands)
    stats["t_candidates"] = round(time.perf_counter() - t0, 3)
    xc = operator_coordinates([c.x_op for c in cands], "x")
    if config.dedup and cands:
        keep = _independent_columns(xc, stats)
        if len(keep) < len(cands):
            cands = [cands[i] for i in keep]
            xc = operator_coordinates([c.x_op for c in cands], "x")
    yc = operator_coordinates([c.y_op for c in cands], "y")
    t1 = time.perf_counter()
    system = assemble_system(cands, ep, config.N, config.jets)
    stats["t_assemble"] = round(time.perf_counter() - t1, 3)
    t2 = time.perf_counter()
    kernel = nullspace(system.rows, len(cands), stats)
    stats["t_nullspace"] = round(time.perf_counter() - t2, 3)
    stats["dimension"] = len(kernel)

    # order filtration: echelon form of the solutions, highest derivative first;
    # augmenting with the kernel vectors carries candidate coordinates along
    echelon_orders, echelon, witness_index = [], [], None
    if kernel:
        aug, owners = [], None
        for v in kernel:
            om, owners = _order_major(xc, _matvec(xc, v))
            aug.append(om + list(v))
        width = len(owners)
        R, piv = rref(aug, width + len(cands))
        for row, pc in zip(R, piv):
            if pc >= width:
                raise ArithmeticError("solutions are not independent in x-coordinates")
            echelon.append(row[width:])
            echelon_orders.append(owners[pc])
        for idx in sorted(range(len(echelon)), key=lambda i: echelon_orders[i]):
            if not xc.combine(echelon[idx]).is_constant():
                witness_index = idx
                break
    stats["t_total"] = round(time.perf_counter() - t0, 3)
    return SolveResult(cands, kernel, xc, yc, echelon_orders, witness_index, echelon, stats)


def _matvec(coords: Coordinates, vec):
    out = [scalar(0)] * coords.nrows
    for c, col in zip(vec, coords.cols):
        if c:
            for t, v in enumerate(col):
                if v:
                    out[t] = out[t] + c * v
    return out


# verification -----------------------------------------------------------------------------
@dataclass
class VerifyReport:
    ok: bool
    x_symmetric: bool
    y_symmetric: bool
    residuals: dict
    first_failure: tuple | None
    messages: list

    def to_dict(self):
        return {
            "ok": self.ok,
            "x_symmetric": self.x_symmetric,
            "y_symmetric": self.y_symmetric,
            "residuals": {k: v for k, v in self.residuals.items()},
            "first_failure": list(self.first_failure) if self.first_failure else None,
            "messages": self.messages,
        }


def _first_nonzero_pair(op, p):
    n = max(op.order, 1)
    x = Poly.gen(op.var)
    for s in range(2 * n):
        for j in range(s + 1):
            k = s - j
            if j < n and k < n:
                v = concomitant(op, x ** j, x ** k, p)
                if v:
                    return j, k, v
    return None


def verify_bisymmetric(pair: CandidatePair, ep: EndpointSpec) -> VerifyReport:
    """Formal symmetry on both sides and vanishing concomitants at the endpoints."""
    msgs = []
    xs = pair.x_op.is_symmetric()
    ys = pair.y_op.is_symmetric()
    if not xs:
        msgs.append("x-operator is not formally symmetric")
    if not ys:
        msgs.append("y-operator is not formally symmetric")
    residuals = {}
    first = None
    for side, op in (("x", pair.x_op), ("y", pair.y_op)):
        p = ep.point(side)
        points = [p, -p] if ep.mode(side) == "sym" and p else [p]
        for pt in points:
            key = f"{side}@{format_scalar(pt)}"
            try:
                M = concomitant_matrix(op, pt)
            except EndpointAtPole as exc:
                residuals[key] = "pole"
                msgs.append(str(exc))
                if first is None:
                    first = (side, format_scalar(pt), None, None)
                continue
            nz = sum(1 for row in M for v in row if v)
            residuals[key] = nz
            if nz and first is None:
                j, k, v = _first_nonzero_pair(op, pt)
                first = (side, format_scalar(pt), j, k)
                msgs.append(f"C({side}^{j}, {side}^{k}; {format_scalar(pt)}) = {format_scalar(v)}")
    ok = xs and ys and first is None
    return VerifyReport(ok, xs, ys, residuals, first, msgs)
