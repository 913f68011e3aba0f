"""Mixed chains of the 3d R and L operators and the R matrices they produce.

An epsilon string picks, per site, the 3d R on F (x) F (x) F (``0``) or the 3d L
on V (x) V (x) F (``1``). All sites share one auxiliary Fock leg. Closing that
leg with a weighted trace, or with a pair of boundary vectors, gives operators
on W_alpha (x) W_beta whose entries are power series in z. Every z^c
coefficient is a finite exact sum: the trace pins the auxiliary level to c,
and the boundary bra pins it to s*c. So the series are exact through any
requested order.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Dict, List, Optional, Sequence, Tuple

from .exactalg import RatFunc, q, qfac, qpoch, x, y, z
from .fock import (
    FOCK, QUBIT, Charge, LocalOp, Placed, SparseVec, apply_placed, apply_product, basis_vec,
    enumerate_sector, vec_add,
)
from .harness.report import CheckReport, first_difference, same
from .threedim import L3, R3, threedR_element

TRACE, BOUNDARY = "tr", "st"


@dataclass(frozen=True)
class EpsilonString:
    eps: Tuple[int, ...]

    def __post_init__(self):
        if not self.eps:
            raise ValueError("an epsilon string needs at least one site")
        if any(e not in (0, 1) for e in self.eps):
            raise ValueError(f"epsilon entries must be 0 or 1, got {self.eps}")

    @classmethod
    def parse(cls, text) -> "EpsilonString":
        if isinstance(text, EpsilonString):
            return text
        if isinstance(text, str):
            return cls(tuple(int(t) for t in text.replace(" ", "").split(",") if t))
        return cls(tuple(text))

    @property
    def n(self) -> int:
        return len(self.eps)

    def site_kind(self, l: int) -> str:
        return FOCK if self.eps[l] == 0 else QUBIT

    def space_shape(self) -> Tuple[str, ...]:
        return tuple(self.site_kind(l) for l in range(self.n))

    def __str__(self):
        return ",".join(map(str, self.eps))


@dataclass(frozen=True)
class SChain:
    """S^{(e_1)} ... S^{(e_n)} on W_alpha (x) W_beta (x) F_3; legs alpha_1..alpha_n, beta_1..beta_n, 3."""

    eps: EpsilonString

    @property
    def aux(self) -> int:
        return 2 * self.eps.n

    def factors(self) -> List[Placed]:
        n = self.eps.n
        return [(R3 if e == 0 else L3).on(l, n + l, 2 * n) for l, e in enumerate(self.eps.eps)]

    def apply(self, idx: Tuple[int, ...], aux_level: int) -> SparseVec:
        return apply_product(self.factors(), basis_vec(tuple(idx) + (aux_level,)))


@dataclass
class SeriesOp:
    """Operator on W_alpha (x) W_beta whose entries are z-polynomials exact through ``z_order``."""

    family: str
    eps: EpsilonString
    z_order: int
    s: int = 0
    t: int = 0
    level_cutoff: Optional[int] = None
    _cache: Dict = field(default_factory=dict, repr=False)

    @property
    def exact_order(self) -> int:
        """Highest z power computed exactly; coefficients beyond it are dropped."""
        if self.level_cutoff is None:
            return self.z_order
        return min(self.z_order, self.level_cutoff)

    @property
    def shape(self) -> Tuple[str, ...]:
        return self.eps.space_shape() * 2

    def column(self, idx: Tuple[int, ...]) -> List[Tuple[Tuple[int, ...], RatFunc]]:
        idx = tuple(idx)
        if idx not in self._cache:
            self._cache[idx] = self._compute(idx)
        return self._cache[idx]

    def _compute(self, idx):
        chain = SChain(self.eps)
        N = self.exact_order
        acc: Dict = {}
        if self.family == TRACE:
            for m in range(N + 1):
                for out, c in chain.apply(idx, m).items():
                    if out[-1] == m:
                        vec_add(acc, out[:-1], c * z**m)
        else:
            s, t = self.s, self.t
            total = sum(idx)
            for k in range((s * N + total) // t + 1):
                for out, c in chain.apply(idx, t * k).items():
                    lvl = out[-1]
                    if lvl % s or lvl // s > N:
                        continue
                    cc = lvl // s
                    w_ = z**cc * qfac(q**2, s * cc) / (qfac(q ** (s * s), cc) * qfac(q ** (t * t), k))
                    vec_add(acc, out[:-1], c * w_)
        return sorted(acc.items())

    def entry(self, out: Tuple[int, ...], inp: Tuple[int, ...]) -> List[RatFunc]:
        for o, c in self.column(inp):
            if o == tuple(out):
                return c.series("z", self.exact_order)
        return [RatFunc(0)] * (self.exact_order + 1)

    def op(self, arg: RatFunc = z) -> LocalOp:
        arg = RatFunc.coerce(arg)
        name = f"R{self.family}[{self.eps}]"

        def kernel(idx):
            return [(o, c.subst({"z": arg})) for o, c in self.column(idx)]

        return LocalOp(name, self.shape, kernel)


def rtr_series(eps, z_order: int, level_cutoff: Optional[int] = None) -> SeriesOp:
    """Tr_3(z^{h_3} S-chain) with Tr_3(X) = sum_m <m|X|m>/(q^2)_m, i.e. the diagonal coefficient."""
    return SeriesOp(TRACE, EpsilonString.parse(eps), z_order, level_cutoff=level_cutoff)


def rst_series(s: int, t: int, eps, z_order: int, level_cutoff: Optional[int] = None) -> SeriesOp:
    """<chi_s(z)| S-chain |chi_t(1)> with <m|m'> = delta (q^2)_m."""
    if s not in (1, 2) or t not in (1, 2):
        raise ValueError("s and t must be 1 or 2")
    return SeriesOp(BOUNDARY, EpsilonString.parse(eps), z_order, s, t, level_cutoff)


def remark_nsite_series(s: int, t: int, a, b, i, j, z_order: int) -> List[RatFunc]:
    """The all-Fock n-site contraction formula; its site 1 is the one touching the ket."""
    n = len(a)
    out = [RatFunc(0)] * (z_order + 1)

    def rec(l, c_in, coeff):
        # l: current site (0-based, formula order); c_in: auxiliary input level of this site
        if coeff.is_zero():
            return
        if l == n - 1:
            c_out = j[l] + c_in - b[l]
            if c_out < 0 or c_out % s or c_out // s > z_order:
                return
            cn = c_out // s
            val = coeff * threedR_element(a[l], b[l], c_out, i[l], j[l], c_in)
            if not val.is_zero():
                out[cn] = out[cn] + val * qfac(q**2, s * cn) / qfac(q ** (s * s), cn)
            return
        c_out = j[l] + c_in - b[l]
        if c_out < 0:
            return
        rec(l + 1, c_out, coeff * threedR_element(a[l], b[l], c_out, i[l], j[l], c_in))

    total = sum(a) + sum(b)
    for c0 in range((s * z_order + total) // t + 1):
        rec(0, t * c0, RatFunc(1) / qfac(q ** (t * t), c0))
    return out


# ---------------------------------------------------------------------------
# Yang-Baxter on truncated bivariate series


def _ybe_inputs(eps: EpsilonString, max_sector: int):
    """Sectors of W^{(eps)} x 3 with per-site totals alpha_l + beta_l + gamma_l <= max_sector."""
    n = eps.n
    shape = eps.space_shape() * 3
    charges = []
    for l in range(n):
        coeffs = [0] * (3 * n)
        for blk in range(3):
            coeffs[blk * n + l] = 1
        charges.append(Charge(tuple(coeffs)))

    def rec(l, vals):
        if l == n:
            sec = enumerate_sector(shape, charges, vals)
            if sec.basis:
                yield sec
            return
        top = max_sector if eps.eps[l] == 0 else min(max_sector, 3)
        for v in range(top + 1):
            yield from rec(l + 1, vals + [v])

    return list(rec(0, []))


def _apply_truncated(factors: Sequence[Placed], v: SparseVec, bounds: Dict[str, int]) -> SparseVec:
    for p in reversed(factors):
        v = apply_placed(p, v)
        v = {k: c.truncate(bounds) for k, c in v.items()}
        v = {k: c for k, c in v.items() if not c.is_zero()}
        if not v:
            break
    return v


def ybe_factor_lists(op_x: LocalOp, op_xy: LocalOp, op_y: LocalOp, n: int):
    """R_ab(x) R_ag(xy) R_bg(y) and R_bg(y) R_ag(xy) R_ab(x) on W_a (x) W_b (x) W_g."""
    A = tuple(range(n))
    B = tuple(range(n, 2 * n))
    G = tuple(range(2 * n, 3 * n))
    lhs = [op_x.on(*A, *B), op_xy.on(*A, *G), op_y.on(*B, *G)]
    rhs = [op_y.on(*B, *G), op_xy.on(*A, *G), op_x.on(*A, *B)]
    return lhs, rhs


def _run_series_ybe(rep: CheckReport, series: SeriesOp, eps: EpsilonString, order: int, max_sector: int,
                    transform=None) -> CheckReport:
    ops = [series.op(arg) for arg in (x, x * y, y)]
    if transform is not None:
        ops = [transform(o) for o in ops]
    lhs, rhs = ybe_factor_lists(*ops, eps.n)
    bounds = {"x": order, "y": order}
    for sec in _ybe_inputs(eps, max_sector):
        def body(sec=sec):
            for inp in sec.basis:
                a = _apply_truncated(lhs, basis_vec(inp), bounds)
                b = _apply_truncated(rhs, basis_vec(inp), bounds)
                cx = first_difference(a, b)
                if cx is not None:
                    cx["in"] = list(inp)
                    return cx
            return None

        rep.run(f"site totals={list(sec.values)}", body)
    return rep


def check_theorem_gen(family: str, eps, z_order: int = 4, max_sector: int = 2, s: int = 1, t: int = 1,
                      gauge: bool = False) -> CheckReport:
    """R_ab(x)R_ag(xy)R_bg(y) = R_bg(y)R_ag(xy)R_ab(x) through x^order, y^order."""
    eps = EpsilonString.parse(eps)
    if eps.n > 2:
        raise ValueError("verification is limited to n <= 2 sites")
    if family == TRACE:
        series = rtr_series(eps, z_order)
        label = f"trace family eps=({eps})"
    elif family == BOUNDARY:
        series = rst_series(s, t, eps, z_order)
        label = f"boundary family (s,t)=({s},{t}) eps=({eps})"
    else:
        raise ValueError(f"unknown family {family!r}")
    if gauge:
        label += " with K gauge"
    rep = CheckReport(f"Yang-Baxter equation, {label}", "it satisfies the Yang-Baxter equation in",
                      {"family": family, "eps": str(eps), "z_order": z_order, "max_sector": max_sector,
                       "s": s, "t": t, "gauge": gauge})
    return _run_series_ybe(rep, series, eps, z_order, max_sector, k_gauge if gauge else None)


# ---------------------------------------------------------------------------
# the (0,1) trace operator in closed form


def _k_factor(idx, n: int, side: int, power: int) -> RatFunc:
    """K^power on one side (0 = alpha, 1 = beta) of W^{(0,1)}; K = q^{1 - 2 v} with v the qubit level."""
    qubit = idx[side * n + n - 1]
    return q ** (power * (1 - 2 * qubit))


def k_gauge(op: LocalOp) -> LocalOp:
    """X -> (1 (x) K^{-1}) X (K (x) 1) for operators on W^{(0,1)} (x) W^{(0,1)}."""
    n = len(op.shape) // 2

    def kernel(idx):
        kin = _k_factor(idx, n, 0, 1)
        return [(o, c * kin * _k_factor(o, n, 1, -1)) for o, c in op.kernel(idx)]

    return LocalOp(f"K{op.name}", op.shape, kernel, op.conserved)


@dataclass(frozen=True)
class FreeFermionR:
    """4x4 matrix on the basis xi_0 eta_0, xi_0 eta_1, xi_1 eta_0, xi_1 eta_1; entry [row][col]."""

    mu: RatFunc
    nu: RatFunc

    def matrix(self, arg: RatFunc = z) -> List[List[RatFunc]]:
        mu, nu, w_ = self.mu, self.nu, RatFunc.coerce(arg)
        Z0 = RatFunc(0)
        return [
            [w_ - mu * nu, Z0, Z0, Z0],
            [Z0, nu - mu * w_, (1 - nu**2) * w_, Z0],
            [Z0, 1 - mu**2, mu - nu * w_, Z0],
            [Z0, Z0, Z0, 1 - mu * nu * w_],
        ]

    def op(self, arg: RatFunc = z) -> LocalOp:
        M = self.matrix(arg)
        pairs = [(0, 0), (0, 1), (1, 0), (1, 1)]

        def kernel(idx):
            col = pairs.index(tuple(idx))
            return [(pairs[r], M[r][col]) for r in range(4) if not M[r][col].is_zero()]

        return LocalOp("Rff", (QUBIT, QUBIT), kernel)


PRINTED, CORRECTED = "printed", "corrected"
GAUGES = (PRINTED, CORRECTED)


def _poch_q2(a: RatFunc, m: int) -> RatFunc:
    # (a; q^2)_m, continued to m = -1 as 1 / (1 - a q^-2)
    if m == -1:
        return 1 / (1 - a * q**-2)
    return qpoch(a, q**2, m)


def rtr01_prefactor(d: int, dp: int) -> RatFunc:
    return z ** (dp - 1) * _poch_q2(q ** (d - dp + 2) / z, dp - 1) / _poch_q2(q ** (d - dp) * z, dp + 1)


def _xi(d: int, i: int) -> Tuple[int, int]:
    return (d - i, i)


def _gauge_factor(gauge: str, out: Tuple[int, int], inp: Tuple[int, int]) -> RatFunc:
    """Diagonal factor on entry xi_a eta_b <- xi_i eta_j.

    ``printed`` is (1 (x) K^-1) R (K (x) 1) with K v_a = q^(1-2a) v_a. ``corrected``
    uses K^(-1/2) in place of K, which is what the trace produces.
    """
    a, b = out
    i, _j = inp
    if gauge == PRINTED:
        return q ** (2 * b - 1) * q ** (1 - 2 * i)
    if gauge == CORRECTED:
        return q ** (i - b)
    raise ValueError(f"unknown gauge {gauge!r}; expected one of {GAUGES}")


def rtr01_closed_entry(d: int, dp: int, out: Tuple[int, int], inp: Tuple[int, int],
                       gauge: str = PRINTED) -> RatFunc:
    """Closed-form entry on W^{(d)} (x) W^{(d')}; ``out``/``inp`` are (i, j) labels of xi_i eta_j.

    The printed form is 1/(1-z) on the vacuum block, zero when exactly one of d, d'
    vanishes, and the gauged free-fermion matrix otherwise. The corrected form uses
    the gauged matrix uniformly for all d, d' >= 0.
    """
    _gauge_factor(gauge, out, inp)
    if gauge == PRINTED:
        if d == 0 and dp == 0:
            return 1 / (1 - z) if out == inp == (0, 0) else RatFunc(0)
        if d == 0 or dp == 0:
            return RatFunc(0)
    pairs = [(0, 0), (0, 1), (1, 0), (1, 1)]
    M = FreeFermionR(q**d, q**dp).matrix()
    val = M[pairs.index(out)][pairs.index(inp)]
    return rtr01_prefactor(d, dp) * _gauge_factor(gauge, out, inp) * val


def _w_labels(d: int):
    return [0] if d == 0 else [0, 1]


def check_rtr01_closed(z_order: int = 10, max_d: int = 3, gauge: str = PRINTED) -> CheckReport:
    """Closed form of Tr_3(z^h R L) on W^{(d)} (x) W^{(d')} against the direct trace series."""
    rep = CheckReport("closed form of the (0,1) trace operator", "Explicitly it is expressed as",
                      {"z_order": z_order, "max_d": max_d, "gauge": gauge})
    series = rtr_series((0, 1), z_order)
    for d in range(max_d + 1):
        for dp in range(max_d + 1):
            def body(d=d, dp=dp):
                for i in _w_labels(d):
                    for j in _w_labels(dp):
                        inp = _xi(d, i) + _xi(dp, j)
                        col = dict(series.column(inp))
                        for o in col:
                            if (o[0] + o[1], o[2] + o[3]) != (d, dp):
                                return {"in": list(inp), "out": list(o), "problem": "leaves the W(d) x W(d') block"}
                        for a in _w_labels(d):
                            for b in _w_labels(dp):
                                out = _xi(d, a) + _xi(dp, b)
                                got = series.entry(out, inp)
                                want = rtr01_closed_entry(d, dp, (a, b), (i, j), gauge).series("z", z_order)
                                for k, (u, v) in enumerate(zip(got, want)):
                                    if not same(u, v):
                                        return {"in": [i, j], "out": [a, b], "z_power": k,
                                                "trace": u.to_text(), "closed": v.to_text()}
                return None

            rep.run(f"d={d},d'={dp}", body)
    return rep


def check_ffR_ybe(powers: Sequence[int] = (1, 2, 3)) -> CheckReport:
    """R_{l,m}(x) R_{l,n}(xy) R_{m,n}(y) = R_{m,n}(y) R_{l,n}(xy) R_{l,m}(x) on V^{(x)3}."""
    rep = CheckReport("Yang-Baxter equation of the 4x4 free-fermion matrix", "satisfies the",
                      {"powers": list(powers)})
    basis = [(a, b, c) for a in (0, 1) for b in (0, 1) for c in (0, 1)]
    for l in powers:
        for m in powers:
            for n in powers:
                lam, mu, nu = q**l, q**m, q**n

                def body(lam=lam, mu=mu, nu=nu):
                    lhs = [FreeFermionR(lam, mu).op(x).on(0, 1), FreeFermionR(lam, nu).op(x * y).on(0, 2),
                           FreeFermionR(mu, nu).op(y).on(1, 2)]
                    rhs = [FreeFermionR(mu, nu).op(y).on(1, 2), FreeFermionR(lam, nu).op(x * y).on(0, 2),
                           FreeFermionR(lam, mu).op(x).on(0, 1)]
                    for inp in basis:
                        cx = first_difference(apply_product(lhs, basis_vec(inp)), apply_product(rhs, basis_vec(inp)))
                        if cx is not None:
                            cx["in"] = list(inp)
                            return cx
                    return None

                rep.run(f"(q^{l},q^{m},q^{n})", body)
    return rep


def block_pattern(max_d: int, z_order: int = 4) -> List[Tuple[int, int]]:
    """(d, d') pairs whose W^{(d)} (x) W^{(d')} block of the (0,1) trace operator is nonzero."""
    series = rtr_series((0, 1), z_order)
    found = []
    for d in range(max_d + 1):
        for dp in range(max_d + 1):
            nonzero = any(series.column(_xi(d, i) + _xi(dp, j)) for i in _w_labels(d) for j in _w_labels(dp))
            if nonzero:
                found.append((d, dp))
    return found
