"""Reduced 2d R matrices obtained by contracting the third leg of the 3d R.

Two independent pipelines compute the same matrix elements:

* the series oracle sums the defining contraction against the boundary
  vectors coefficient by coefficient in ``z``;
* the closed form is a finite sum whose infinite q-products are fused with
  the normalizing scalar ``rho`` and telescoped by a Pochhammer ledger.

Only the closed form yields rational functions; it is stored for the checked
matrix ``Rc(z)^{a,b}_{i,j} = rho(z) R(z)^{b,a}_{i,j}``.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import Dict, List, Optional, Sequence, Tuple

from .exactalg import PochEntry, PochLedger, RatFunc, q, qbinom, qfac, qpoch, w, x, y, z
from .fock import FOCK, Charge, LocalOp, apply_product, basis_vec, sectors_up_to
from .harness.cache import BlockCache, decode_matrix, encode_matrix, matrix_key
from .harness.report import CheckReport, first_difference, same
from .threedim import threedR_element

Series = List[RatFunc]
CLOSED_SPECS = ((1, 1), (2, 2), (1, 2))
ALL_SPECS = ((1, 1), (2, 2), (1, 2), (2, 1))


@dataclass(frozen=True)
class ReducedSpec:
    s: int
    t: int

    def __post_init__(self):
        if (self.s, self.t) not in ALL_SPECS:
            raise ValueError(f"(s,t) must be one of {ALL_SPECS}")

    @property
    def has_closed_form(self) -> bool:
        return (self.s, self.t) in CLOSED_SPECS

    def __str__(self):
        return f"{self.s},{self.t}"


def _spec(spec) -> ReducedSpec:
    if isinstance(spec, ReducedSpec):
        return spec
    s, t = spec
    return ReducedSpec(int(s), int(t))


# ---------------------------------------------------------------------------
# series oracle


def reduced_element_series(spec, a: int, b: int, i: int, j: int, z_order: int) -> Series:
    """Coefficients of z^0..z^order of R^{s,t}(z)^{a,b}_{i,j} from the contraction sum."""
    sp = _spec(spec)
    s, t = sp.s, sp.t
    out = [RatFunc(0)] * (z_order + 1)
    if a + b != i + j:
        return out
    for c in range(z_order + 1):
        num = b + s * c - j
        if num < 0 or num % t:
            continue
        k = num // t
        coeff = qfac(q**2, s * c) / (qfac(q ** (s * s), c) * qfac(q ** (t * t), k))
        out[c] = coeff * threedR_element(a, b, s * c, i, j, t * k)
    return out


# ---------------------------------------------------------------------------
# closed form


@dataclass(frozen=True)
class ClosedFormTerm:
    m: int
    n: int
    lam: int
    mu: int
    kappa: int
    eps: int
    phi: int
    coeff: RatFunc
    ledger: PochLedger


def _kappa_eps(s: int, t: int, b: int, j: int) -> Tuple[int, int]:
    kappa = 2 if (s, t) == (1, 2) and b >= j else s
    eps = 1 if (s, t) == (1, 2) and b - j > 0 and (b - j) % 2 == 1 else 0
    return kappa, eps


def parity_signs(i: int, j: int) -> int:
    """epsilon_1 * epsilon_2 for the (2,2) component containing input |i,j>."""
    return 1 if (i + j) % 2 == 0 else -1


def spectral_monomial(s: int, t: int) -> RatFunc:
    """Z = z^{t/s}; only integral ratios occur for the closed-form specs."""
    if t % s:
        raise ValueError("fractional power of z requested")
    return z ** (t // s)


def rho_ledger(s: int, t: int, sign: int) -> PochLedger:
    """Ledger of rho^{s,t}(z)^{sign}."""
    Z = spectral_monomial(s, t)
    led = PochLedger([PochEntry.of(Z, s * t, 1), PochEntry.of((-1) ** s * q**s * Z, s * t, -1)])
    return led if sign == 1 else led.inverted()


def closed_form_terms(spec, a: int, b: int, i: int, j: int) -> List[ClosedFormTerm]:
    sp = _spec(spec)
    s, t = sp.s, sp.t
    if not sp.has_closed_form:
        raise ValueError(f"no closed form for (s,t) = ({s},{t})")
    kappa, eps = _kappa_eps(s, t, b, j)
    Z = spectral_monomial(s, t)
    Q = s * t
    top_m = (abs(b - j) - eps) // kappa
    mn = min(b, j)
    terms = []
    for lam in range(0, mn + 1):
        mu = b - lam
        if mu > i:
            continue
        for m in range(0, top_m + 1):
            for n in range(0, mn - lam + 1):
                twice = m * (kappa * kappa * m - kappa + 2)
                phi = (twice // 2 + n * (n + 2 * abs(b - j) + 1) - i * mn + mu * mu + lam
                       + (lam - mu) * max(b - j, 0) + eps * (4 * m + 2 * n + lam - mu + i))
                sign = -1 if ((kappa - 1) * (t - 1) * m + n + lam) % 2 else 1
                coeff = (sign * qbinom(top_m, m, q ** (kappa * kappa)) * qbinom(mn - lam, n, q**2)
                         * qbinom(i, mu, q**2) * qbinom(j, lam, q**2))
                E = lam - mu + i + kappa * m + 2 * n
                ledger = PochLedger([
                    PochEntry.of((-1) ** s * Z * q ** (t * (E + eps) + s), Q, 1),
                    PochEntry.of(Z * q ** (t * E), Q, -1),
                ])
                terms.append(ClosedFormTerm(m, n, lam, mu, kappa, eps, phi, coeff, ledger))
    return terms


@lru_cache(maxsize=None)
def reduced_element_closed(s: int, t: int, a: int, b: int, i: int, j: int) -> RatFunc:
    """rho^{s,t}(z)^{e1 e2} * R^{s,t}(z)^{a,b}_{i,j} as an exact rational function."""
    if (s, t) not in CLOSED_SPECS:
        raise ValueError(f"no closed form for (s,t) = ({s},{t})")
    if min(a, b, i, j) < 0:
        raise ValueError("indices must be nonnegative")
    if a + b != i + j:
        return RatFunc(0)
    if s == 2 and (b - j) % 2:
        return RatFunc(0)
    kappa, eps = _kappa_eps(s, t, b, j)
    sign = parity_signs(i, j) if (s, t) == (2, 2) else 1
    rho = rho_ledger(s, t, sign)
    total = RatFunc(0)
    for term in closed_form_terms((s, t), a, b, i, j):
        if term.coeff.is_zero():
            continue
        total = total + term.coeff * q**term.phi * (term.ledger | rho).reduce()
    zexp = eps + max(j - b - eps, 0) // s
    return total * z**zexp * (1 + eps * q)


def checked_element(spec, a: int, b: int, i: int, j: int) -> RatFunc:
    """Rc^{s,t}(z)^{a,b}_{i,j} = rho R^{s,t}(z)^{b,a}_{i,j}."""
    sp = _spec(spec)
    return reduced_element_closed(sp.s, sp.t, b, a, i, j)


_BLOCK_CACHE: Optional[BlockCache] = None


def use_block_cache(cache: Optional[BlockCache]) -> None:
    """Persist reduced matrices in ``cache`` (None switches persistence off)."""
    global _BLOCK_CACHE
    _BLOCK_CACHE = cache


def build_M(spec, d: int) -> List[List[RatFunc]]:
    """M_d with entry (i,j) = Rc(z)^{i,d-i}_{j,d-j}; (0,0) at the top left."""
    if d < 0:
        raise ValueError("d must be nonnegative")
    sp = _spec(spec)

    def compute():
        return [[checked_element(sp, r, d - r, c, d - c) for c in range(d + 1)] for r in range(d + 1)]

    if _BLOCK_CACHE is None:
        return compute()
    key = matrix_key((sp.s, sp.t), d)
    return decode_matrix(_BLOCK_CACHE.get_or_compute(key, lambda: encode_matrix(compute())))


def checked_op(spec, arg: RatFunc = z, qmap: Optional[RatFunc] = None) -> LocalOp:
    """Rc(arg) as a local operator on F (x) F, optionally with q substituted."""
    sp = _spec(spec)
    arg = RatFunc.coerce(arg)
    cache: Dict[Tuple[int, int], List] = {}

    def kernel(idx):
        if idx not in cache:
            i, j = idx
            out = []
            for a in range(i + j + 1):
                v = checked_element(sp, a, i + j - a, i, j)
                if v.is_zero():
                    continue
                mapping = {"z": arg}
                if qmap is not None:
                    mapping["q"] = qmap
                out.append(((a, i + j - a), v.subst(mapping)))
            cache[idx] = out
        return cache[idx]

    return LocalOp(f"Rc{sp}", (FOCK, FOCK), kernel, (Charge((1, 1)),))


# ---------------------------------------------------------------------------
# series helpers


def series_mul(u: Series, v: Series, order: int) -> Series:
    out = [RatFunc(0)] * (order + 1)
    for k1, a in enumerate(u[: order + 1]):
        if a.is_zero():
            continue
        for k2, b in enumerate(v[: order + 1 - k1]):
            if not b.is_zero():
                out[k1 + k2] = out[k1 + k2] + a * b
    return out


def poch_ratio_series(c: RatFunc, d: RatFunc, Q: RatFunc, power: int, order: int) -> Series:
    """Series in Z of (cZ;Q)_inf/(dZ;Q)_inf, with Z = var^power, up to var^order."""
    c, d, Q = RatFunc.coerce(c), RatFunc.coerce(d), RatFunc.coerce(Q)
    out = [RatFunc(0)] * (order + 1)
    ratio = c / d
    for n in range(order // power + 1):
        out[n * power] = qpoch(ratio, Q, n) / qfac(Q, n) * d**n
    return out


def rho_series(s: int, t: int, sign: int, order: int) -> Series:
    """z-series of rho^{s,t}(z)^{sign}."""
    power = t // s
    b = (-1) ** s * q**s
    Q = q ** (s * t)
    if sign == 1:
        return poch_ratio_series(RatFunc(1), b, Q, power, order)
    return poch_ratio_series(b, RatFunc(1), Q, power, order)


def closed_over_rho_series(spec, a: int, b: int, i: int, j: int, z_order: int) -> Series:
    """z-series of R^{s,t}(z)^{a,b}_{i,j} obtained from the closed form."""
    sp = _spec(spec)
    val = reduced_element_closed(sp.s, sp.t, a, b, i, j)
    if val.is_zero():
        return [RatFunc(0)] * (z_order + 1)
    sign = parity_signs(i, j) if (sp.s, sp.t) == (2, 2) else 1
    return series_mul(val.series("z", z_order), rho_series(sp.s, sp.t, -sign, z_order), z_order)


def _block_indices(d: int):
    for a in range(d + 1):
        for i in range(d + 1):
            yield a, d - a, i, d - i


# ---------------------------------------------------------------------------
# checks


def check_closed_form(spec, max_degree: int, z_order: int) -> CheckReport:
    sp = _spec(spec)
    rep = CheckReport(f"closed form / rho vs contraction series, (s,t)=({sp})", "It is a finite sum",
                      {"st": str(sp), "max_degree": max_degree, "z_order": z_order})
    for d in range(max_degree + 1):
        def body(d=d):
            for a, b, i, j in _block_indices(d):
                lhs = closed_over_rho_series(sp, a, b, i, j, z_order)
                rhs = reduced_element_series(sp, a, b, i, j, z_order)
                for k, (u, v) in enumerate(zip(lhs, rhs)):
                    if not same(u, v):
                        return {"element": [a, b, i, j], "z_power": k, "closed": u.to_text(),
                                "series": v.to_text(), "alarm": "transcription"}
            return None

        rep.run(f"degree={d}", body)
    return rep


def check_parity_split(max_degree: int) -> CheckReport:
    """(2,2) parity structure: Rc^{a,b}_{i,j} = 0 unless a = j and b = i mod 2; blocks tile M_d."""
    rep = CheckReport("parity decomposition of Rc^{2,2}", "F^{e1} (x) F^{e2} -> F^{e2} (x) F^{e1}",
                      {"max_degree": max_degree})
    for d in range(max_degree + 1):
        def body(d=d):
            M = build_M((2, 2), d)
            seen = set()
            for r in range(d + 1):
                for c in range(d + 1):
                    a, b, i, j = r, d - r, c, d - c
                    allowed = (a - j) % 2 == 0 and (b - i) % 2 == 0
                    if not allowed and not M[r][c].is_zero():
                        return {"element": [a, b, i, j], "value": M[r][c].to_text()}
                    if allowed:
                        key = (i % 2, j % 2)
                        seen.add(((r, c), key))
                    series = reduced_element_series((2, 2), b, a, i, j, 4)
                    if not allowed and any(not v.is_zero() for v in series):
                        return {"element": [a, b, i, j], "series": [v.to_text() for v in series]}
            # each allowed position belongs to exactly one input-parity block
            positions = [p for p, _ in seen]
            if len(positions) != len(set(positions)):
                return {"degree": d, "problem": "overlapping parity blocks"}
            return None

        rep.run(f"degree={d}", body)
    return rep


def parity_block(d: int, e1: int, e2: int) -> Tuple[List[Tuple[int, int]], List[Tuple[int, int]]]:
    """(outputs, inputs) of the (e1,e2) component in degree d: inputs in F^{e1} (x) F^{e2}."""
    par = {1: 0, -1: 1}
    ins = [(i, d - i) for i in range(d + 1) if i % 2 == par[e1] and (d - i) % 2 == par[e2]]
    outs = [(a, d - a) for a in range(d + 1) if a % 2 == par[e2] and (d - a) % 2 == par[e1]]
    return outs, ins


def check_21_12_relation(max_degree: int, w_order: int = 6) -> CheckReport:
    """R^{2,1}(w^2)^{a,b}_{i,j} = (q^2)_i(q^2)_j/((q^2)_a(q^2)_b) w^{j-b} R^{1,2}(w)^{i,j}_{a,b}."""
    rep = CheckReport("(2,1) <-> (1,2) relation under z = w^2", "which can easily be derived",
                      {"max_degree": max_degree, "w_order": w_order})
    q2 = q**2
    for d in range(max_degree + 1):
        def body(d=d):
            for a, b, i, j in _block_indices(d):
                zser = reduced_element_series((2, 1), a, b, i, j, w_order // 2)
                lhs = [RatFunc(0)] * (w_order + 1)
                for c, v in enumerate(zser):
                    lhs[2 * c] = v
                shift = j - b
                span = w_order + max(-shift, 0)
                r12 = closed_over_rho_series((1, 2), i, j, a, b, span)
                oracle = reduced_element_series((1, 2), i, j, a, b, span)
                if any(not same(u, v) for u, v in zip(r12, oracle)):
                    return {"element": [i, j, a, b], "problem": "(1,2) pipelines disagree"}
                pref = qfac(q2, i) * qfac(q2, j) / (qfac(q2, a) * qfac(q2, b))
                # coefficients of w^p on the right: pref * r12[p - shift]
                for p in range(-max(-shift, 0), w_order + 1):
                    k = p - shift
                    rv = pref * r12[k] if 0 <= k <= span else RatFunc(0)
                    lv = lhs[p] if p >= 0 else RatFunc(0)
                    if not same(lv, rv):
                        return {"element": [a, b, i, j], "w_power": p, "lhs": lv.to_text(), "rhs": rv.to_text()}
            return None

        rep.run(f"degree={d}", body)
    return rep


def ybe_sides(op_x: LocalOp, op_xy: LocalOp, op_y: LocalOp, printed: bool = False):
    """Factor lists of the braid-form Yang-Baxter equation on F^3.

    (Rc(x) (x) 1)(1 (x) Rc(xy))(Rc(y) (x) 1) = (1 (x) Rc(y))(Rc(xy) (x) 1)(1 (x) Rc(x)).
    With ``printed=True`` the left side ends with (1 (x) Rc(y)) instead.
    """
    lhs = [op_x.on(0, 1), op_xy.on(1, 2), op_y.on(1, 2) if printed else op_y.on(0, 1)]
    rhs = [op_y.on(1, 2), op_xy.on(0, 1), op_x.on(1, 2)]
    return lhs, rhs


def check_ybe_ops(op_x: LocalOp, op_xy: LocalOp, op_y: LocalOp, max_degree: int, identity: str, anchor: str,
                  params: Optional[Dict] = None, printed: bool = False) -> CheckReport:
    """Braid relation for three given operators on F^3 sectors of total degree <= max_degree."""
    rep = CheckReport(identity, anchor, dict(params or {"max_degree": max_degree}))
    lhs_f, rhs_f = ybe_sides(op_x, op_xy, op_y, printed=printed)
    for sec in sectors_up_to((FOCK,) * 3, (Charge((1, 1, 1)),), max_degree):
        def body(sec=sec):
            for inp in sec.basis:
                cx = first_difference(apply_product(lhs_f, basis_vec(inp)), apply_product(rhs_f, basis_vec(inp)))
                if cx is not None:
                    cx["in"] = list(inp)
                    return cx
            return None

        rep.run(f"degree={sec.values[0]}", body)
    return rep


def check_ybe(spec, max_degree: int, printed: bool = False) -> CheckReport:
    sp = _spec(spec)
    form = "as printed" if printed else "braid form"
    ops = checked_op(sp, x), checked_op(sp, x * y), checked_op(sp, y)
    return check_ybe_ops(*ops, max_degree=max_degree,
                         identity=f"Yang-Baxter equation for Rc^{{{sp}}} ({form})",
                         anchor="the Yang-Baxter equation takes another familiar form",
                         params={"st": str(sp), "max_degree": max_degree, "printed": printed},
                         printed=printed)


def denominator_audit(spec, max_degree: int) -> List[str]:
    """Every denominator factor of M_d must be a binomial 1 +- q^a z^b (up to units and monomials)."""
    problems = []
    for d in range(max_degree + 1):
        for row in build_M(spec, d):
            for v in row:
                if v.is_zero():
                    continue
                _, factors = v.den.factor()
                for f, _e in factors:
                    if len(f) > 2:
                        problems.append(f"M_{d}: denominator factor {f}")
    return problems


def matrix_text(M: Sequence[Sequence[RatFunc]]) -> List[List[str]]:
    return [[v.to_text() for v in row] for row in M]
