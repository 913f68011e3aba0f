"""Fock space bookkeeping: charge sectors, q-oscillators and sparse graded operators.

Basis tuples list occupation numbers leg by leg, leftmost leg first. A leg is
either a Fock leg ``"F"`` (levels 0, 1, 2, ...) or a two-dimensional leg
``"V"`` (levels 0, 1). Operators are given by local kernels that map one
input index tuple on their legs to a list of ``(output tuple, coefficient)``
pairs; products of kernels placed on legs are evaluated on sparse vectors.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from typing import Callable, Dict, Iterable, List, Mapping, Optional, Sequence, Tuple

from .exactalg import RatFunc, q, qfac

Index = Tuple[int, ...]
Kernel = Callable[[Index], Iterable[Tuple[Index, RatFunc]]]
SparseVec = Dict[Index, RatFunc]

FOCK = "F"
QUBIT = "V"


class SectorError(ValueError):
    """Raised when a constraint system does not bound the index tuples."""


@dataclass(frozen=True)
class Charge:
    """Linear charge ``sum(coeffs[k] * n[k])`` with nonnegative coefficients."""

    coeffs: Tuple[int, ...]

    def __post_init__(self):
        if any(c < 0 for c in self.coeffs):
            raise ValueError("charge coefficients must be nonnegative")

    def of(self, idx: Index) -> int:
        return sum(c * n for c, n in zip(self.coeffs, idx))


@dataclass(frozen=True)
class Sector:
    shape: Tuple[str, ...]
    charges: Tuple[Charge, ...]
    values: Tuple[int, ...]
    basis: Tuple[Index, ...]

    def __len__(self):
        return len(self.basis)

    def position(self) -> Dict[Index, int]:
        return {b: k for k, b in enumerate(self.basis)}

    def descriptor(self) -> dict:
        return {
            "shape": "".join(self.shape),
            "charges": [list(c.coeffs) for c in self.charges],
            "values": list(self.values),
            "size": len(self.basis),
        }


def enumerate_sector(shape: Sequence[str], charges: Sequence[Charge], values: Sequence[int],
                     level_cap: Optional[int] = None) -> Sector:
    """All index tuples of ``shape`` with ``charge_k(n) == values[k]``, sorted.

    Every Fock leg must carry a positive coefficient in some charge (or a
    ``level_cap`` must be given), otherwise the set is infinite.
    """
    shape = tuple(shape)
    charges = tuple(charges)
    values = tuple(values)
    if len(charges) != len(values):
        raise ValueError("one value per charge required")
    for c in charges:
        if len(c.coeffs) != len(shape):
            raise ValueError("charge length does not match the shape")
    bounds = []
    for leg, kind in enumerate(shape):
        if kind == QUBIT:
            bounds.append(1)
            continue
        cover = [v // c.coeffs[leg] for c, v in zip(charges, values) if c.coeffs[leg] > 0]
        if level_cap is not None:
            cover.append(level_cap)
        if not cover:
            raise SectorError(f"Fock leg {leg} is unbounded by charges {[c.coeffs for c in charges]}")
        bounds.append(min(cover))
    if any(v < 0 for v in values):
        return Sector(shape, charges, values, ())

    out: List[Index] = []
    n = len(shape)
    partial = [0] * len(charges)

    def rec(leg: int, prefix: List[int]):
        if leg == n:
            if all(p == v for p, v in zip(partial, values)):
                out.append(tuple(prefix))
            return
        for m in range(bounds[leg] + 1):
            ok = True
            for k, c in enumerate(charges):
                partial[k] += c.coeffs[leg] * m
                if partial[k] > values[k]:
                    ok = False
            if ok:
                prefix.append(m)
                rec(leg + 1, prefix)
                prefix.pop()
            for k, c in enumerate(charges):
                partial[k] -= c.coeffs[leg] * m
            if not ok:
                break

    rec(0, [])
    return Sector(shape, charges, values, tuple(sorted(out)))


def sectors_up_to(shape: Sequence[str], charges: Sequence[Charge], max_value: int) -> List[Sector]:
    """Nonempty sectors with every charge value in ``0..max_value``."""
    out = []

    def rec(vals: List[int]):
        if len(vals) == len(charges):
            s = enumerate_sector(shape, charges, vals)
            if s.basis:
                out.append(s)
            return
        for v in range(max_value + 1):
            rec(vals + [v])

    rec([])
    return out


# q-oscillators ---------------------------------------------------------------


def qosc_apply(which: str, m: int) -> List[Tuple[int, RatFunc]]:
    """Image of |m> under a+, a-, k or h as a list of ``(level, coeff)``."""
    if m < 0:
        raise ValueError("Fock level must be nonnegative")
    if which == "a+":
        return [(m + 1, RatFunc(1))]
    if which == "a-":
        return [] if m == 0 else [(m - 1, 1 - q ** (2 * m))]
    if which == "k":
        return [(m, q**m)]
    if which == "h":
        return [] if m == 0 else [(m, RatFunc(m))]
    raise ValueError(f"unknown q-oscillator {which!r}")


def pairing(m: int, n: int) -> RatFunc:
    """<m|n> = (q^2)_m delta_{m,n}."""
    return qfac(q**2, m) if m == n else RatFunc(0)


# sparse vectors and local operators -------------------------------------------


def vec_add(acc: SparseVec, idx: Index, c: RatFunc) -> None:
    prev = acc.get(idx)
    s = c if prev is None else prev + c
    if s.is_zero():
        acc.pop(idx, None)
    else:
        acc[idx] = s


def vec_scale(v: SparseVec, c: RatFunc) -> SparseVec:
    if c.is_zero():
        return {}
    return {k: x * c for k, x in v.items()}


def vec_sub(a: SparseVec, b: SparseVec) -> SparseVec:
    out = dict(a)
    for k, c in b.items():
        vec_add(out, k, -c)
    return out


@dataclass(frozen=True)
class LocalOp:
    """An operator on ``arity`` consecutive legs given by its kernel.

    ``conserved`` lists charges (on the local legs) that the kernel must
    preserve; ``audit`` checks them.
    """

    name: str
    shape: Tuple[str, ...]
    kernel: Kernel
    conserved: Tuple[Charge, ...] = ()

    @property
    def arity(self) -> int:
        return len(self.shape)

    def on(self, *legs: int) -> "Placed":
        if len(legs) != self.arity:
            raise ValueError(f"{self.name} acts on {self.arity} legs, got {legs}")
        return Placed(self, tuple(legs))

    def audit(self, inputs: Iterable[Index]) -> List[Tuple[Index, Index]]:
        bad = []
        for idx in inputs:
            for out, c in self.kernel(idx):
                if not c.is_zero() and any(ch.of(out) != ch.of(idx) for ch in self.conserved):
                    bad.append((idx, out))
        return bad


@dataclass(frozen=True)
class Placed:
    op: LocalOp
    legs: Tuple[int, ...]


def apply_placed(p: Placed, v: SparseVec) -> SparseVec:
    out: SparseVec = {}
    legs = p.legs
    kernel = p.op.kernel
    for idx, c in v.items():
        local = tuple(idx[l] for l in legs)
        for loc_out, w in kernel(local):
            new = list(idx)
            for l, m in zip(legs, loc_out):
                new[l] = m
            vec_add(out, tuple(new), c * w)
    return out


def apply_product(factors: Sequence[Placed], v: SparseVec) -> SparseVec:
    """Apply the operator product ``factors[0] * factors[1] * ...``; the rightmost factor acts first."""
    for p in reversed(factors):
        v = apply_placed(p, v)
        if not v:
            break
    return v


def basis_vec(idx: Index) -> SparseVec:
    return {tuple(idx): RatFunc(1)}


def identity_op(shape: Sequence[str]) -> LocalOp:
    return LocalOp("Id", tuple(shape), lambda idx: [(idx, RatFunc(1))])


def swap_op(kind: str = FOCK) -> LocalOp:
    return LocalOp("P", (kind, kind), lambda idx: [((idx[1], idx[0]), RatFunc(1))])


# graded operators ---------------------------------------------------------------

Matrix = List[List[RatFunc]]


@dataclass
class Block:
    rows: Tuple[Index, ...]
    cols: Tuple[Index, ...]
    entries: Matrix

    def entry(self, out: Index, inp: Index) -> RatFunc:
        try:
            return self.entries[self.rows.index(out)][self.cols.index(inp)]
        except ValueError:
            return RatFunc(0)


@dataclass
class GradedOp:
    """Blocks keyed by ``(in_values, out_values)`` of the declared charges; absent blocks are zero."""

    name: str
    shape: Tuple[str, ...]
    charges: Tuple[Charge, ...]
    blocks: Dict[Tuple[Tuple[int, ...], Tuple[int, ...]], Block] = field(default_factory=dict)
    params: Mapping[str, str] = field(default_factory=dict)

    @classmethod
    def from_product(cls, name: str, factors: Sequence[Placed], sectors: Sequence[Sector],
                     params: Optional[Mapping[str, str]] = None) -> "GradedOp":
        if not sectors:
            raise ValueError("no sectors given")
        shape, charges = sectors[0].shape, sectors[0].charges
        op = cls(name, shape, charges, {}, dict(params or {}))
        for sec in sectors:
            columns = [apply_product(factors, basis_vec(b)) for b in sec.basis]
            op._store(sec, columns)
        return op

    def _store(self, sec: Sector, columns: List[SparseVec]) -> None:
        by_out: Dict[Tuple[int, ...], Dict[Index, None]] = {}
        for col in columns:
            for idx in col:
                key = tuple(ch.of(idx) for ch in self.charges)
                by_out.setdefault(key, {})[idx] = None
        for key, rows in by_out.items():
            rows_t = tuple(sorted(rows))
            pos = {r: k for k, r in enumerate(rows_t)}
            mat = [[RatFunc(0)] * len(sec.basis) for _ in rows_t]
            for j, col in enumerate(columns):
                for idx, c in col.items():
                    if idx in pos:
                        mat[pos[idx]][j] = c
            self.blocks[(sec.values, key)] = Block(rows_t, sec.basis, mat)

    def conservation_audit(self) -> List[Tuple]:
        """Entries violating conservation (nonzero off-diagonal blocks); empty when clean."""
        bad = []
        for (inv, outv), blk in self.blocks.items():
            if inv != outv and any(not c.is_zero() for row in blk.entries for c in row):
                bad.append((inv, outv))
        return bad

    def apply(self, v: SparseVec) -> SparseVec:
        out: SparseVec = {}
        for idx, c in v.items():
            key = tuple(ch.of(idx) for ch in self.charges)
            for (inv, _), blk in self.blocks.items():
                if inv != key or idx not in blk.cols:
                    continue
                j = blk.cols.index(idx)
                for i, r in enumerate(blk.rows):
                    e = blk.entries[i][j]
                    if not e.is_zero():
                        vec_add(out, r, e * c)
        return out

    def as_local(self) -> LocalOp:
        return LocalOp(self.name, self.shape, lambda idx: list(self.apply(basis_vec(idx)).items()), self.charges)

    def block_json(self, in_values: Tuple[int, ...], out_values: Optional[Tuple[int, ...]] = None) -> str:
        out_values = in_values if out_values is None else out_values
        blk = self.blocks[(tuple(in_values), tuple(out_values))]
        payload = {
            "operator": self.name,
            "params": dict(self.params),
            "shape": "".join(self.shape),
            "charges": [list(c.coeffs) for c in self.charges],
            "in_values": list(in_values),
            "out_values": list(out_values),
            "rows": [list(r) for r in blk.rows],
            "cols": [list(c) for c in blk.cols],
            "entries": [[e.to_text() for e in row] for row in blk.entries],
        }
        return json.dumps(payload, sort_keys=True)


def compose(ops: Sequence[GradedOp], sectors: Sequence[Sector], name: str = "") -> GradedOp:
    """Product ``ops[0] * ops[1] * ...`` (rightmost acts first) restricted to ``sectors``."""
    factors = [o.as_local().on(*range(len(o.shape))) for o in ops]
    return GradedOp.from_product(name or "*".join(o.name for o in ops), factors, sectors)
