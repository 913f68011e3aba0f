"""Bookkeeping of infinite q-Pochhammer products and their telescoping.

A ledger records a formal product of factors ``(x; q^k)_inf ** (+-1)`` with
monomial bases ``x``. Whenever numerator and denominator bases fall into the
same coset ``x * q^(k Z)`` the infinite tails cancel and the quotient is a
finite product; a ledger whose entries all pair off this way reduces to an
exact rational function.
"""

from __future__ import annotations

from collections import defaultdict
from dataclasses import dataclass
from typing import Iterable, List, Tuple

from .gaussrat import GaussRat
from .lpoly import VAR_INDEX, Exp, LPoly
from .qcomb import qpoch
from .ratfunc import RatFunc

_QI = VAR_INDEX["q"]


class LedgerError(ValueError):
    """Raised for a ledger with an unpaired coset."""


@dataclass(frozen=True)
class PochEntry:
    coeff: GaussRat
    exps: Exp
    modulus: int
    power: int

    def __post_init__(self):
        if self.modulus <= 0:
            raise ValueError("modulus exponent must be positive")
        if self.power not in (1, -1):
            raise ValueError("power must be +1 or -1")

    @classmethod
    def of(cls, base, modulus: int, power: int = 1) -> "PochEntry":
        mono = RatFunc.coerce(base).as_monomial()
        if mono is None:
            raise ValueError(f"Pochhammer base {base} is not a monomial")
        return cls(mono[0], mono[1], modulus, power)

    def base(self) -> RatFunc:
        return RatFunc(LPoly({self.exps: self.coeff}))

    def coset(self) -> Tuple:
        e = list(self.exps)
        r = e[_QI] % self.modulus
        e[_QI] = 0
        return (self.coeff, tuple(e), r, self.modulus)

    def __str__(self):
        p = "" if self.power == 1 else "^-1"
        return f"({self.base()}; q^{self.modulus})_inf{p}"


class PochLedger:
    def __init__(self, entries: Iterable[PochEntry] = ()):
        self.entries: Tuple[PochEntry, ...] = tuple(entries)

    def __or__(self, other: "PochLedger") -> "PochLedger":
        return PochLedger(self.entries + other.entries)

    def inverted(self) -> "PochLedger":
        return PochLedger(PochEntry(e.coeff, e.exps, e.modulus, -e.power) for e in self.entries)

    def __len__(self):
        return len(self.entries)

    def reduce(self) -> RatFunc:
        groups = defaultdict(lambda: ([], []))
        for e in self.entries:
            groups[e.coset()][0 if e.power == 1 else 1].append(e)
        out = RatFunc(1)
        for key, (nums, dens) in groups.items():
            if len(nums) != len(dens):
                extra = nums[len(dens):] if len(nums) > len(dens) else dens[len(nums):]
                raise LedgerError(f"unpaired Pochhammer factor {extra[0]}")
            nums = sorted(nums, key=lambda e: e.exps[_QI])
            dens = sorted(dens, key=lambda e: e.exps[_QI])
            k = key[3]
            Q = RatFunc.monomial(1, q=k)
            for n, d in zip(nums, dens):
                steps = (d.exps[_QI] - n.exps[_QI]) // k
                if steps >= 0:
                    out = out * qpoch(n.base(), Q, steps)
                else:
                    out = out / qpoch(d.base(), Q, -steps)
        return out

    def __str__(self):
        return " * ".join(str(e) for e in self.entries) or "1"


def ratio(num_base, den_base, modulus: int) -> PochLedger:
    """Ledger for (num_base; q^k)_inf / (den_base; q^k)_inf."""
    return PochLedger([PochEntry.of(num_base, modulus, 1), PochEntry.of(den_base, modulus, -1)])


def ledger_reduce(ledger: PochLedger) -> RatFunc:
    return ledger.reduce()


def entries_from(pairs: List[Tuple[object, int, int]]) -> PochLedger:
    return PochLedger(PochEntry.of(b, k, p) for b, k, p in pairs)
