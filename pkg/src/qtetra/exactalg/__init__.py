"""Exact arithmetic over Q(i)(q, z, ...)."""

from .gaussrat import GaussRat, I
from .ledger import LedgerError, PochEntry, PochLedger, ledger_reduce, ratio
from .lpoly import VARS, LPoly, ParseError
from .qcomb import curly, qbinom, qbinomial_series, qfac, qfactorial, qint, qpoch
from .ratfunc import STATS, PoleError, RatFunc, equal, is_zero

q = RatFunc.var("q")
z = RatFunc.var("z")
x = RatFunc.var("x")
y = RatFunc.var("y")
w = RatFunc.var("w")
alpha = RatFunc.var("a")
beta = RatFunc.var("b")
ONE = RatFunc(1)
ZERO = RatFunc(0)
IM = RatFunc(I)


def subst(a: RatFunc, mapping) -> RatFunc:
    return RatFunc.coerce(a).subst(mapping)


__all__ = [
    "GaussRat", "I", "IM", "LPoly", "ParseError", "RatFunc", "PoleError", "STATS",
    "PochEntry", "PochLedger", "LedgerError", "ledger_reduce", "ratio",
    "qpoch", "qbinom", "qfac", "qint", "qfactorial", "curly", "qbinomial_series",
    "equal", "is_zero", "subst", "VARS",
    "q", "z", "x", "y", "w", "alpha", "beta", "ONE", "ZERO",
]
