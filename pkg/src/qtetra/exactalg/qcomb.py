"""q-combinatorics: Pochhammer symbols, q-binomials, q-integers."""

from __future__ import annotations

from functools import lru_cache

from .ratfunc import RatFunc

q = RatFunc.var("q")


def qpoch(x, Q, m: int) -> RatFunc:
    """Finite product (x; Q)_m = prod_{j<m} (1 - x Q^j); m = 0 gives 1."""
    if m < 0:
        raise ValueError("qpoch needs m >= 0")
    return _qpoch(RatFunc.coerce(x), RatFunc.coerce(Q), m)


@lru_cache(maxsize=None)
def _qpoch(x: RatFunc, Q: RatFunc, m: int) -> RatFunc:
    if m == 0:
        return RatFunc(1)
    return _qpoch(x, Q, m - 1) * (1 - x * Q ** (m - 1))


def qfac(Q, m: int) -> RatFunc:
    """(Q; Q)_m."""
    Q = RatFunc.coerce(Q)
    return _qpoch(Q, Q, m)


def qbinom(m: int, n: int, Q) -> RatFunc:
    """Gaussian binomial (Q)_m / ((Q)_n (Q)_{m-n}); zero unless 0 <= n <= m."""
    if not 0 <= n <= m:
        return RatFunc(0)
    return _qbinom(m, n, RatFunc.coerce(Q))


@lru_cache(maxsize=None)
def _qbinom(m: int, n: int, Q: RatFunc) -> RatFunc:
    if n == 0 or n == m:
        return RatFunc(1)
    # Pascal recurrence keeps every intermediate a polynomial
    return _qbinom(m - 1, n, Q) + Q ** (m - n) * _qbinom(m - 1, n - 1, Q)


def qint(n: int, Q=q) -> RatFunc:
    """[n]_Q = (Q^n - Q^-n) / (Q - Q^-1)."""
    Q = RatFunc.coerce(Q)
    return _qint(n, Q)


@lru_cache(maxsize=None)
def _qint(n: int, Q: RatFunc) -> RatFunc:
    return (Q**n - Q ** (-n)) / (Q - Q ** (-1))


def qfactorial(n: int, Q=q) -> RatFunc:
    out = RatFunc(1)
    for j in range(1, n + 1):
        out = out * qint(j, Q)
    return out


def curly(x, Q=q) -> RatFunc:
    """{x} = (x - x^-1) / (Q - Q^-1)."""
    x, Q = RatFunc.coerce(x), RatFunc.coerce(Q)
    return (x - x.inverse()) / (Q - Q.inverse())


def qbinomial_series(b, Q, order: int):
    """Coefficients c_n, n <= order, of (bZ; Q)_inf / (Z; Q)_inf = sum_n (b; Q)_n / (Q; Q)_n Z^n."""
    b, Q = RatFunc.coerce(b), RatFunc.coerce(Q)
    return [qpoch(b, Q, n) / qfac(Q, n) for n in range(order + 1)]
