"""Exact rational functions over Q(i) in the package variables.

A value is stored as ``(re + i*im) / den`` with ``re``, ``im``, ``den`` integer
polynomials (flint ``fmpz_mpoly``), ``den`` real with positive leading
coefficient and ``gcd(re, im, den) == 1`` over Z. Two values are equal iff
their stored triples coincide.
"""

from __future__ import annotations

import random
import threading
from fractions import Fraction
from typing import Dict, List, Mapping, Optional

from .gaussrat import GaussRat
from .lpoly import CTX, NVARS, VAR_INDEX, VARS, ZERO_EXP, Exp, LPoly, ParseError

_ZERO = CTX.from_dict({})
_ONE = CTX.from_dict({ZERO_EXP: 1})


class PoleError(ZeroDivisionError):
    """Raised when a substitution or evaluation lands on a pole."""


class ArithStats:
    """Counters audited by the harness (exact runs must show no randomized calls)."""

    def __init__(self):
        self._lock = threading.Lock()
        self.randomized_calls = 0
        self.exact_equality_calls = 0

    def bump(self, name: str, k: int = 1) -> None:
        with self._lock:
            setattr(self, name, getattr(self, name) + k)

    def snapshot(self) -> Dict[str, int]:
        return {"randomized_calls": self.randomized_calls, "exact_equality_calls": self.exact_equality_calls}

    def reset(self) -> None:
        with self._lock:
            self.randomized_calls = 0
            self.exact_equality_calls = 0


STATS = ArithStats()


def _poly_const(c: int):
    return CTX.from_dict({ZERO_EXP: c}) if c else _ZERO


def _mono_poly(e: Exp):
    return CTX.from_dict({e: 1})


class RatFunc:
    __slots__ = ("re", "im", "den", "_hash")

    def __init__(self, value=0):
        if isinstance(value, RatFunc):
            re, im, den = value.re, value.im, value.den
        elif isinstance(value, LPoly):
            r = RatFunc._from_lpoly(value)
            re, im, den = r.re, r.im, r.den
        elif isinstance(value, str):
            r = RatFunc.from_text(value)
            re, im, den = r.re, r.im, r.den
        else:
            g = GaussRat.coerce(value)
            d = g.re.denominator * g.im.denominator // _gcd(g.re.denominator, g.im.denominator)
            r = RatFunc._normalized(
                _poly_const(int(g.re * d)), _poly_const(int(g.im * d)), _poly_const(d)
            )
            re, im, den = r.re, r.im, r.den
        self.re, self.im, self.den = re, im, den
        self._hash = None

    # construction -------------------------------------------------------

    @classmethod
    def _raw(cls, re, im, den) -> "RatFunc":
        obj = cls.__new__(cls)
        obj.re, obj.im, obj.den = re, im, den
        obj._hash = None
        return obj

    @classmethod
    def _normalized(cls, re, im, den) -> "RatFunc":
        if den.is_zero():
            raise ZeroDivisionError("RatFunc with zero denominator")
        if re.is_zero() and im.is_zero():
            return cls._raw(_ZERO, _ZERO, _ONE)
        g = den.gcd(re)
        if not im.is_zero():
            g = g.gcd(im)
        if not g.is_one():
            re, im, den = re / g, im / g, den / g
        if den.leading_coefficient() < 0:
            re, im, den = -re, -im, -den
        return cls._raw(re, im, den)

    @classmethod
    def var(cls, name: str) -> "RatFunc":
        e = [0] * NVARS
        e[VAR_INDEX[name]] = 1
        return cls._raw(_mono_poly(tuple(e)), _ZERO, _ONE)

    @classmethod
    def monomial(cls, coeff=1, **powers: int) -> "RatFunc":
        return cls(LPoly.monomial(coeff, **powers))

    @classmethod
    def _from_lpoly(cls, p: LPoly) -> "RatFunc":
        re, im, shift, scale = p.to_flint()
        pos = tuple(max(s, 0) for s in shift)
        neg = tuple(max(-s, 0) for s in shift)
        if any(pos):
            m = _mono_poly(pos)
            re, im = re * m, im * m
        den = _poly_const(scale)
        if any(neg):
            den = den * _mono_poly(neg)
        return cls._normalized(re, im, den)

    @staticmethod
    def coerce(value) -> "RatFunc":
        return value if isinstance(value, RatFunc) else RatFunc(value)

    # predicates ---------------------------------------------------------

    def is_zero(self) -> bool:
        return self.re.is_zero() and self.im.is_zero()

    def is_one(self) -> bool:
        return self.im.is_zero() and self.den.is_one() and self.re.is_one()

    def is_real(self) -> bool:
        return self.im.is_zero()

    def is_polynomial(self) -> bool:
        return self.den.is_one()

    def __bool__(self):
        return not self.is_zero()

    def __eq__(self, other):
        if not isinstance(other, RatFunc):
            try:
                other = RatFunc(other)
            except TypeError:
                return NotImplemented
        return self.den == other.den and self.re == other.re and self.im == other.im

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((str(self.re), str(self.im), str(self.den)))
        return self._hash

    # arithmetic ---------------------------------------------------------

    def __neg__(self):
        return RatFunc._raw(-self.re, -self.im, self.den)

    def __add__(self, other):
        if not isinstance(other, RatFunc):
            try:
                other = RatFunc(other)
            except TypeError:
                return NotImplemented
        d1, d2 = self.den, other.den
        if d1.is_one() and d2.is_one():
            re, im = self.re + other.re, self.im + other.im
            return RatFunc._raw(re, im, _ONE)
        if d1 == d2:
            return RatFunc._normalized(self.re + other.re, self.im + other.im, d1)
        g = d1.gcd(d2)
        if g.is_one():
            re = self.re * d2 + other.re * d1
            im = self.im * d2 + other.im * d1
            if self.im.is_zero() and other.im.is_zero():
                return RatFunc._raw(re, im, d1 * d2) if not re.is_zero() else RatFunc(0)
            return RatFunc._normalized(re, im, d1 * d2)
        e1, e2 = d1 / g, d2 / g
        re = self.re * e2 + other.re * e1
        im = self.im * e2 + other.im * e1
        return RatFunc._normalized(re, im, d1 * e2)

    __radd__ = __add__

    def __sub__(self, other):
        if not isinstance(other, RatFunc):
            try:
                other = RatFunc(other)
            except TypeError:
                return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return RatFunc(other) - self

    def __mul__(self, other):
        if not isinstance(other, RatFunc):
            if isinstance(other, int):
                if other == 0:
                    return RatFunc(0)
                return RatFunc._normalized(self.re * other, self.im * other, self.den)
            try:
                other = RatFunc(other)
            except TypeError:
                return NotImplemented
        if self.im.is_zero() and other.im.is_zero():
            a, b = self.re, other.re
            if a.is_zero() or b.is_zero():
                return RatFunc(0)
            d1, d2 = self.den, other.den
            if d1.is_one() and d2.is_one():
                return RatFunc._raw(a * b, _ZERO, _ONE)
            g1 = a.gcd(d2)
            g2 = b.gcd(d1)
            if not g1.is_one():
                a, d2 = a / g1, d2 / g1
            if not g2.is_one():
                b, d1 = b / g2, d1 / g2
            den = d1 * d2
            num = a * b
            if den.leading_coefficient() < 0:
                num, den = -num, -den
            return RatFunc._raw(num, _ZERO, den)
        re = self.re * other.re - self.im * other.im
        im = self.re * other.im + self.im * other.re
        return RatFunc._normalized(re, im, self.den * other.den)

    __rmul__ = __mul__

    def inverse(self) -> "RatFunc":
        if self.is_zero():
            raise ZeroDivisionError("RatFunc division by zero")
        if self.im.is_zero():
            num, den = self.den, self.re
            if den.leading_coefficient() < 0:
                num, den = -num, -den
            return RatFunc._raw(num, _ZERO, den)
        n = self.re * self.re + self.im * self.im
        return RatFunc._normalized(self.den * self.re, -(self.den * self.im), n)

    def __truediv__(self, other):
        if not isinstance(other, RatFunc):
            try:
                other = RatFunc(other)
            except TypeError:
                return NotImplemented
        if other.is_zero():
            raise ZeroDivisionError("RatFunc division by zero")
        return self * other.inverse()

    def __rtruediv__(self, other):
        return RatFunc(other) / self

    def __pow__(self, k: int):
        if not isinstance(k, int):
            return NotImplemented
        if k < 0:
            return self.inverse() ** (-k)
        if self.im.is_zero():
            return RatFunc._raw(self.re**k, _ZERO, self.den**k)
        result = RatFunc(1)
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def conjugate(self) -> "RatFunc":
        return RatFunc._raw(self.re, -self.im, self.den)

    # canonical parts ----------------------------------------------------

    def _den_parts(self):
        lc = int(self.den.leading_coefficient())
        mexp = _min_exps(self.den)
        core = self.den / _mono_poly(mexp) if any(mexp) else self.den
        return lc, mexp, core

    @property
    def num(self) -> LPoly:
        """Laurent numerator after the denominator is made monic and monomial-free."""
        lc, mexp, _ = self._den_parts()
        return LPoly.from_flint(self.re, self.im, tuple(-m for m in mexp), lc)

    @property
    def denom(self) -> LPoly:
        lc, _, core = self._den_parts()
        return LPoly.from_flint(core, None, ZERO_EXP, lc)

    def to_text(self) -> str:
        num, den = self.num, self.denom
        if den == LPoly({ZERO_EXP: 1}):
            return num.to_text()
        return f"({num.to_text()}) / ({den.to_text()})"

    @classmethod
    def from_text(cls, text: str) -> "RatFunc":
        text = text.strip()
        if text.startswith("(") and ") / (" in text and text.endswith(")"):
            a, b = text[1:-1].split(") / (", 1)
            return cls._from_lpoly(LPoly.from_text(a)) / cls._from_lpoly(LPoly.from_text(b))
        if "(" in text or ")" in text:
            raise ParseError(f"malformed rational function text {text!r}")
        return cls._from_lpoly(LPoly.from_text(text))

    def to_latex(self) -> str:
        num, den = self.num, self.denom
        if den == LPoly({ZERO_EXP: 1}):
            return num.to_latex()
        return rf"\frac{{{num.to_latex()}}}{{{den.to_latex()}}}"

    def __str__(self):
        return self.to_text()

    def __repr__(self):
        return f"RatFunc({self.to_text()!r})"

    def __reduce__(self):
        return (RatFunc.from_text, (self.to_text(),))

    # structure ----------------------------------------------------------

    def variables(self) -> set:
        used = set()
        for p in (self.re, self.im, self.den):
            for k, d in enumerate(p.degrees()):
                if d:
                    used.add(VARS[k])
        # Laurent monomials in the denominator show up through den degrees
        return used

    def total_degree(self) -> int:
        return max(int(p.total_degree()) if not p.is_zero() else 0 for p in (self.re, self.im, self.den))

    def as_monomial(self):
        """Return ``(coeff, exponents)`` if self is ``coeff * monomial`` (Laurent), else None."""
        if len(self.den) != 1 or self.is_zero():
            return None
        terms = {}
        for p, imag in ((self.re, False), (self.im, True)):
            for e, c in _items(p):
                terms.setdefault(e, [0, 0])[1 if imag else 0] = int(c)
        if len(terms) != 1:
            return None
        (e, (r, i)), = terms.items()
        (de, dc), = _items(self.den)
        dc = int(dc)
        return GaussRat(Fraction(r, dc), Fraction(i, dc)), tuple(a - b for a, b in zip(e, de))

    # substitution -------------------------------------------------------

    def subst(self, mapping: Mapping[str, object]) -> "RatFunc":
        """Ring-homomorphic image under ``var -> value`` for the given variables."""
        images = {}
        general = {}
        for name, value in mapping.items():
            k = VAR_INDEX[name]
            value = RatFunc.coerce(value)
            mono = value.as_monomial()
            if mono is not None:
                images[k] = mono
            else:
                general[k] = value
        if general:
            return self._subst_general({**{k: RatFunc._mono_value(*v) for k, v in images.items()}, **general})
        if not images:
            return self
        den = _subst_poly_monomial(self.den, images)
        if den.is_zero():
            raise PoleError(f"substitution {dict(mapping)} annihilates the denominator")
        num = _subst_poly_monomial(self.re, images)
        if not self.im.is_zero():
            num = num + RatFunc(GaussRat(0, 1)) * _subst_poly_monomial(self.im, images)
        return num / den

    @staticmethod
    def _mono_value(c: GaussRat, e: Exp) -> "RatFunc":
        return RatFunc(LPoly({e: c}))

    def _subst_general(self, images: Dict[int, "RatFunc"]) -> "RatFunc":
        den = _subst_poly_general(self.den, images)
        if den.is_zero():
            raise PoleError("substitution annihilates the denominator")
        num = _subst_poly_general(self.re, images)
        if not self.im.is_zero():
            num = num + RatFunc(GaussRat(0, 1)) * _subst_poly_general(self.im, images)
        return num / den

    def evaluate(self, point: Mapping[str, object]) -> GaussRat:
        """Exact value at a point of Q(i)^k; every used variable must be assigned."""
        vals = {VAR_INDEX[k]: GaussRat.coerce(v) for k, v in point.items()}
        d = _eval_poly(self.den, vals)
        if not d:
            raise PoleError(f"denominator vanishes at {dict(point)}")
        n = _eval_poly(self.re, vals)
        if not self.im.is_zero():
            n = n + GaussRat(0, 1) * _eval_poly(self.im, vals)
        return n / d

    # series in one variable --------------------------------------------

    def split_by(self, name: str):
        """Return ``(num_parts, den_parts)``: dicts exponent -> RatFunc free of ``name``."""
        k = VAR_INDEX[name]
        return _split_complex(self.re, self.im, k), _split_complex(self.den, _ZERO, k)

    def series(self, name: str, order: int) -> List["RatFunc"]:
        """Coefficients of ``name**0 .. name**order`` of the power-series expansion at 0."""
        nparts, dparts = self.split_by(name)
        if not nparts:
            return [RatFunc(0)] * (order + 1)
        vn, vd = min(nparts), min(dparts)
        val = vn - vd
        if val < 0:
            raise ValueError(f"{name}-series of {self} has a pole at {name} = 0")
        d0 = dparts[vd]
        inv_d0 = d0.inverse()
        out = [RatFunc(0)] * (order + 1)
        coeffs: List[RatFunc] = []
        for n in range(order + 1 - val):
            acc = nparts.get(vn + n, RatFunc(0))
            for j in range(1, n + 1):
                dj = dparts.get(vd + j)
                if dj is not None and not coeffs[n - j].is_zero():
                    acc = acc - dj * coeffs[n - j]
            coeffs.append(acc * inv_d0)
        for n, c in enumerate(coeffs):
            out[n + val] = c
        return out

    def truncate(self, bounds: Mapping[str, int]) -> "RatFunc":
        """Drop numerator terms whose exponent in a bounded variable exceeds its bound.

        Only meaningful when the denominator is free of the bounded variables.
        """
        ks = {VAR_INDEX[n]: b for n, b in bounds.items()}
        dd = self.den.degrees()
        if any(dd[k] for k in ks):
            raise ValueError("truncate requires a denominator free of the bounded variables")

        def cut(p):
            items = {e: c for e, c in _items(p) if all(e[k] <= b for k, b in ks.items())}
            return CTX.from_dict(items)

        return RatFunc._normalized(cut(self.re), cut(self.im), self.den)


# helpers -----------------------------------------------------------------


def _gcd(a: int, b: int) -> int:
    from math import gcd

    return gcd(a, b)


def _items(p):
    return [(tuple(int(v) for v in e), int(c)) for e, c in p.to_dict().items()]


def _min_exps(p) -> Exp:
    d = [e for e, _ in _items(p)]
    return tuple(min(e[k] for e in d) for k in range(NVARS))


def _subst_poly_monomial(p, images) -> RatFunc:
    if p.is_zero():
        return RatFunc(0)
    acc: Dict[Exp, GaussRat] = {}
    powcache: Dict[tuple, GaussRat] = {}
    for e, c in _items(p):
        new = list(e)
        factor = None
        for k, (cc, img) in images.items():
            pw = e[k]
            if not pw:
                continue
            new[k] -= pw
            for j in range(NVARS):
                if img[j]:
                    new[j] += pw * img[j]
            if cc != 1:
                key = (k, pw)
                f = powcache.get(key)
                if f is None:
                    f = powcache[key] = cc**pw
                factor = f if factor is None else factor * f
        key = tuple(new)
        val = GaussRat(int(c)) if factor is None else factor * int(c)
        acc[key] = acc[key] + val if key in acc else val
    return RatFunc(LPoly(acc))


def _subst_poly_general(p, images: Dict[int, RatFunc]) -> RatFunc:
    total = RatFunc(0)
    powcache: Dict[tuple, RatFunc] = {}
    for e, c in _items(p):
        coeff_exp = list(e)
        term = RatFunc(int(c))
        for k, img in images.items():
            pw = e[k]
            if pw:
                coeff_exp[k] = 0
                key = (k, pw)
                f = powcache.get(key)
                if f is None:
                    f = powcache[key] = img**pw
                term = term * f
        term = term * RatFunc._raw(_mono_poly(tuple(coeff_exp)), _ZERO, _ONE)
        total = total + term
    return total


def _eval_poly(p, vals: Dict[int, GaussRat]) -> GaussRat:
    total = GaussRat(0)
    powcache: Dict[tuple, GaussRat] = {}
    for e, c in _items(p):
        term = GaussRat(int(c))
        for k, pw in enumerate(e):
            if pw:
                if k not in vals:
                    raise ValueError(f"variable {VARS[k]} has no value")
                key = (k, pw)
                f = powcache.get(key)
                if f is None:
                    f = powcache[key] = vals[k] ** pw
                term = term * f
        total = total + term
    return total


def _split_complex(re, im, k: int) -> Dict[int, RatFunc]:
    parts: Dict[int, list] = {}
    for poly, slot in ((re, 0), (im, 1)):
        for e, c in _items(poly):
            ee = list(e)
            pw = ee[k]
            ee[k] = 0
            parts.setdefault(pw, [{}, {}])[slot][tuple(ee)] = c
    out = {}
    for pw, (rd, idd) in parts.items():
        out[pw] = RatFunc._normalized(CTX.from_dict(rd), CTX.from_dict(idd), _ONE)
    return out


# equality modes --------------------------------------------------------------


def _sample_point(rng: random.Random, names, size: int) -> Dict[str, GaussRat]:
    # Gaussian integers with both parts uniform in [0, side) give a set of size side**2 >= size
    side = max(2, int(size**0.5) + 1)
    return {n: GaussRat(rng.randrange(side), rng.randrange(side)) for n in names}


def is_zero(a: RatFunc, mode: str = "exact", rng: Optional[random.Random] = None, bound_bits: int = 40) -> bool:
    """Decide ``a == 0``.

    ``exact`` inspects the canonical numerator. ``randomized`` evaluates at a
    random point drawn from a set of size ``S = D * 2**bound_bits`` (``D`` the
    total degree), so a nonzero input passes with probability at most
    ``2**-bound_bits``; points hitting a pole are redrawn.
    """
    if mode == "exact":
        STATS.bump("exact_equality_calls")
        return a.is_zero()
    if mode != "randomized":
        raise ValueError(f"unknown equality mode {mode!r}")
    STATS.bump("randomized_calls")
    rng = rng or random.Random(0)
    names = sorted(a.variables())
    if not names:
        return a.is_zero()
    size = max(1, a.total_degree()) * (1 << bound_bits)
    while True:
        pt = _sample_point(rng, names, size)
        try:
            return not a.evaluate(pt)
        except PoleError:
            continue


def equal(a, b, mode: str = "exact", rng: Optional[random.Random] = None) -> bool:
    a, b = RatFunc.coerce(a), RatFunc.coerce(b)
    if mode == "exact":
        STATS.bump("exact_equality_calls")
        return a == b
    if mode != "randomized":
        raise ValueError(f"unknown equality mode {mode!r}")
    STATS.bump("randomized_calls")
    rng = rng or random.Random(0)
    names = sorted(a.variables() | b.variables())
    if not names:
        return a == b
    size = max(1, a.total_degree() + b.total_degree()) * (1 << 40)
    while True:
        pt = _sample_point(rng, names, size)
        try:
            return a.evaluate(pt) == b.evaluate(pt)
        except PoleError:
            continue
