"""Laurent polynomials over Q(i) and their canonical text form.

The variable set is fixed for the whole package: ``q`` and the spectral
parameter ``z`` are the working variables; ``x``, ``y`` carry a second pair of
spectral parameters, ``w`` is the square-root relabelling of ``z`` and
``a``, ``b`` stand for generic module parameters.
"""

from __future__ import annotations

import re
from fractions import Fraction
from typing import Dict, Iterable, Mapping, Tuple

import flint

from .gaussrat import GaussRat

VARS: Tuple[str, ...] = ("q", "z", "x", "y", "w", "a", "b")
NVARS = len(VARS)
VAR_INDEX = {name: k for k, name in enumerate(VARS)}
CTX = flint.fmpz_mpoly_ctx.get(VARS, "lex")
ZERO_EXP = (0,) * NVARS

Exp = Tuple[int, ...]


class ParseError(ValueError):
    pass


def exp_of(**powers: int) -> Exp:
    e = [0] * NVARS
    for name, p in powers.items():
        e[VAR_INDEX[name]] = p
    return tuple(e)


class LPoly:
    """Finite sum of ``c * q^a * z^b * ...`` with Gaussian rational ``c``.

    Exponents may be negative. Zero coefficients are never stored and terms
    are kept in ascending lexicographic order of their exponent tuples.
    """

    __slots__ = ("_terms",)

    def __init__(self, terms: Mapping[Exp, object] | Iterable[Tuple[Exp, object]] = ()):
        items = terms.items() if isinstance(terms, Mapping) else terms
        acc: Dict[Exp, GaussRat] = {}
        for e, c in items:
            e = tuple(e)
            if len(e) != NVARS:
                raise ValueError(f"exponent tuple must have length {NVARS}")
            c = GaussRat.coerce(c)
            acc[e] = acc.get(e, GaussRat(0)) + c
        self._terms = tuple(sorted((e, c) for e, c in acc.items() if c))

    @classmethod
    def monomial(cls, coeff=1, **powers: int) -> "LPoly":
        return cls({exp_of(**powers): coeff})

    @property
    def terms(self) -> Tuple[Tuple[Exp, GaussRat], ...]:
        return self._terms

    def __iter__(self):
        return iter(self._terms)

    def __len__(self):
        return len(self._terms)

    def is_zero(self) -> bool:
        return not self._terms

    def is_monomial(self) -> bool:
        return len(self._terms) == 1

    def __eq__(self, other):
        if not isinstance(other, LPoly):
            return NotImplemented
        return self._terms == other._terms

    def __hash__(self):
        return hash(self._terms)

    def __add__(self, other: "LPoly") -> "LPoly":
        return LPoly(list(self._terms) + list(other._terms))

    def __neg__(self) -> "LPoly":
        return LPoly((e, -c) for e, c in self._terms)

    def __sub__(self, other: "LPoly") -> "LPoly":
        return self + (-other)

    def __mul__(self, other) -> "LPoly":
        if not isinstance(other, LPoly):
            c = GaussRat.coerce(other)
            return LPoly((e, c * v) for e, v in self._terms)
        out = []
        for e1, c1 in self._terms:
            for e2, c2 in other._terms:
                out.append((tuple(a + b for a, b in zip(e1, e2)), c1 * c2))
        return LPoly(out)

    __rmul__ = __mul__

    def min_exponents(self) -> Exp:
        if not self._terms:
            return ZERO_EXP
        return tuple(min(e[k] for e, _ in self._terms) for k in range(NVARS))

    # conversion to flint ------------------------------------------------

    def to_flint(self):
        """Return ``(re, im, shift, scale)`` with integer polynomials such that
        ``self == (re + i*im) * m(shift) / scale`` where ``m(shift)`` is the
        Laurent monomial with exponent vector ``shift``."""
        shift = self.min_exponents()
        denom = 1
        for _, c in self._terms:
            denom = _lcm(denom, c.re.denominator)
            denom = _lcm(denom, c.im.denominator)
        re_d: Dict[Exp, int] = {}
        im_d: Dict[Exp, int] = {}
        for e, c in self._terms:
            key = tuple(a - s for a, s in zip(e, shift))
            if c.re:
                re_d[key] = int(c.re * denom)
            if c.im:
                im_d[key] = int(c.im * denom)
        return CTX.from_dict(re_d), CTX.from_dict(im_d), shift, denom

    @classmethod
    def from_flint(cls, re_poly, im_poly=None, shift: Exp = ZERO_EXP, scale=1) -> "LPoly":
        scale = Fraction(scale)
        acc: Dict[Exp, list] = {}
        for e, c in ((tuple(int(v) for v in e), c) for e, c in re_poly.to_dict().items()):
            acc.setdefault(e, [0, 0])[0] = int(c)
        if im_poly is not None:
            for e, c in ((tuple(int(v) for v in e), c) for e, c in im_poly.to_dict().items()):
                acc.setdefault(e, [0, 0])[1] = int(c)
        return cls(
            (tuple(a + s for a, s in zip(e, shift)), GaussRat(Fraction(r) / scale, Fraction(i) / scale))
            for e, (r, i) in acc.items()
        )

    # text ---------------------------------------------------------------

    def to_text(self) -> str:
        if not self._terms:
            return "0"
        parts = []
        for e, c in self._terms:
            mono = _mono_text(e)
            if c.re:
                parts.append(_coeff_text(c.re, False) + mono)
            if c.im:
                parts.append(_coeff_text(c.im, True) + mono)
        return " + ".join(parts)

    @classmethod
    def from_text(cls, text: str) -> "LPoly":
        text = text.strip()
        if text == "0":
            return cls()
        out = []
        for term in text.split(" + "):
            tokens = term.split(" * ")
            m = _COEFF_RE.match(tokens[0])
            if not m:
                raise ParseError(f"bad coefficient in term {term!r}")
            value = Fraction(int(m.group(1)), int(m.group(2) or 1))
            c = GaussRat(0, value) if m.group(3) else GaussRat(value)
            e = [0] * NVARS
            for tok in tokens[1:]:
                vm = _VAR_RE.match(tok)
                if not vm or vm.group(1) not in VAR_INDEX:
                    raise ParseError(f"bad factor {tok!r} in term {term!r}")
                e[VAR_INDEX[vm.group(1)]] += int(vm.group(2)) if vm.group(2) else 1
            out.append((tuple(e), c))
        return cls(out)

    def to_latex(self) -> str:
        if not self._terms:
            return "0"
        pieces = []
        for e, c in reversed(self._terms):
            mono = "".join(
                f"{VARS[k]}^{{{p}}}" if p != 1 else VARS[k] for k, p in enumerate(e) if p
            )
            for value, imag in ((c.re, False), (c.im, True)):
                if not value:
                    continue
                sign = "-" if value < 0 else "+"
                mag = abs(value)
                if mag.denominator != 1:
                    num = rf"\frac{{{mag.numerator}}}{{{mag.denominator}}}"
                elif mag != 1 or (not mono and not imag):
                    num = str(mag.numerator)
                else:
                    num = ""
                body = num + ("i" if imag else "") + mono
                pieces.append((sign, body or "1"))
        first_sign, first = pieces[0]
        out = ("-" if first_sign == "-" else "") + first
        for sign, body in pieces[1:]:
            out += f" {sign} {body}"
        return out

    def __str__(self):
        return self.to_text()

    def __repr__(self):
        return f"LPoly({self.to_text()!r})"


_COEFF_RE = re.compile(r"^(-?\d+)(?:/(\d+))?(\*i)?$")
_VAR_RE = re.compile(r"^([a-z])(?:\^(-?\d+))?$")


def _lcm(a: int, b: int) -> int:
    from math import gcd

    return a * b // gcd(a, b)


def _coeff_text(value: Fraction, imag: bool) -> str:
    s = str(value.numerator) if value.denominator == 1 else f"{value.numerator}/{value.denominator}"
    return s + ("*i" if imag else "")


def _mono_text(e: Exp) -> str:
    out = ""
    for k, p in enumerate(e):
        if p == 1:
            out += f" * {VARS[k]}"
        elif p:
            out += f" * {VARS[k]}^{p}"
    return out
