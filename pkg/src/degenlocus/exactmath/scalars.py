"""Exact scalars: rationals (``fractions.Fraction``) and Gaussian rationals.

Real values are kept as plain ``int`` or ``Fraction`` wherever possible; a
``GaussianRational`` only appears when the imaginary part is nonzero (see
:func:`simplify`).  All three types interoperate under ``+ - * /``.
"""

from __future__ import annotations

import re
from fractions import Fraction
from numbers import Rational as _RationalABC

__all__ = [
    "GaussianRational",
    "I",
    "simplify",
    "conj",
    "real_part",
    "imag_part",
    "is_real",
    "is_scalar",
    "to_scalar",
    "parse_scalar",
    "format_scalar",
    "format_rational",
]


def _q(x):
    """Coerce an int-like to int/Fraction, collapsing integral fractions."""
    if type(x) is int:
        return x
    if isinstance(x, Fraction):
        return x.numerator if x.denominator == 1 else x
    if isinstance(x, _RationalABC):
        return _q(Fraction(x))
    raise TypeError(f"not a rational: {x!r}")


class GaussianRational:
    """Exact complex number ``re + im*i`` with rational parts."""

    __slots__ = ("re", "im")

    def __init__(self, re=0, im=0):
        self.re = _q(re)
        self.im = _q(im)

    @staticmethod
    def _raw(re, im):
        g = object.__new__(GaussianRational)
        g.re = re
        g.im = im
        return g

    # arithmetic -------------------------------------------------------
    def __add__(self, o):
        if isinstance(o, GaussianRational):
            return GaussianRational._raw(self.re + o.re, self.im + o.im)
        if isinstance(o, (int, Fraction)):
            return GaussianRational._raw(self.re + o, self.im)
        return NotImplemented

    __radd__ = __add__

    def __sub__(self, o):
        if isinstance(o, GaussianRational):
            return GaussianRational._raw(self.re - o.re, self.im - o.im)
        if isinstance(o, (int, Fraction)):
            return GaussianRational._raw(self.re - o, self.im)
        return NotImplemented

    def __rsub__(self, o):
        if isinstance(o, (int, Fraction)):
            return GaussianRational._raw(o - self.re, -self.im)
        return NotImplemented

    def __mul__(self, o):
        if isinstance(o, GaussianRational):
            a, b, c, d = self.re, self.im, o.re, o.im
            return GaussianRational._raw(a * c - b * d, a * d + b * c)
        if isinstance(o, (int, Fraction)):
            return GaussianRational._raw(self.re * o, self.im * o)
        return NotImplemented

    __rmul__ = __mul__

    def __truediv__(self, o):
        if isinstance(o, GaussianRational):
            n = o.re * o.re + o.im * o.im
            if n == 0:
                raise ZeroDivisionError("division by zero Gaussian rational")
            a, b, c, d = self.re, self.im, o.re, o.im
            return GaussianRational._raw(Fraction(a * c + b * d) / n, Fraction(b * c - a * d) / n)
        if isinstance(o, (int, Fraction)):
            if o == 0:
                raise ZeroDivisionError("division by zero")
            return GaussianRational._raw(Fraction(self.re) / o, Fraction(self.im) / o)
        return NotImplemented

    def __rtruediv__(self, o):
        if isinstance(o, (int, Fraction)):
            return GaussianRational._raw(o, 0) / self
        return NotImplemented

    def __neg__(self):
        return GaussianRational._raw(-self.re, -self.im)

    def __pos__(self):
        return self

    def __pow__(self, e):
        if not isinstance(e, int):
            return NotImplemented
        if e < 0:
            return 1 / (self ** -e)
        result = GaussianRational._raw(1, 0)
        base = self
        while e:
            if e & 1:
                result = result * base
            base = base * base
            e >>= 1
        return result

    # comparisons ------------------------------------------------------
    def __eq__(self, o):
        if isinstance(o, GaussianRational):
            return self.re == o.re and self.im == o.im
        if isinstance(o, (int, Fraction)):
            return self.im == 0 and self.re == o
        return NotImplemented

    def __hash__(self):
        if self.im == 0:
            return hash(self.re)
        return hash((self.re, self.im))

    def __bool__(self):
        return self.re != 0 or self.im != 0

    def conjugate(self):
        return GaussianRational._raw(self.re, -self.im)

    def norm(self):
        """``|z|^2`` as a nonnegative rational."""
        return _q(self.re * self.re + self.im * self.im)

    def __repr__(self):
        return f"GaussianRational({format_scalar(self)!r})"

    def __str__(self):
        return format_scalar(self)


I = GaussianRational(0, 1)


def simplify(x):
    """Canonical form: ``int`` if integral, ``Fraction`` if rational, else Gaussian."""
    if type(x) is int:
        return x
    if isinstance(x, GaussianRational):
        if x.im == 0:
            return _q(x.re)
        return GaussianRational(x.re, x.im)
    return _q(x)


def is_scalar(x):
    return isinstance(x, (int, Fraction, GaussianRational))


def to_scalar(x):
    if isinstance(x, str):
        return parse_scalar(x)
    if isinstance(x, bool):
        raise TypeError("bool is not a scalar")
    return simplify(x)


def conj(x):
    if isinstance(x, GaussianRational):
        return simplify(x.conjugate())
    return x


def real_part(x):
    if isinstance(x, GaussianRational):
        return _q(x.re)
    return x


def imag_part(x):
    if isinstance(x, GaussianRational):
        return _q(x.im)
    return 0


def is_real(x):
    return not isinstance(x, GaussianRational) or x.im == 0


# text format ----------------------------------------------------------

_RAT = re.compile(r"[+-]?\d+(?:/\d+)?")


def format_rational(q):
    q = _q(q)
    if type(q) is int:
        return str(q)
    return f"{q.numerator}/{q.denominator}"


def format_scalar(x):
    """Canonical string ``a/b+c/di``; either part is omitted when zero."""
    r, i = real_part(x), imag_part(x)
    if i == 0:
        return format_rational(r)
    if i == 1:
        im = "i"
    elif i == -1:
        im = "-i"
    else:
        im = format_rational(i) + "i"
    if r == 0:
        return im
    if not im.startswith("-"):
        im = "+" + im
    return format_rational(r) + im


def _parse_rational(text, original):
    if not _RAT.fullmatch(text):
        raise ValueError(f"malformed scalar {original!r}")
    try:
        return Fraction(text)
    except ZeroDivisionError:
        raise ValueError(f"zero denominator in {original!r}") from None


def parse_scalar(s):
    """Inverse of :func:`format_scalar`; also accepts plain ints and ``"1/2"``."""
    if not isinstance(s, str):
        raise TypeError(f"expected a string, got {type(s).__name__}")
    text = s.replace(" ", "")
    if not text:
        raise ValueError("empty scalar")
    if not text.endswith("i"):
        return _q(_parse_rational(text, s))
    body = text[:-1]
    cut = max(body.rfind("+"), body.rfind("-"))
    if cut > 0:
        re_text, im_text = body[:cut], body[cut:]
    else:
        re_text, im_text = "", body
    re_part = _parse_rational(re_text, s) if re_text else 0
    if im_text in ("", "+"):
        im_part = 1
    elif im_text == "-":
        im_part = -1
    else:
        im_part = _parse_rational(im_text, s)
    return simplify(GaussianRational(re_part, im_part))
