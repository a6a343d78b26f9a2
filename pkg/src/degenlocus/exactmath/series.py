"""Laurent polynomials in character variables and truncated power series in t.

Half-integer powers never appear: callers substitute q -> q**2 at the
boundary so every stored exponent is an integer.
"""

from __future__ import annotations

from fractions import Fraction

from .scalars import format_rational, simplify

__all__ = ["LaurentPoly", "TruncSeries", "laurent_divide_exact", "series_from_rational"]


class LaurentPoly:
    """Sparse Laurent polynomial with rational coefficients.

    ``terms`` maps integer exponent tuples (possibly negative) to coefficients.
    """

    __slots__ = ("vars", "terms")

    def __init__(self, variables, terms=None):
        self.vars = tuple(variables)
        t = {}
        for e, c in (terms or {}).items():
            e = tuple(e)
            if len(e) != len(self.vars):
                raise ValueError("exponent length mismatch")
            c = simplify(c)
            if c:
                v = t.get(e, 0) + c
                if v:
                    t[e] = v
                else:
                    t.pop(e, None)
        self.terms = t

    @classmethod
    def const(cls, variables, c):
        return cls(variables, {(0,) * len(tuple(variables)): c})

    @classmethod
    def monomial(cls, variables, exps, c=1):
        return cls(variables, {tuple(exps): c})

    def _check(self, other):
        if isinstance(other, LaurentPoly):
            if other.vars != self.vars:
                raise ValueError(f"variable mismatch {self.vars} vs {other.vars}")
            return other
        return LaurentPoly.const(self.vars, other)

    def is_zero(self):
        return not self.terms

    def __bool__(self):
        return bool(self.terms)

    def __eq__(self, other):
        try:
            other = self._check(other)
        except (TypeError, ValueError):
            return NotImplemented
        return self.terms == other.terms

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def __add__(self, other):
        other = self._check(other)
        out = dict(self.terms)
        for e, c in other.terms.items():
            v = out.get(e, 0) + c
            if v:
                out[e] = v
            else:
                out.pop(e, None)
        return LaurentPoly(self.vars, out)

    __radd__ = __add__

    def __neg__(self):
        return LaurentPoly(self.vars, {e: -c for e, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-self._check(other))

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        other = self._check(other)
        out = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                out[e] = out.get(e, 0) + c1 * c2
        return LaurentPoly(self.vars, out)

    __rmul__ = __mul__

    def __pow__(self, k):
        if k < 0:
            if len(self.terms) != 1:
                raise ValueError("only monomials have Laurent inverses")
            (e, c), = self.terms.items()
            return LaurentPoly(self.vars, {tuple(a * k for a in e): Fraction(1) / c ** -k})
        out = LaurentPoly.const(self.vars, 1)
        for _ in range(k):
            out = out * self
        return out

    def subs(self, images):
        """Substitute a LaurentPoly (or scalar) for every variable, in order."""
        images = list(images)
        out = None
        for e, c in self.terms.items():
            term = c
            for img, a in zip(images, e):
                if a:
                    term = term * (img ** a if isinstance(img, LaurentPoly) else Fraction(img) ** a)
            out = term if out is None else out + term
        if out is None:
            return LaurentPoly.const(images[0].vars, 0) if images and isinstance(images[0], LaurentPoly) else 0
        return out

    def evaluate(self, values):
        total = 0
        for e, c in self.terms.items():
            term = c
            for v, a in zip(values, e):
                term = term * Fraction(v) ** a
            total += term
        return simplify(total)

    def at_one(self):
        return simplify(sum(self.terms.values(), 0))

    def __repr__(self):
        if not self.terms:
            return "0"
        parts = []
        for e in sorted(self.terms, reverse=True):
            c = self.terms[e]
            mono = "*".join(v if a == 1 else f"{v}^{a}" for v, a in zip(self.vars, e) if a)
            cs = format_rational(c)
            parts.append(cs if not mono else mono if c == 1 else f"-{mono}" if c == -1 else f"{cs}*{mono}")
        return " + ".join(parts).replace("+ -", "- ")


def laurent_divide_exact(f, g):
    """Exact quotient f/g of Laurent polynomials; ValueError if g does not divide f."""
    if g.vars != f.vars:
        raise ValueError("variable mismatch")
    if not g.terms:
        raise ZeroDivisionError("division by the zero Laurent polynomial")
    n = len(f.vars)
    if not f.terms:
        return LaurentPoly(f.vars)
    # shift both into the polynomial ring
    fs = [min(e[i] for e in f.terms) for i in range(n)]
    gs = [min(e[i] for e in g.terms) for i in range(n)]
    F = {tuple(a - s for a, s in zip(e, fs)): c for e, c in f.terms.items()}
    G = {tuple(a - s for a, s in zip(e, gs)): c for e, c in g.terms.items()}
    lead = max(G)
    lc = Fraction(G[lead])
    quot = {}
    rem = dict(F)
    while rem:
        top = max(rem)
        diff = tuple(a - b for a, b in zip(top, lead))
        if any(d < 0 for d in diff):
            raise ValueError("Laurent division is not exact")
        q = rem[top] / lc
        quot[diff] = q
        for e, c in G.items():
            k = tuple(a + b for a, b in zip(e, diff))
            v = rem.get(k, 0) - q * c
            if v:
                rem[k] = v
            else:
                rem.pop(k, None)
    shift = [a - b for a, b in zip(fs, gs)]
    return LaurentPoly(f.vars, {tuple(a + s for a, s in zip(e, shift)): c for e, c in quot.items()})


class TruncSeries:
    """Power series in t truncated after ``t**order``; coefficients are LaurentPoly."""

    __slots__ = ("vars", "order", "coeffs")

    def __init__(self, variables, coeffs, order):
        self.vars = tuple(variables)
        self.order = order
        cs = []
        for i in range(order + 1):
            c = coeffs[i] if i < len(coeffs) else 0
            if not isinstance(c, LaurentPoly):
                c = LaurentPoly.const(self.vars, c)
            cs.append(c)
        self.coeffs = cs

    @classmethod
    def from_poly(cls, variables, coeffs, order):
        return cls(variables, list(coeffs), order)

    def _check(self, other):
        if not isinstance(other, TruncSeries):
            return TruncSeries(self.vars, [other], self.order)
        if other.vars != self.vars:
            raise ValueError("variable mismatch")
        return other

    def __add__(self, other):
        other = self._check(other)
        o = min(self.order, other.order)
        return TruncSeries(self.vars, [self.coeffs[i] + other.coeffs[i] for i in range(o + 1)], o)

    __radd__ = __add__

    def __neg__(self):
        return TruncSeries(self.vars, [-c for c in self.coeffs], self.order)

    def __sub__(self, other):
        return self + (-self._check(other))

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        other = self._check(other)
        o = min(self.order, other.order)
        out = []
        for k in range(o + 1):
            acc = LaurentPoly(self.vars)
            for i in range(k + 1):
                a, b = self.coeffs[i], other.coeffs[k - i]
                if a and b:
                    acc = acc + a * b
            out.append(acc)
        return TruncSeries(self.vars, out, o)

    __rmul__ = __mul__

    def shift(self, k):
        """Multiply by t**k (k >= 0), keeping the order."""
        return TruncSeries(self.vars, [0] * k + self.coeffs[: self.order + 1 - k], self.order)

    def inverse(self):
        """Inverse of a series whose constant term is a nonzero monomial."""
        c0 = self.coeffs[0]
        if len(c0.terms) != 1:
            raise ZeroDivisionError("constant term is not a unit")
        inv0 = c0 ** -1
        out = [inv0]
        for k in range(1, self.order + 1):
            acc = LaurentPoly(self.vars)
            for i in range(1, k + 1):
                if self.coeffs[i]:
                    acc = acc + self.coeffs[i] * out[k - i]
            out.append(-(acc * inv0))
        return TruncSeries(self.vars, out, self.order)

    def __truediv__(self, other):
        return self * self._check(other).inverse()

    def map(self, f):
        return TruncSeries(self.vars, [f(c) for c in self.coeffs], self.order)

    def at_one(self):
        """Specialize every character variable to 1; returns a list of rationals."""
        return [c.at_one() for c in self.coeffs]

    def __eq__(self, other):
        if not isinstance(other, TruncSeries):
            return NotImplemented
        o = min(self.order, other.order)
        return self.vars == other.vars and all(self.coeffs[i] == other.coeffs[i] for i in range(o + 1))

    def __repr__(self):
        return f"TruncSeries({self.coeffs!r}, order={self.order})"


def _as_tpoly(p, variables):
    """Accept a list of coefficients or a dict {power: coeff}."""
    if isinstance(p, dict):
        m = max(p) if p else 0
        return [p.get(i, 0) for i in range(m + 1)]
    return list(p)


def series_from_rational(numerator, denominator_factors, order, variables=()):
    """Expand numerator / prod(factors) to order ``order`` in t.

    Each polynomial in t is given as a coefficient list (index = power of t)
    whose entries are scalars or LaurentPoly over ``variables``.
    """
    num = TruncSeries(variables, _as_tpoly(numerator, variables), order)
    out = num
    for f in denominator_factors:
        fs = TruncSeries(variables, _as_tpoly(f, variables), order)
        c0 = fs.coeffs[0]
        if len(c0.terms) != 1:
            raise ValueError("denominator factor has zero constant term")
        out = out * fs.inverse()
    return out
