"""Sparse multivariate polynomials over Q(i).

A :class:`MultiPoly` carries an ordered tuple of variable names and a dict
from packed exponent vectors to nonzero scalar coefficients.  Exponents are
packed ``BITS`` bits per variable into one Python int, so multiplying two
monomials is a single integer addition.
"""

from __future__ import annotations

from fractions import Fraction
from itertools import combinations_with_replacement
from math import gcd

from .scalars import GaussianRational, conj, format_scalar, imag_part, is_scalar, real_part, simplify

__all__ = ["MultiPoly", "monomial_basis", "grlex_key", "poly_vars", "as_poly"]

BITS = 16
_MASK = (1 << BITS) - 1


def _pack(exps):
    key = 0
    for i, e in enumerate(exps):
        if e < 0 or e > _MASK:
            raise ValueError(f"exponent {e} out of range")
        key |= e << (BITS * i)
    return key


def _unpack(key, n):
    return tuple((key >> (BITS * i)) & _MASK for i in range(n))


def _key_degree(key):
    d = 0
    while key:
        d += key & _MASK
        key >>= BITS
    return d


def _clean(c):
    if type(c) is GaussianRational and c.im == 0:
        return simplify(c.re)
    return c


def grlex_key(exps):
    """Sort key placing higher total degree first, then lex with x1 > x2 > ...

    Use with ``sorted(..., key=grlex_key, reverse=True)``.
    """
    return (sum(exps), tuple(exps))


def monomial_basis(nvars, d):
    """Exponent tuples of total degree ``d`` in ``nvars`` variables, grlex-descending."""
    out = []
    for combo in combinations_with_replacement(range(nvars), d):
        e = [0] * nvars
        for i in combo:
            e[i] += 1
        out.append(tuple(e))
    out.sort(reverse=True)
    return out


class MultiPoly:
    """Immutable sparse polynomial with exact Gaussian-rational coefficients."""

    __slots__ = ("vars", "_t", "_idx", "_ev")

    def __init__(self, variables, terms=None):
        self.vars = tuple(variables)
        if len(set(self.vars)) != len(self.vars):
            raise ValueError(f"repeated variable names in {self.vars}")
        self._idx = None
        self._ev = None
        t = {}
        if terms:
            n = len(self.vars)
            for exps, c in dict(terms).items():
                exps = tuple(exps)
                if len(exps) != n:
                    raise ValueError(f"exponent vector {exps} does not match {n} variables")
                c = simplify(c)
                if c:
                    k = _pack(exps)
                    v = t.get(k, 0) + c
                    if v:
                        t[k] = _clean(v)
                    else:
                        t.pop(k, None)
        self._t = t

    # construction helpers ---------------------------------------------
    @classmethod
    def _make(cls, variables, packed):
        p = object.__new__(cls)
        p.vars = variables
        p._t = packed
        p._idx = None
        p._ev = None
        return p

    @classmethod
    def var(cls, variables, name):
        variables = tuple(variables)
        i = variables.index(name)
        return cls._make(variables, {1 << (BITS * i): 1})

    @classmethod
    def const(cls, variables, c):
        c = simplify(c)
        return cls._make(tuple(variables), {0: c} if c else {})

    @classmethod
    def monomial(cls, variables, exps, c=1):
        return cls(variables, {tuple(exps): c})

    def _index(self):
        if self._idx is None:
            self._idx = {v: i for i, v in enumerate(self.vars)}
        return self._idx

    # views ------------------------------------------------------------
    def terms(self):
        """Dict ``{exponent tuple: coefficient}``."""
        n = len(self.vars)
        return {_unpack(k, n): c for k, c in self._t.items()}

    def items(self):
        """(exponents, coefficient) pairs in grlex-descending order."""
        n = len(self.vars)
        pairs = [(_unpack(k, n), c) for k, c in self._t.items()]
        pairs.sort(key=lambda kv: grlex_key(kv[0]), reverse=True)
        return pairs

    def __len__(self):
        return len(self._t)

    def is_zero(self):
        return not self._t

    def __bool__(self):
        return bool(self._t)

    def is_constant(self):
        return not self._t or (len(self._t) == 1 and 0 in self._t)

    def constant_term(self):
        return self._t.get(0, 0)

    def coefficient(self, exps):
        if isinstance(exps, dict):
            idx = self._index()
            e = [0] * len(self.vars)
            for v, k in exps.items():
                if v not in idx:
                    return 0
                e[idx[v]] = k
            exps = e
        return self._t.get(_pack(exps), 0)

    def degree(self):
        if not self._t:
            return -1
        return max(_key_degree(k) for k in self._t)

    def degrees(self):
        return {_key_degree(k) for k in self._t}

    def is_homogeneous(self):
        return len(self.degrees()) <= 1

    def degree_in(self, names):
        """Total degree in the subset ``names`` of the variables."""
        idx = self._index()
        pos = [idx[v] for v in names if v in idx]
        if not self._t:
            return -1
        return max(sum((k >> (BITS * i)) & _MASK for i in pos) for k in self._t)

    def used_vars(self):
        n = len(self.vars)
        used = [False] * n
        for k in self._t:
            for i in range(n):
                if (k >> (BITS * i)) & _MASK:
                    used[i] = True
        return tuple(v for v, u in zip(self.vars, used) if u)

    def weight(self, weights):
        """Common weight of all terms, or ``None`` if not weight-homogeneous.

        ``weights`` maps each variable name to an integer vector; variables
        missing from the map have weight zero.
        """
        n = len(self.vars)
        dim = len(next(iter(weights.values()))) if weights else 0
        wvec = [tuple(weights.get(v, (0,) * dim)) for v in self.vars]
        found = None
        for k in self._t:
            e = _unpack(k, n)
            w = tuple(sum(e[i] * wvec[i][j] for i in range(n)) for j in range(dim))
            if found is None:
                found = w
            elif w != found:
                return None
        return found if found is not None else (0,) * dim

    def bidegree(self, weights):
        """``(degree, weight)`` if bihomogeneous, else ``None``."""
        degs = self.degrees()
        if len(degs) > 1:
            return None
        w = self.weight(weights)
        if w is None:
            return None
        return (degs.pop() if degs else 0, w)

    # variable bookkeeping -------------------------------------------------
    def with_vars(self, variables):
        """Re-express over ``variables`` (a superset of the used variables)."""
        variables = tuple(variables)
        if variables == self.vars:
            return self
        n = len(self.vars)
        pos = {v: i for i, v in enumerate(variables)}
        shift = []
        for i, v in enumerate(self.vars):
            if v in pos:
                shift.append(pos[v])
            else:
                shift.append(None)
        out = {}
        for k, c in self._t.items():
            nk = 0
            for i in range(n):
                e = (k >> (BITS * i)) & _MASK
                if e:
                    j = shift[i]
                    if j is None:
                        raise ValueError(f"variable {self.vars[i]} is used but missing from target")
                    nk |= e << (BITS * j)
            out[nk] = c
        return MultiPoly._make(variables, out)

    def _coerce(self, other):
        """Return (self', other') over a common variable tuple."""
        if isinstance(other, MultiPoly):
            if other.vars == self.vars:
                return self, other
            extra = tuple(v for v in other.vars if v not in self._index())
            variables = self.vars + extra
            return self.with_vars(variables), other.with_vars(variables)
        if is_scalar(other):
            return self, MultiPoly.const(self.vars, other)
        return None, None

    # arithmetic -------------------------------------------------------
    def __add__(self, other):
        a, b = self._coerce(other)
        if a is None:
            return NotImplemented
        out = dict(a._t)
        for k, c in b._t.items():
            v = out.get(k)
            if v is None:
                out[k] = c
            else:
                v = v + c
                if v:
                    out[k] = _clean(v)
                else:
                    del out[k]
        return MultiPoly._make(a.vars, out)

    __radd__ = __add__

    def __neg__(self):
        return MultiPoly._make(self.vars, {k: -c for k, c in self._t.items()})

    def __sub__(self, other):
        if is_scalar(other):
            return self + (-simplify(other))
        if isinstance(other, MultiPoly):
            return self + (-other)
        return NotImplemented

    def __rsub__(self, other):
        return (-self) + other

    def scale(self, c):
        c = simplify(c)
        if not c:
            return MultiPoly._make(self.vars, {})
        out = {}
        for k, v in self._t.items():
            w = _clean(v * c)
            if w:
                out[k] = w
        return MultiPoly._make(self.vars, out)

    def __mul__(self, other):
        if is_scalar(other):
            return self.scale(other)
        a, b = self._coerce(other)
        if a is None:
            return NotImplemented
        at, bt = a._t, b._t
        if len(at) < len(bt):
            at, bt = bt, at
        out = {}
        get = out.get
        for k2, c2 in bt.items():
            for k1, c1 in at.items():
                k = k1 + k2
                out[k] = get(k, 0) + c1 * c2
        return MultiPoly._make(a.vars, {k: _clean(v) for k, v in out.items() if v})

    __rmul__ = __mul__

    def __truediv__(self, other):
        if is_scalar(other):
            return self.scale(Fraction(1) / other)
        return NotImplemented

    def __pow__(self, e):
        if not isinstance(e, int) or e < 0:
            return NotImplemented
        result = MultiPoly.const(self.vars, 1)
        base = self
        while e:
            if e & 1:
                result = result * base
            e >>= 1
            if e:
                base = base * base
        return result

    def __eq__(self, other):
        if isinstance(other, MultiPoly):
            if other.vars != self.vars:
                a, b = self._coerce(other)
                return a._t == b._t
            return self._t == other._t
        if is_scalar(other):
            c = simplify(other)
            if not c:
                return not self._t
            return self._t == {0: c}
        return NotImplemented

    def __hash__(self):
        return hash(frozenset(self.terms().items()))

    # calculus and substitution ----------------------------------------
    def diff(self, name):
        idx = self._index()
        if name not in idx:
            return MultiPoly._make(self.vars, {})
        s = BITS * idx[name]
        unit = 1 << s
        out = {}
        for k, c in self._t.items():
            e = (k >> s) & _MASK
            if e:
                out[k - unit] = c * e
        return MultiPoly._make(self.vars, out)

    def _compiled(self):
        """Terms as (coefficient, degree, ((var index, exponent), ...)), cached."""
        if self._ev is None:
            n = len(self.vars)
            out = []
            for k, c in self._t.items():
                fac = []
                deg = 0
                i = 0
                while k:
                    e = k & _MASK
                    if e:
                        fac.append((i, e))
                        deg += e
                    k >>= BITS
                    i += 1
                out.append((c, deg, tuple(fac)))
            self._ev = out
        return self._ev

    def evaluate(self, point):
        """Substitute scalars for *all* used variables and return a scalar."""
        vals = [point.get(v) for v in self.vars]
        terms = self._compiled()
        used = {i for _, _, fac in terms for i, _ in fac}
        for i in used:
            if vals[i] is None:
                raise KeyError(f"no value for variable {self.vars[i]}")
        scale = 1
        if all(isinstance(vals[i], (int, Fraction)) for i in used):
            # clear denominators so the inner loop runs on Python ints
            for i in used:
                d = Fraction(vals[i]).denominator
                scale = scale * d // gcd(scale, d)
            if scale != 1:
                for i in used:
                    vals[i] = int(vals[i] * scale)
        powcache = {}
        by_deg = {}
        for c, deg, fac in terms:
            term = 1
            for i, e in fac:
                xp = powcache.get((i, e))
                if xp is None:
                    xp = vals[i] ** e
                    powcache[(i, e)] = xp
                term = term * xp
            by_deg[deg] = by_deg.get(deg, 0) + c * term
        total = 0
        for deg, v in by_deg.items():
            total = total + (v if scale == 1 or deg == 0 else v / Fraction(scale) ** deg)
        return simplify(total)

    def subs(self, mapping, variables=None):
        """Substitute scalars or polynomials for some variables.

        Unmapped variables are kept.  ``variables`` optionally fixes the
        variable tuple of the result.
        """
        keep = tuple(v for v in self.vars if v not in mapping)
        images = {}
        for v, img in mapping.items():
            if v in self._index():
                images[v] = img
        target = list(keep)
        for img in images.values():
            if isinstance(img, MultiPoly):
                for w in img.vars:
                    if w not in target:
                        target.append(w)
        if variables is not None:
            target = list(variables)
        target = tuple(target)
        n = len(self.vars)
        tpos = {v: i for i, v in enumerate(target)}
        img_polys = []
        for i, v in enumerate(self.vars):
            if v in images:
                img = images[v]
                if isinstance(img, MultiPoly):
                    img_polys.append(img.with_vars(target))
                else:
                    img_polys.append(MultiPoly.const(target, img))
            else:
                img_polys.append(None)
        powcache = [dict() for _ in range(n)]
        out = MultiPoly._make(target, {})
        acc = {}
        for k, c in self._t.items():
            mono = 0
            factor = None
            for i in range(n):
                e = (k >> (BITS * i)) & _MASK
                if not e:
                    continue
                if img_polys[i] is None:
                    mono |= e << (BITS * tpos[self.vars[i]])
                else:
                    pc = powcache[i]
                    xp = pc.get(e)
                    if xp is None:
                        xp = img_polys[i] ** e
                        pc[e] = xp
                    factor = xp if factor is None else factor * xp
            if factor is None:
                acc[mono] = acc.get(mono, 0) + c
            else:
                get = acc.get
                for fk, fc in factor._t.items():
                    kk = fk + mono
                    acc[kk] = get(kk, 0) + fc * c
        out._t = {k: _clean(v) for k, v in acc.items() if v}
        return out

    def conjugate(self):
        """Conjugate coefficients (complex conjugation when all variables are real)."""
        return MultiPoly._make(self.vars, {k: conj(c) for k, c in self._t.items()})

    def real_part(self):
        out = {k: real_part(c) for k, c in self._t.items()}
        return MultiPoly._make(self.vars, {k: c for k, c in out.items() if c})

    def imag_part(self):
        out = {k: imag_part(c) for k, c in self._t.items()}
        return MultiPoly._make(self.vars, {k: c for k, c in out.items() if c})

    def is_real(self):
        return all(not isinstance(c, GaussianRational) for c in self._t.values())

    def coefficients_in(self, names):
        """Split as ``sum x^a * P_a`` over the variables ``names``.

        Returns ``{a: P_a}`` where each ``P_a`` lives on the remaining variables.
        """
        names = tuple(names)
        idx = self._index()
        pos = [idx.get(v) for v in names]
        rest = tuple(v for v in self.vars if v not in names)
        rest_pos = [idx[v] for v in rest]
        parts = {}
        for k, c in self._t.items():
            a = tuple(((k >> (BITS * p)) & _MASK) if p is not None else 0 for p in pos)
            rk = 0
            for j, p in enumerate(rest_pos):
                e = (k >> (BITS * p)) & _MASK
                if e:
                    rk |= e << (BITS * j)
            parts.setdefault(a, {})[rk] = c
        return {a: MultiPoly._make(rest, t) for a, t in parts.items()}

    # output -----------------------------------------------------------
    def to_json(self):
        return {
            "vars": list(self.vars),
            "terms": {",".join(map(str, e)): format_scalar(c) for e, c in self.items()},
        }

    def __repr__(self):
        if not self._t:
            return "0"
        parts = []
        for e, c in self.items():
            mono = "*".join(
                v if k == 1 else f"{v}^{k}" for v, k in zip(self.vars, e) if k
            )
            cs = format_scalar(c)
            if not mono:
                parts.append(cs)
            elif c == 1:
                parts.append(mono)
            elif c == -1:
                parts.append("-" + mono)
            else:
                if isinstance(c, GaussianRational) and c.re != 0:
                    cs = f"({cs})"
                parts.append(f"{cs}*{mono}")
        return " + ".join(parts).replace("+ -", "- ")


def poly_vars(*names):
    """Generators ``x1, x2, ...`` over the variable tuple ``names``."""
    return tuple(MultiPoly.var(names, v) for v in names)


def as_poly(x, variables):
    if isinstance(x, MultiPoly):
        return x.with_vars(tuple(variables) + tuple(v for v in x.vars if v not in variables))
    return MultiPoly.const(variables, x)
