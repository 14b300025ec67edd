"""Exact scalars: rational functions in formal parameters over the Gaussian rationals.

A :class:`Scalar` is a reduced fraction ``num/den`` of sparse polynomials.
Polynomials are dicts ``{monomial: mpq}`` where a monomial is a sorted tuple
of ``(name, exponent)`` pairs.  The imaginary unit is carried inside the
monomial as the reserved name ``"i"`` with exponent 0 or 1, so polynomial
multiplication only has to know that ``i*i = -1``.

Reduction keeps ``gcd(num, den) = 1`` and scales the leading coefficient of
``den`` to 1, so two scalars are equal iff their stored polynomials are equal.
Monomial and constant denominators (the common case: ``1/q``, ``1/2``) are
reduced without any gcd; general denominators go through sympy.
"""

from __future__ import annotations

from functools import lru_cache
from typing import Mapping

from gmpy2 import mpq

__all__ = [
    "Scalar",
    "ParamSet",
    "ScalarError",
    "DivisionByZero",
    "PoleError",
    "substitute",
    "limit_at",
    "scalar_arith",
    "IMAG",
]

IMAG_NAME = "i"


class ScalarError(ArithmeticError):
    pass


class DivisionByZero(ScalarError, ZeroDivisionError):
    pass


class PoleError(ScalarError):
    pass


class ParamSet:
    """Ordered list of declared parameter symbols."""

    def __init__(self, names=()):
        names = list(names)
        for n in names:
            if not isinstance(n, str) or not n.isidentifier():
                raise ValueError(f"bad parameter name {n!r}")
            if n == IMAG_NAME:
                raise ValueError("'i' is the imaginary unit, not a parameter")
        if len(set(names)) != len(names):
            raise ValueError(f"duplicate parameter names in {names}")
        self.names = tuple(names)

    def __contains__(self, name):
        return name in self.names

    def __iter__(self):
        return iter(self.names)

    def __len__(self):
        return len(self.names)

    def __eq__(self, other):
        return isinstance(other, ParamSet) and self.names == other.names

    def __hash__(self):
        return hash(self.names)

    def __repr__(self):
        return f"ParamSet({list(self.names)!r})"

    def union(self, other):
        extra = [n for n in other if n not in self.names]
        return ParamSet(self.names + tuple(extra))

    def symbols(self):
        return {n: Scalar.param(n) for n in self.names}


# --------------------------------------------------------------------------
# sparse polynomial helpers

_ZERO = mpq(0)
_ONE_Q = mpq(1)
_EMPTY = ()
ONE_POLY = {_EMPTY: _ONE_Q}


@lru_cache(maxsize=1 << 16)
def _mono_mul(m1, m2):
    """Return (sign, monomial) for the product of two monomials."""
    if not m1:
        return 1, m2
    if not m2:
        return 1, m1
    d = dict(m1)
    for v, e in m2:
        d[v] = d.get(v, 0) + e
    sign = 1
    ie = d.get(IMAG_NAME)
    if ie is not None and ie >= 2:
        if (ie // 2) % 2:
            sign = -1
        ie %= 2
        if ie:
            d[IMAG_NAME] = ie
        else:
            del d[IMAG_NAME]
    return sign, tuple(sorted(d.items()))


def _padd(a, b):
    if len(a) < len(b):
        a, b = b, a
    out = dict(a)
    for m, c in b.items():
        s = out.get(m)
        if s is None:
            out[m] = c
        else:
            s = s + c
            if s:
                out[m] = s
            else:
                del out[m]
    return out


def _pneg(a):
    return {m: -c for m, c in a.items()}


def _psub(a, b):
    out = dict(a)
    for m, c in b.items():
        s = out.get(m)
        if s is None:
            out[m] = -c
        else:
            s = s - c
            if s:
                out[m] = s
            else:
                del out[m]
    return out


def _pmul(a, b):
    if len(a) == 1 and _EMPTY in a:
        c = a[_EMPTY]
        return dict(b) if c == 1 else {m: c * v for m, v in b.items()}
    if len(b) == 1 and _EMPTY in b:
        c = b[_EMPTY]
        return dict(a) if c == 1 else {m: c * v for m, v in a.items()}
    out = {}
    for m1, c1 in a.items():
        for m2, c2 in b.items():
            sign, m = _mono_mul(m1, m2)
            c = c1 * c2 if sign > 0 else -(c1 * c2)
            s = out.get(m)
            if s is None:
                out[m] = c
            else:
                s = s + c
                if s:
                    out[m] = s
                else:
                    del out[m]
    return out


def _pscale(a, c):
    if c == 1:
        return a
    return {m: c * v for m, v in a.items()}


def _mono_key(m):
    return (sum(e for v, e in m if v != IMAG_NAME), tuple((v, e) for v, e in m if v != IMAG_NAME))


def _strip_i(m):
    if m and any(v == IMAG_NAME for v, _ in m):
        return tuple(p for p in m if p[0] != IMAG_NAME), 1
    return m, 0


def _with_i(m):
    return _mono_mul(m, ((IMAG_NAME, 1),))[1]


def _gauss_unit_inverse(a, b):
    """Polynomial for 1/(a + b i)."""
    n = a * a + b * b
    out = {}
    if a:
        out[_EMPTY] = a / n
    if b:
        out[((IMAG_NAME, 1),)] = -b / n
    return out


def _lead_unit(den):
    """Gaussian coefficient (a, b) of the leading real monomial of den."""
    best = None
    for m in den:
        r, _ = _strip_i(m)
        k = _mono_key(r)
        if best is None or k > best[0]:
            best = (k, r)
    r = best[1]
    a = den.get(r, _ZERO)
    b = den.get(_with_i(r), _ZERO)
    return a, b


def _mono_content(polys):
    """Largest monomial (no i) dividing every term of every poly."""
    g = None
    for p in polys:
        for m in p:
            d = {v: e for v, e in m if v != IMAG_NAME}
            if g is None:
                g = d
            else:
                g = {v: min(e, d[v]) for v, e in g.items() if v in d}
            if not g:
                return {}
    return g or {}


def _mono_div(p, g):
    if not g:
        return p
    out = {}
    for m, c in p.items():
        d = dict(m)
        for v, e in g.items():
            d[v] -= e
            if d[v] == 0:
                del d[v]
        out[tuple(sorted(d.items()))] = c
    return out


def _is_one(p):
    return len(p) == 1 and p.get(_EMPTY) == 1


def _variables(*polys):
    vs = set()
    for p in polys:
        for m in p:
            for v, _ in m:
                if v != IMAG_NAME:
                    vs.add(v)
    return tuple(sorted(vs))


@lru_cache(maxsize=None)
def _sympy_ring(names):
    from sympy import QQ_I
    from sympy.polys.rings import ring

    R, *_ = ring(",".join(names), QQ_I)
    return R


def _to_sympy(p, R, names):
    from sympy import QQ, QQ_I

    idx = {n: k for k, n in enumerate(names)}
    terms = {}
    for m, c in p.items():
        exps = [0] * len(names)
        im = False
        for v, e in m:
            if v == IMAG_NAME:
                im = True
            else:
                exps[idx[v]] = e
        qc = QQ(int(c.numerator), int(c.denominator))
        gc = QQ_I(0, qc) if im else QQ_I(qc, 0)
        key = tuple(exps)
        terms[key] = terms.get(key, QQ_I(0, 0)) + gc
    return R.from_dict({k: v for k, v in terms.items() if v})


def _from_sympy(sp, names):
    out = {}
    for exps, c in sp.terms():
        m = tuple((names[k], e) for k, e in enumerate(exps) if e)
        re = mpq(int(c.x.numerator), int(c.x.denominator))
        im = mpq(int(c.y.numerator), int(c.y.denominator))
        if re:
            out[m] = re
        if im:
            out[_with_i(m)] = im
    return out


def _reduce(num, den):
    if not num:
        return {}, ONE_POLY
    if not den:
        raise DivisionByZero("zero denominator")
    if _is_one(den):
        return num, ONE_POLY
    g = _mono_content((num, den))
    if g:
        num = _mono_div(num, g)
        den = _mono_div(den, g)
    if len(den) > 1 and _variables(den):
        names = _variables(num, den)
        R = _sympy_ring(names)
        h, cn, cd = _to_sympy(num, R, names).cofactors(_to_sympy(den, R, names))
        if not h.is_ground:
            num = _from_sympy(cn, names)
            den = _from_sympy(cd, names)
    a, b = _lead_unit(den)
    if not (a == 1 and b == 0):
        u = _gauss_unit_inverse(a, b)
        num = _pmul(num, u)
        den = _pmul(den, u)
    return num, den


class Scalar:
    """Immutable reduced rational function over Q(i)."""

    __slots__ = ("num", "den", "_hash")

    def __init__(self, value=0):
        if isinstance(value, Scalar):
            self.num, self.den = value.num, value.den
        elif isinstance(value, complex):
            raise TypeError("use exact Gaussian rationals, not complex floats")
        else:
            q = mpq(value)
            self.num = {_EMPTY: q} if q else {}
            self.den = ONE_POLY
        self._hash = None

    @classmethod
    def _raw(cls, num, den):
        s = object.__new__(cls)
        s.num = num
        s.den = den
        s._hash = None
        return s

    @classmethod
    def _make(cls, num, den):
        num, den = _reduce(num, den)
        return cls._raw(num, den)

    @classmethod
    def param(cls, name):
        if name == IMAG_NAME:
            return IMAG
        return cls._raw({((name, 1),): _ONE_Q}, ONE_POLY)

    @classmethod
    def gaussian(cls, re, im=0):
        re, im = mpq(re), mpq(im)
        num = {}
        if re:
            num[_EMPTY] = re
        if im:
            num[((IMAG_NAME, 1),)] = im
        return cls._raw(num, ONE_POLY)

    @staticmethod
    def parse(text, params=None):
        from .dsl import parse_scalar

        return parse_scalar(text, params)

    # -- predicates -------------------------------------------------------
    def is_zero(self):
        return not self.num

    def __bool__(self):
        return bool(self.num)

    def is_polynomial(self):
        return _is_one(self.den)

    def is_constant(self):
        return not self.parameters()

    def parameters(self):
        return set(_variables(self.num, self.den))

    # -- arithmetic -------------------------------------------------------
    def __add__(self, other):
        if not isinstance(other, Scalar):
            if isinstance(other, (int, type(_ONE_Q))):
                other = Scalar(other)
            else:
                return NotImplemented
        if not other.num:
            return self
        if not self.num:
            return other
        if self.den is other.den or self.den == other.den:
            num = _padd(self.num, other.num)
            if self.den is ONE_POLY or _is_one(self.den):
                return Scalar._raw(num, ONE_POLY) if num else ZERO
            return Scalar._make(num, self.den)
        num = _padd(_pmul(self.num, other.den), _pmul(other.num, self.den))
        return Scalar._make(num, _pmul(self.den, other.den))

    __radd__ = __add__

    def __neg__(self):
        return Scalar._raw(_pneg(self.num), self.den)

    def __sub__(self, other):
        if not isinstance(other, Scalar):
            if isinstance(other, (int, type(_ONE_Q))):
                other = Scalar(other)
            else:
                return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return Scalar(other) - self

    def __mul__(self, other):
        if not isinstance(other, Scalar):
            if isinstance(other, (int, type(_ONE_Q))):
                other = Scalar(other)
            else:
                return NotImplemented
        if not self.num or not other.num:
            return ZERO
        if _is_one(self.den) and _is_one(other.den):
            return Scalar._raw(_pmul(self.num, other.num), ONE_POLY)
        return Scalar._make(_pmul(self.num, other.num), _pmul(self.den, other.den))

    __rmul__ = __mul__

    def inverse(self):
        if not self.num:
            raise DivisionByZero("division by zero scalar")
        return Scalar._make(dict(self.den), dict(self.num))

    def __truediv__(self, other):
        if not isinstance(other, Scalar):
            if isinstance(other, (int, type(_ONE_Q))):
                other = Scalar(other)
            else:
                return NotImplemented
        if not other.num:
            raise DivisionByZero("division by zero scalar")
        if not self.num:
            return ZERO
        return Scalar._make(_pmul(self.num, other.den), _pmul(self.den, other.num))

    def __rtruediv__(self, other):
        return Scalar(other) / self

    def __pow__(self, n):
        if not isinstance(n, int):
            return NotImplemented
        if n < 0:
            return self.inverse() ** (-n)
        result = ONE
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def conjugate(self):
        """Complex conjugate, treating the parameters as real."""

        def conj(p):
            return {m: (-c if any(v == IMAG_NAME for v, _ in m) else c) for m, c in p.items()}

        return Scalar._make(conj(self.num), conj(self.den))

    # -- comparison -------------------------------------------------------
    def __eq__(self, other):
        if isinstance(other, Scalar):
            return self.num == other.num and self.den == other.den
        if isinstance(other, (int, type(_ONE_Q))):
            return self == Scalar(other)
        return NotImplemented

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((frozenset(self.num.items()), frozenset(self.den.items())))
        return self._hash

    def as_rational(self):
        """Return the value as an mpq if this is a real constant, else raise."""
        if not self.num:
            return mpq(0)
        if _is_one(self.den) and len(self.num) == 1 and _EMPTY in self.num:
            return self.num[_EMPTY]
        raise ValueError(f"{self} is not a rational constant")

    # -- printing ---------------------------------------------------------
    def __str__(self):
        n = _poly_str(self.num)
        if _is_one(self.den):
            return n
        d = _poly_str(self.den)
        if len(self.num) > 1 or n.startswith("-"):
            n = f"({n})"
        if len(self.den) > 1 or not _is_monomial_word(self.den):
            d = f"({d})"
        return f"{n}/{d}"

    def __repr__(self):
        return f"Scalar({str(self)!r})"

    def to_sympy(self):
        import sympy

        def conv(p):
            expr = sympy.Integer(0)
            for m, c in p.items():
                t = sympy.Rational(int(c.numerator), int(c.denominator))
                for v, e in m:
                    t *= (sympy.I if v == IMAG_NAME else sympy.Symbol(v)) ** e
                expr += t
            return expr

        return conv(self.num) / conv(self.den)


def _is_monomial_word(p):
    (m, c), = p.items()
    return c == 1


def _coef_str(c):
    return str(c)


def _poly_str(p):
    if not p:
        return "0"
    # group real/imaginary parts per real monomial
    groups = {}
    for m, c in p.items():
        r, im = _strip_i(m)
        a, b = groups.get(r, (_ZERO, _ZERO))
        groups[r] = (a, b + c) if im else (a + c, b)
    terms = sorted(groups.items(), key=lambda t: _mono_key(t[0]), reverse=True)
    parts = []
    for r, (a, b) in terms:
        mono = "*".join(v if e == 1 else f"{v}^{e}" for v, e in r)
        if b == 0:
            coef, neg = abs(a), a < 0
            cs = "" if (coef == 1 and mono) else _coef_str(coef)
        elif a == 0:
            coef, neg = abs(b), b < 0
            cs = "i" if coef == 1 else f"{_coef_str(coef)}*i"
        else:
            neg = False
            sign = "+" if b > 0 else "-"
            bb = abs(b)
            ib = "i" if bb == 1 else f"{_coef_str(bb)}*i"
            cs = f"({_coef_str(a)} {sign} {ib})"
        body = "*".join(x for x in (cs, mono) if x)
        parts.append(("-" if neg else "+", body))
    out = parts[0][1] if parts[0][0] == "+" else "-" + parts[0][1]
    for sign, body in parts[1:]:
        out += f" {sign} {body}"
    return out


ZERO = Scalar(0)
ONE = Scalar(1)
IMAG = Scalar._raw({((IMAG_NAME, 1),): _ONE_Q}, ONE_POLY)


def _eval_poly(p, bindings):
    cache = {}
    total = ZERO
    for m, c in p.items():
        term = Scalar(c)
        for v, e in m:
            if v == IMAG_NAME:
                val = IMAG
            elif v in bindings:
                val = bindings[v]
            else:
                val = Scalar.param(v)
            key = (v, e)
            pw = cache.get(key)
            if pw is None:
                pw = cache[key] = val**e
            term = term * pw
        total = total + term
    return total


def substitute(s: Scalar, bindings: Mapping[str, object]) -> Scalar:
    """Evaluate the reduced fraction under ``param -> Scalar`` bindings.

    Raises PoleError when the denominator vanishes after substitution.
    """
    b = {k: (v if isinstance(v, Scalar) else Scalar(v)) for k, v in bindings.items()}
    for k, v in b.items():
        if k in v.parameters():
            raise ValueError(f"binding for {k} mentions {k}")
    num = _eval_poly(s.num, b)
    den = _eval_poly(s.den, b)
    if den.is_zero():
        raise PoleError(f"pole of {s} at {', '.join(f'{k}={v}' for k, v in b.items())}")
    return num / den


def limit_at(s: Scalar, param: str, value) -> Scalar:
    """Value at ``param = value`` after full cancellation.

    Scalars are always stored reduced, so this coincides with ``substitute``;
    a pole that survives cancellation is a genuine pole.
    """
    return substitute(s, {param: value})


def scalar_arith(a: Scalar, b: Scalar, op: str) -> Scalar:
    if op == "add":
        return a + b
    if op == "sub":
        return a - b
    if op == "mul":
        return a * b
    if op == "div":
        return a / b
    raise ValueError(f"unknown op {op!r}")
