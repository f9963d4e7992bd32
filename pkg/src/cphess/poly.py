"""Exact sparse polynomials over the rationals.

A :class:`Context` fixes an ordered symbol table (coordinates, then
parameters, then an optional cosine/sine pair tied to one angle
coordinate).  A :class:`Poly` is a numerator over every symbol of its
context divided by an optional denominator that involves parameters only.
Every value is kept in a canonical form, so equality is structural.
"""

from __future__ import annotations

import re
from fractions import Fraction
from functools import lru_cache
from itertools import repeat
from math import comb
from typing import Iterable, Mapping, Union

COORDINATE = "coordinate"
PARAMETER = "parameter"
TRIG = "trig"

_IDENT = re.compile(r"[A-Za-z_][A-Za-z0-9_]*\Z")

Exponent = tuple
Terms = dict
Number = Union[int, Fraction]


class PolyError(ValueError):
    """Raised for operations that make no sense on the given polynomials."""


class Symbol:
    __slots__ = ("name", "kind")

    def __init__(self, name: str, kind: str) -> None:
        self.name = name
        self.kind = kind

    def __repr__(self) -> str:
        return f"Symbol({self.name!r}, {self.kind!r})"

    def __eq__(self, other: object) -> bool:
        return isinstance(other, Symbol) and (self.name, self.kind) == (other.name, other.kind)

    def __hash__(self) -> int:
        return hash((self.name, self.kind))


class Context:
    """Ordered symbol table shared by all polynomials that interact.

    ``trig`` is ``None`` or a triple ``(angle, cos, sin)`` where ``angle``
    must be one of the coordinates.  The cosine and sine symbols obey
    ``sin^2 = 1 - cos^2`` and differentiate along the angle.
    """

    def __init__(
        self,
        coordinates: Iterable[str] = (),
        parameters: Iterable[str] = (),
        trig: tuple[str, str, str] | None = None,
    ) -> None:
        coords = tuple(coordinates)
        params = tuple(parameters)
        symbols = [Symbol(n, COORDINATE) for n in coords] + [Symbol(n, PARAMETER) for n in params]
        if trig is not None:
            angle, cos_name, sin_name = trig
            if angle not in coords:
                raise PolyError(f"trig angle {angle!r} must be a coordinate")
            symbols += [Symbol(cos_name, TRIG), Symbol(sin_name, TRIG)]
            trig = (angle, cos_name, sin_name)
        names = [s.name for s in symbols]
        for name in names:
            if not _IDENT.match(name):
                raise PolyError(f"invalid identifier {name!r}")
        if len(set(names)) != len(names):
            raise PolyError("symbol names must be unique")

        self.coordinates = coords
        self.parameters = params
        self.trig = trig
        self.symbols = tuple(symbols)
        self.names = tuple(names)
        self.index = {n: i for i, n in enumerate(names)}
        self.ncoords = len(coords)
        self.nvars = len(names)
        self.param_slice = slice(len(coords), len(coords) + len(params))
        if trig is None:
            self.angle_index = self.cos_index = self.sin_index = None
        else:
            self.angle_index = self.index[trig[0]]
            self.cos_index = self.index[trig[1]]
            self.sin_index = self.index[trig[2]]
        self._key = (coords, params, trig)
        self._hash = hash(self._key)

    def __eq__(self, other: object) -> bool:
        return isinstance(other, Context) and self._key == other._key

    def __hash__(self) -> int:
        return self._hash

    def __repr__(self) -> str:
        parts = [f"coordinates={list(self.coordinates)}"]
        if self.parameters:
            parts.append(f"parameters={list(self.parameters)}")
        if self.trig:
            parts.append(f"trig={self.trig}")
        return f"Context({', '.join(parts)})"

    def kind(self, name: str) -> str:
        try:
            return self.symbols[self.index[name]].kind
        except KeyError:
            raise PolyError(f"unknown symbol {name!r}") from None

    def zero_exponent(self) -> Exponent:
        return (0,) * self.nvars

    def with_parameters(self, extra: Iterable[str]) -> Context:
        params = self.parameters + tuple(p for p in extra if p not in self.parameters)
        return Context(self.coordinates, params, self.trig)

    def to_dict(self) -> dict:
        trig = None
        if self.trig:
            trig = {"angle": self.trig[0], "cos": self.trig[1], "sin": self.trig[2]}
        return {"coordinates": list(self.coordinates), "parameters": list(self.parameters), "trig": trig}

    @classmethod
    def from_dict(cls, data: Mapping) -> Context:
        trig = data.get("trig")
        if trig is not None:
            trig = (trig["angle"], trig["cos"], trig["sin"])
        return cls(data.get("coordinates", ()), data.get("parameters", ()), trig)


def grlex_key(e: Exponent) -> tuple:
    return (sum(e), e)


def _frac(x: Number) -> Fraction:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, int):
        return Fraction(x)
    raise TypeError(f"expected an exact rational, got {type(x).__name__}")


def _add_exp(a: Exponent, b: Exponent) -> Exponent:
    return tuple(x + y for x, y in zip(a, b))


def _mul_terms(a: Terms, b: Terms) -> Terms:
    out: Terms = {}
    for ea, ca in a.items():
        for eb, cb in b.items():
            e = _add_exp(ea, eb)
            out[e] = out.get(e, 0) + ca * cb
    return {e: c for e, c in out.items() if c}


def _add_terms(a: Terms, b: Terms, sign: int = 1) -> Terms:
    out = dict(a)
    for e, c in b.items():
        v = out.get(e, 0) + sign * c
        if v:
            out[e] = v
        else:
            out.pop(e, None)
    return out


def _scale_terms(a: Terms, k: Fraction) -> Terms:
    if not k:
        return {}
    return {e: c * k for e, c in a.items()}


def _trig_reduce(ctx: Context, terms: Terms) -> Terms:
    si, ci = ctx.sin_index, ctx.cos_index
    if si is None or all(e[si] < 2 for e in terms):
        return terms
    out: Terms = {}
    for e, c in terms.items():
        k = e[si]
        if k < 2:
            out[e] = out.get(e, 0) + c
            continue
        q, rem = divmod(k, 2)
        base = list(e)
        base[si] = rem
        # s^(2q) = (1 - c^2)^q
        for j in range(q + 1):
            f = list(base)
            f[ci] += 2 * j
            key = tuple(f)
            out[key] = out.get(key, 0) + c * comb(q, j) * (-1) ** j
    return {e: c for e, c in out.items() if c}


@lru_cache(maxsize=None)
def _sympy_ring(names: tuple):
    from sympy.polys.domains import QQ
    from sympy.polys.rings import ring

    R, *_ = ring(",".join(names), QQ)
    return R, QQ


def _cancel_general(ctx: Context, num: Terms, den: Terms) -> tuple[Terms, Terms]:
    R, QQ = _sympy_ring(ctx.names)
    to_r = lambda t: R.from_dict({e: QQ(c.numerator, c.denominator) for e, c in t.items()})
    _, p, q = to_r(num).cofactors(to_r(den))
    back = lambda f: {tuple(e): Fraction(int(c.numerator), int(c.denominator)) for e, c in f.items()}
    return back(p), back(q)


def _canonical(ctx: Context, num: Terms, den: Terms | None) -> tuple[Terms, Terms | None]:
    """Bring ``num/den`` to lowest terms with a monic (grlex-leading) denominator."""
    num = _trig_reduce(ctx, {e: c for e, c in num.items() if c})
    if not num:
        return {}, None
    if den is None:
        return num, None
    zero = ctx.zero_exponent()
    if len(den) == 1:
        (m, k), = den.items()
        g = m
        for e in num:
            g = tuple(min(a, b) for a, b in zip(g, e))
            if not any(g):
                break
        if any(g):
            num = {tuple(a - b for a, b in zip(e, g)): c for e, c in num.items()}
            m = tuple(a - b for a, b in zip(m, g))
        num = _scale_terms(num, 1 / k)
        return num, (None if m == zero else {m: Fraction(1)})
    num, den = _cancel_general(ctx, num, den)
    lead = max(den, key=grlex_key)
    lc = den[lead]
    if len(den) == 1 and lead == zero:
        return _scale_terms(num, 1 / lc), None
    if lc != 1:
        num = _scale_terms(num, 1 / lc)
        den = _scale_terms(den, 1 / lc)
    return num, den


def _fmt_rational(c: Fraction) -> str:
    return str(c.numerator) if c.denominator == 1 else f"{c.numerator}/{c.denominator}"


def _fmt_terms(names: tuple, terms: Terms) -> str:
    if not terms:
        return "0"
    pieces = []
    for e in sorted(terms, key=grlex_key, reverse=True):
        c = terms[e]
        mono = "*".join(n if k == 1 else f"{n}^{k}" for n, k in zip(names, e) if k)
        mag = abs(c)
        if not mono:
            body = _fmt_rational(mag)
        elif mag == 1:
            body = mono
        else:
            body = f"{_fmt_rational(mag)}*{mono}"
        if not pieces:
            pieces.append(body if c > 0 else f"-{body}")
        else:
            pieces.append(f"+ {body}" if c > 0 else f"- {body}")
    return " ".join(pieces)


class Poly:
    """Canonical polynomial (numerator / parameter-only denominator)."""

    __slots__ = ("ctx", "terms", "den", "_hash")

    def __init__(self, ctx: Context, terms: Mapping | None = None, den: Mapping | None = None) -> None:
        num = {tuple(e): _frac(c) for e, c in (terms or {}).items()}
        d = None
        if den is not None:
            d = {tuple(e): _frac(c) for e, c in den.items() if c}
            if not d:
                raise ZeroDivisionError("zero denominator")
            for e in d:
                if len(e) != ctx.nvars:
                    raise PolyError("exponent length does not match context")
            _check_param_only(ctx, d)
        for e in num:
            if len(e) != ctx.nvars:
                raise PolyError("exponent length does not match context")
        self.ctx = ctx
        self.terms, self.den = _canonical(ctx, num, d)
        self._hash = None

    @classmethod
    def _raw(cls, ctx: Context, terms: Terms, den: Terms | None) -> Poly:
        p = object.__new__(cls)
        p.ctx = ctx
        p.terms = terms
        p.den = den
        p._hash = None
        return p

    @classmethod
    def _make(cls, ctx: Context, terms: Terms, den: Terms | None) -> Poly:
        t, d = _canonical(ctx, terms, den)
        return cls._raw(ctx, t, d)

    # constructors -----------------------------------------------------
    @classmethod
    def zero(cls, ctx: Context) -> Poly:
        return cls._raw(ctx, {}, None)

    @classmethod
    def const(cls, ctx: Context, value: Number) -> Poly:
        v = _frac(value)
        return cls._raw(ctx, {ctx.zero_exponent(): v} if v else {}, None)

    @classmethod
    def var(cls, ctx: Context, name: str) -> Poly:
        if name not in ctx.index:
            raise PolyError(f"unknown symbol {name!r}")
        e = [0] * ctx.nvars
        e[ctx.index[name]] = 1
        return cls._raw(ctx, {tuple(e): Fraction(1)}, None)

    @classmethod
    def coord(cls, ctx: Context, i: int) -> Poly:
        return cls.var(ctx, ctx.coordinates[i])

    # predicates -------------------------------------------------------
    def is_zero(self) -> bool:
        return not self.terms

    def __bool__(self) -> bool:
        return bool(self.terms)

    def is_constant(self) -> bool:
        return self.den is None and all(not any(e) for e in self.terms)

    def constant_value(self) -> Fraction:
        if not self.is_constant():
            raise PolyError(f"{self} is not constant")
        return next(iter(self.terms.values()), Fraction(0))

    def is_param_only(self) -> bool:
        """True for elements of the parameter fraction field."""
        ps = self.ctx.param_slice
        return all(not any(e[: ps.start]) and not any(e[ps.stop:]) for e in self.terms)

    def free_symbols(self) -> set[str]:
        used = set()
        for t in (self.terms, self.den or {}):
            for e in t:
                used.update(n for n, k in zip(self.ctx.names, e) if k)
        return used

    def total_degree(self) -> int:
        return max((sum(e) for e in self.terms), default=-1)

    # arithmetic -------------------------------------------------------
    def _coerce(self, other) -> Poly:
        if isinstance(other, Poly):
            if other.ctx != self.ctx:
                raise PolyError("polynomials belong to different contexts")
            return other
        if isinstance(other, (int, Fraction)):
            return Poly.const(self.ctx, other)
        return NotImplemented

    def __add__(self, other) -> Poly:
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return self._addsub(o, 1)

    __radd__ = __add__

    def __sub__(self, other) -> Poly:
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return self._addsub(o, -1)

    def __rsub__(self, other) -> Poly:
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return o._addsub(self, -1)

    def _addsub(self, o: Poly, sign: int) -> Poly:
        if not o.terms:
            return self
        if not self.terms:
            return o if sign == 1 else -o
        if self.den == o.den:
            t = _add_terms(self.terms, o.terms, sign)
            if self.den is None:
                return Poly._raw(self.ctx, t, None)
            return Poly._make(self.ctx, t, self.den)
        a = self.terms if o.den is None else _mul_terms(self.terms, o.den)
        b = o.terms if self.den is None else _mul_terms(o.terms, self.den)
        den = _mul_or_none(self.den, o.den)
        return Poly._make(self.ctx, _add_terms(a, b, sign), den)

    def __neg__(self) -> Poly:
        return Poly._raw(self.ctx, {e: -c for e, c in self.terms.items()}, self.den)

    def __pos__(self) -> Poly:
        return self

    def __mul__(self, other) -> Poly:
        if isinstance(other, (int, Fraction)):
            if not other:
                return Poly.zero(self.ctx)
            return Poly._raw(self.ctx, _scale_terms(self.terms, _frac(other)), self.den)
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        if not self.terms or not o.terms:
            return Poly.zero(self.ctx)
        t = _mul_terms(self.terms, o.terms)
        if self.den is None and o.den is None:
            return Poly._raw(self.ctx, _trig_reduce(self.ctx, t), None)
        return Poly._make(self.ctx, t, _mul_or_none(self.den, o.den))

    __rmul__ = __mul__

    def __truediv__(self, other) -> Poly:
        if isinstance(other, (int, Fraction)):
            if not other:
                raise ZeroDivisionError("division by zero")
            return Poly._raw(self.ctx, _scale_terms(self.terms, 1 / _frac(other)), self.den)
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        if not o.terms:
            raise ZeroDivisionError("division by zero polynomial")
        if not o.is_param_only():
            raise PolyError("division by an expression containing coordinate symbols")
        num = self.terms if o.den is None else _mul_terms(self.terms, o.den)
        return Poly._make(self.ctx, num, _mul_or_none(self.den, o.terms))

    def __rtruediv__(self, other) -> Poly:
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return o / self

    def __pow__(self, k: int) -> Poly:
        if not isinstance(k, int) or k < 0:
            raise PolyError("only natural exponents are supported")
        result = Poly.const(self.ctx, 1)
        base = self
        while k:
            if k & 1:
                result = result * base
            k >>= 1
            if k:
                base = base * base
        return result

    # comparison -------------------------------------------------------
    def __eq__(self, other: object) -> bool:
        if isinstance(other, (int, Fraction)):
            return self.is_constant() and self.constant_value() == other if self.terms else other == 0
        if not isinstance(other, Poly):
            return NotImplemented
        return self.ctx == other.ctx and self.terms == other.terms and self.den == other.den

    def __hash__(self) -> int:
        if self._hash is None:
            den = frozenset(self.den.items()) if self.den else None
            self._hash = hash((self.ctx, frozenset(self.terms.items()), den))
        return self._hash

    # calculus ---------------------------------------------------------
    def diff(self, name: str) -> Poly:
        """Formal partial derivative; trig symbols are not valid variables."""
        ctx = self.ctx
        kind = ctx.kind(name)
        if kind == TRIG:
            raise PolyError(f"cannot differentiate with respect to trig symbol {name!r}")
        i = ctx.index[name]
        dn = _diff_terms(self.terms, i)
        if i == ctx.angle_index:
            ci, si = ctx.cos_index, ctx.sin_index
            minus_s = {_unit(ctx, si): Fraction(-1)}
            plus_c = {_unit(ctx, ci): Fraction(1)}
            dn = _add_terms(dn, _mul_terms(_diff_terms(self.terms, ci), minus_s))
            dn = _add_terms(dn, _mul_terms(_diff_terms(self.terms, si), plus_c))
        if self.den is None:
            return Poly._make(ctx, dn, None)
        dd = _diff_terms(self.den, i)
        if not dd:
            return Poly._make(ctx, dn, self.den)
        top = _add_terms(_mul_terms(dn, self.den), _mul_terms(self.terms, dd), -1)
        return Poly._make(ctx, top, _mul_terms(self.den, self.den))

    def diff_coord(self, i: int) -> Poly:
        return self.diff(self.ctx.coordinates[i])

    # evaluation and substitution --------------------------------------
    def eval(self, values: Mapping[str, Number]) -> Fraction:
        """Evaluate exactly; every symbol that occurs must be assigned."""
        names = self.ctx.names
        vals = []
        for n in names:
            v = values.get(n)
            vals.append(None if v is None else _frac(v))

        def ev(terms: Terms) -> Fraction:
            total = Fraction(0)
            for e, c in terms.items():
                term = c
                for k, v, n in zip(e, vals, names):
                    if k:
                        if v is None:
                            raise PolyError(f"no value for symbol {n!r}")
                        term *= v**k
                total += term
            return total

        num = ev(self.terms)
        if self.den is None:
            return num
        d = ev(self.den)
        if not d:
            raise ZeroDivisionError("denominator vanishes at this point")
        return num / d

    def subs(self, values: Mapping[str, "Poly | Number"], ctx: Context | None = None) -> Poly:
        """Substitute symbols by polynomials or numbers.

        The result lives in ``ctx`` (default: this context); symbols left
        untouched must exist there.
        """
        target = ctx or self.ctx
        images = []
        for n in self.ctx.names:
            if n in values:
                v = values[n]
                images.append(v.embed(target) if isinstance(v, Poly) else Poly.const(target, v))
            elif n in target.index:
                images.append(None)
            else:
                images.append(False)
        var_cache: dict = {}

        def image_of(i: int) -> Poly:
            if i not in var_cache:
                img = images[i]
                if img is False:
                    raise PolyError(f"symbol {self.ctx.names[i]!r} has no image in target context")
                var_cache[i] = Poly.var(target, self.ctx.names[i]) if img is None else img
            return var_cache[i]

        pow_cache: dict = {}

        def power(i: int, k: int) -> Poly:
            key = (i, k)
            if key not in pow_cache:
                pow_cache[key] = image_of(i) ** k
            return pow_cache[key]

        def build(terms: Terms) -> Poly:
            total = Poly.zero(target)
            for e, c in terms.items():
                term = Poly.const(target, c)
                for i, k in enumerate(e):
                    if k:
                        term = term * power(i, k)
                total = total + term
            return total

        num = build(self.terms)
        if self.den is None:
            return num
        return num / build(self.den)

    def embed(self, ctx: Context) -> Poly:
        """Re-express this polynomial in a context that has all its symbols."""
        if ctx == self.ctx:
            return self
        positions = []
        for n, sym in zip(self.ctx.names, self.ctx.symbols):
            j = ctx.index.get(n)
            if j is not None and ctx.symbols[j].kind != sym.kind:
                j = None
            positions.append(j)
        def move(terms: Terms) -> Terms:
            out: Terms = {}
            for e, c in terms.items():
                f = [0] * ctx.nvars
                for i, k in enumerate(e):
                    if k:
                        j = positions[i]
                        if j is None:
                            raise PolyError(f"symbol {self.ctx.names[i]!r} is not available in target context")
                        f[j] = k
                out[tuple(f)] = c
            return out

        if self.ctx.trig and ctx.trig != self.ctx.trig:
            ci, si = self.ctx.cos_index, self.ctx.sin_index
            if any(e[ci] or e[si] for e in self.terms):
                raise PolyError("target context declares a different trig pair")
        return Poly._make(ctx, move(self.terms), move(self.den) if self.den else None)

    def coeff(self, monomial: Mapping[str, int]) -> Poly:
        """Coefficient of a coordinate/trig monomial, as a parameter-field element."""
        ctx = self.ctx
        want = [0] * ctx.nvars
        for n, k in monomial.items():
            if ctx.kind(n) == PARAMETER:
                raise PolyError("coefficients are taken with respect to non-parameter symbols")
            want[ctx.index[n]] = k
        ps = ctx.param_slice
        out: Terms = {}
        for e, c in self.terms.items():
            if all(e[i] == want[i] for i in range(ctx.nvars) if not ps.start <= i < ps.stop):
                f = [0] * ctx.nvars
                f[ps] = e[ps]
                out[tuple(f)] = c
        return Poly._make(ctx, out, self.den)

    # printing ---------------------------------------------------------
    def __str__(self) -> str:
        num = _fmt_terms(self.ctx.names, self.terms)
        if self.den is None:
            return num
        return f"({num})/({_fmt_terms(self.ctx.names, self.den)})"

    def __repr__(self) -> str:
        return f"Poly({str(self)!r})"


def _unit(ctx: Context, i: int) -> Exponent:
    e = [0] * ctx.nvars
    e[i] = 1
    return tuple(e)


def _diff_terms(terms: Terms, i: int) -> Terms:
    out: Terms = {}
    for e, c in terms.items():
        k = e[i]
        if k:
            f = list(e)
            f[i] = k - 1
            out[tuple(f)] = c * k
    return out


def _mul_or_none(a: Terms | None, b: Terms | None) -> Terms | None:
    if a is None:
        return b
    if b is None:
        return a
    return _mul_terms(a, b)


def _check_param_only(ctx: Context, terms: Terms) -> None:
    ps = ctx.param_slice
    for e in terms:
        if any(e[: ps.start]) or any(e[ps.stop:]):
            raise PolyError("denominators may only involve parameter symbols")


def normalize(raw: Iterable[tuple[Exponent, Number]], ctx: Context) -> Poly:
    """Build a canonical polynomial from a raw term list (duplicates allowed)."""
    acc: Terms = {}
    for e, c in raw:
        e = tuple(e)
        if len(e) != ctx.nvars:
            raise PolyError("exponent length does not match context")
        acc[e] = acc.get(e, 0) + _frac(c)
    return Poly._make(ctx, acc, None)


def param_scalar(ctx: Context, numerator: Poly | Number, denominator: Poly | Number = 1) -> Poly:
    """Element of the parameter fraction field, reduced to lowest terms."""
    num = numerator if isinstance(numerator, Poly) else Poly.const(ctx, numerator)
    den = denominator if isinstance(denominator, Poly) else Poly.const(ctx, denominator)
    if not (num.is_param_only() and den.is_param_only()):
        raise PolyError("parameter scalars may only involve parameter symbols")
    return num / den


ParamScalar = Poly


def as_number(x: "Poly | Number") -> "Poly | Fraction":
    """Collapse constant polynomials and ints to Fractions; leave the rest."""
    if isinstance(x, Poly):
        return x.constant_value() if x.is_constant() else x
    return _frac(x)


def zeros(ctx: Context, n: int) -> list[Poly]:
    return list(repeat(Poly.zero(ctx), n))
