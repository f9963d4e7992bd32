"""Polynomial tensor fields on flat R^n in the global affine chart.

Coordinates are the ``coordinates`` of a :class:`Context`; all covariant
derivatives reduce to partial derivatives because the chart is affine.

Conventions: for a symmetric bivector ``h`` the anchor sends ``dx_i`` to
``sum_l h_il d/dx_l``; for a skew bivector ``pi`` it sends ``dx_i`` to
``sum_l pi^{il} d/dx_l``.
"""

from __future__ import annotations

from fractions import Fraction
from itertools import combinations
from typing import Callable, Iterable, Mapping, Sequence

from .poly import Context, Poly

MAX_DEGREE = 4


def _as_poly(ctx: Context, value) -> Poly:
    if isinstance(value, Poly):
        return value.embed(ctx)
    return Poly.const(ctx, value)


def _sort_sign(idx: Sequence[int]) -> tuple[int, tuple[int, ...]]:
    """Sign of the sorting permutation (0 if an index repeats) and the sorted tuple."""
    idx = list(idx)
    if len(set(idx)) != len(idx):
        return 0, tuple(sorted(idx))
    sign = 1
    for i in range(len(idx)):
        for j in range(len(idx) - 1 - i):
            if idx[j] > idx[j + 1]:
                idx[j], idx[j + 1] = idx[j + 1], idx[j]
                sign = -sign
    return sign, tuple(idx)


class OneForm:
    """Polynomial 1-form ``sum_i a_i dx_i``."""

    __slots__ = ("ctx", "comps")

    def __init__(self, ctx: Context, comps: Iterable) -> None:
        self.ctx = ctx
        self.comps = tuple(_as_poly(ctx, c) for c in comps)
        if len(self.comps) != ctx.ncoords:
            raise ValueError("one-form length must equal the number of coordinates")

    @classmethod
    def coordinate(cls, ctx: Context, i: int) -> OneForm:
        return cls(ctx, [int(i == j) for j in range(ctx.ncoords)])

    @classmethod
    def exact(cls, f: Poly) -> OneForm:
        return cls(f.ctx, [f.diff_coord(l) for l in range(f.ctx.ncoords)])

    @property
    def dim(self) -> int:
        return len(self.comps)

    def __add__(self, other: OneForm) -> OneForm:
        return OneForm(self.ctx, [a + b for a, b in zip(self.comps, other.comps)])

    def __sub__(self, other: OneForm) -> OneForm:
        return OneForm(self.ctx, [a - b for a, b in zip(self.comps, other.comps)])

    def scale(self, f) -> OneForm:
        return OneForm(self.ctx, [f * a for a in self.comps])

    def is_zero(self) -> bool:
        return all(c.is_zero() for c in self.comps)

    def __eq__(self, other: object) -> bool:
        return isinstance(other, OneForm) and self.comps == other.comps

    def __hash__(self) -> int:
        return hash(self.comps)

    def __repr__(self) -> str:
        return f"OneForm({[str(c) for c in self.comps]})"


class MultiVector:
    """Alternating p-vector field; only increasing index tuples are stored."""

    __slots__ = ("ctx", "degree", "comps")

    def __init__(self, ctx: Context, degree: int, comps: Mapping | None = None) -> None:
        if not 0 <= degree <= MAX_DEGREE:
            raise ValueError(f"degree must lie in 0..{MAX_DEGREE}")
        n = ctx.ncoords
        out: dict = {}
        for idx, value in (comps or {}).items():
            idx = tuple(idx)
            if len(idx) != degree or any(not 0 <= i < n for i in idx):
                raise ValueError(f"bad index tuple {idx} for degree {degree} in dimension {n}")
            sign, key = _sort_sign(idx)
            if not sign:
                continue
            p = _as_poly(ctx, value)
            out[key] = out[key] + p * sign if key in out else p * sign
        self.ctx = ctx
        self.degree = degree
        self.comps = {k: v for k, v in sorted(out.items()) if not v.is_zero()}

    @classmethod
    def function(cls, f: Poly) -> MultiVector:
        return cls(f.ctx, 0, {(): f})

    @classmethod
    def vector_field(cls, ctx: Context, comps: Sequence) -> MultiVector:
        if len(comps) != ctx.ncoords:
            raise ValueError("vector field length must equal the number of coordinates")
        return cls(ctx, 1, {(i,): c for i, c in enumerate(comps)})

    @classmethod
    def zero(cls, ctx: Context, degree: int) -> MultiVector:
        return cls(ctx, degree)

    @property
    def dim(self) -> int:
        return self.ctx.ncoords

    def __getitem__(self, idx) -> Poly:
        if isinstance(idx, int):
            idx = (idx,)
        sign, key = _sort_sign(idx)
        if not sign or key not in self.comps:
            return Poly.zero(self.ctx)
        v = self.comps[key]
        return v if sign > 0 else -v

    def vector(self) -> list[Poly]:
        """Components of a vector field as a list."""
        if self.degree != 1:
            raise ValueError("not a vector field")
        return [self[(i,)] for i in range(self.dim)]

    def scalar(self) -> Poly:
        if self.degree != 0:
            raise ValueError("not a function")
        return self[()]

    def is_zero(self) -> bool:
        return not self.comps

    def _check(self, other: MultiVector) -> None:
        if self.ctx != other.ctx or self.degree != other.degree:
            raise ValueError("multivectors differ in context or degree")

    def __add__(self, other: MultiVector) -> MultiVector:
        self._check(other)
        out = dict(self.comps)
        for k, v in other.comps.items():
            out[k] = out[k] + v if k in out else v
        return MultiVector(self.ctx, self.degree, out)

    def __sub__(self, other: MultiVector) -> MultiVector:
        return self + (-other)

    def __neg__(self) -> MultiVector:
        return MultiVector(self.ctx, self.degree, {k: -v for k, v in self.comps.items()})

    def scale(self, f) -> MultiVector:
        return MultiVector(self.ctx, self.degree, {k: f * v for k, v in self.comps.items()})

    def __eq__(self, other: object) -> bool:
        return (
            isinstance(other, MultiVector)
            and self.ctx == other.ctx
            and self.degree == other.degree
            and self.comps == other.comps
        )

    def __hash__(self) -> int:
        return hash((self.ctx, self.degree, tuple(self.comps.items())))

    def to_dict(self) -> dict[str, str]:
        """Nonzero components keyed by comma-joined 1-based indices."""
        return {",".join(str(i + 1) for i in k): str(v) for k, v in self.comps.items()}

    def __repr__(self) -> str:
        return f"MultiVector(degree={self.degree}, {self.to_dict()})"


def skew_bivector(ctx: Context, comps: Mapping[tuple[int, int], object]) -> MultiVector:
    """Skew bivector from its (i, j) coefficients, extended by antisymmetry."""
    return MultiVector(ctx, 2, comps)


class SymBivector:
    """Symmetric bivector field ``sum h_ij d/dx_i (x) d/dx_j``."""

    __slots__ = ("ctx", "rows")

    def __init__(self, ctx: Context, matrix: Sequence[Sequence]) -> None:
        n = ctx.ncoords
        rows = tuple(tuple(_as_poly(ctx, x) for x in row) for row in matrix)
        if len(rows) != n or any(len(r) != n for r in rows):
            raise ValueError(f"bivector must be a {n}x{n} matrix")
        for i in range(n):
            for j in range(i):
                if rows[i][j] != rows[j][i]:
                    raise ValueError(f"bivector is not symmetric at ({j + 1},{i + 1})")
        self.ctx = ctx
        self.rows = rows

    @classmethod
    def zero(cls, ctx: Context) -> SymBivector:
        n = ctx.ncoords
        return cls(ctx, [[0] * n for _ in range(n)])

    @property
    def dim(self) -> int:
        return len(self.rows)

    def __getitem__(self, ij: tuple[int, int]) -> Poly:
        i, j = ij
        return self.rows[i][j]

    def anchor(self, alpha: OneForm) -> MultiVector:
        """The vector field h#(alpha)."""
        n = self.dim
        comps = []
        for l in range(n):
            acc = Poly.zero(self.ctx)
            for i in range(n):
                if alpha.comps[i] and self.rows[i][l]:
                    acc = acc + alpha.comps[i] * self.rows[i][l]
            comps.append(acc)
        return MultiVector.vector_field(self.ctx, comps)

    def anchor_coordinate(self, i: int) -> MultiVector:
        return MultiVector.vector_field(self.ctx, self.rows[i])

    def evaluate(self, values: Mapping) -> list[list[Fraction]]:
        return [[x.eval(values) for x in row] for row in self.rows]

    def subs(self, values: Mapping, ctx: Context | None = None) -> SymBivector:
        target = ctx or self.ctx
        return SymBivector(target, [[x.subs(values, target) for x in row] for row in self.rows])

    def embed(self, ctx: Context) -> SymBivector:
        return SymBivector(ctx, [[x.embed(ctx) for x in row] for row in self.rows])

    def is_zero(self) -> bool:
        return all(x.is_zero() for row in self.rows for x in row)

    def __add__(self, other: SymBivector) -> SymBivector:
        return SymBivector(self.ctx, [[a + b for a, b in zip(r, s)] for r, s in zip(self.rows, other.rows)])

    def __eq__(self, other: object) -> bool:
        return isinstance(other, SymBivector) and self.ctx == other.ctx and self.rows == other.rows

    def __hash__(self) -> int:
        return hash((self.ctx, self.rows))

    def to_rows(self) -> list[list[str]]:
        return [[str(x) for x in row] for row in self.rows]

    def __repr__(self) -> str:
        return f"SymBivector({self.to_rows()})"


def directional(field: Sequence[Poly], f: Poly, partials: Sequence[Poly] | None = None) -> Poly:
    """X(f) = sum_l X^l df/dx_l."""
    acc = Poly.zero(f.ctx)
    for l, x in enumerate(field):
        if x:
            d = partials[l] if partials is not None else f.diff_coord(l)
            if d:
                acc = acc + x * d
    return acc


class _Partials:
    """Memoized partial derivatives of polynomials."""

    def __init__(self) -> None:
        self._cache: dict = {}

    def __call__(self, p: Poly) -> list[Poly]:
        hit = self._cache.get(p)
        if hit is None:
            hit = [p.diff_coord(l) for l in range(p.ctx.ncoords)]
            self._cache[p] = hit
        return hit


def schouten_self(pi: MultiVector) -> MultiVector:
    """[pi, pi] for a bivector, via the flat-chart formula.

    Component (i<j<k) is 2 * sum over cyclic (i,j,k) of sum_l pi^{il} d_l pi^{jk}.
    """
    if pi.degree != 2:
        raise ValueError("schouten_self expects a bivector")
    n = pi.dim
    ctx = pi.ctx
    partials = _Partials()
    out = {}
    for i, j, k in combinations(range(n), 3):
        acc = Poly.zero(ctx)
        for a, b, c in ((i, j, k), (j, k, i), (k, i, j)):
            bc = pi[(b, c)]
            if not bc:
                continue
            d = partials(bc)
            for l in range(n):
                al = pi[(a, l)]
                if al and d[l]:
                    acc = acc + al * d[l]
        out[(i, j, k)] = acc * 2
    return MultiVector(ctx, 3, out)


def divergence(t: MultiVector | SymBivector) -> MultiVector:
    """Flat divergence: contract the derivative index with the first slot."""
    if isinstance(t, SymBivector):
        n = t.dim
        comps = []
        for j in range(n):
            acc = Poly.zero(t.ctx)
            for i in range(n):
                if t[(i, j)]:
                    acc = acc + t[(i, j)].diff_coord(i)
            comps.append(acc)
        return MultiVector.vector_field(t.ctx, comps)
    if t.degree == 0:
        raise ValueError("divergence of a function is undefined")
    n = t.dim
    out = {}
    for rest in combinations(range(n), t.degree - 1):
        acc = Poly.zero(t.ctx)
        for l in range(n):
            c = t[(l,) + rest]
            if c:
                acc = acc + c.diff_coord(l)
        out[rest] = acc
    return MultiVector(t.ctx, t.degree - 1, out)


def hess_pairing(h: SymBivector, f: Poly) -> Poly:
    """sum_ij h_ij d^2 f / dx_i dx_j."""
    n = h.dim
    first = [f.diff_coord(i) for i in range(n)]
    acc = Poly.zero(h.ctx)
    for i in range(n):
        if not first[i]:
            continue
        for j in range(n):
            if h[(i, j)]:
                second = first[i].diff_coord(j)
                if second:
                    acc = acc + h[(i, j)] * second
    return acc


def lie_bracket(x: MultiVector, y: MultiVector) -> MultiVector:
    """Commutator of two vector fields."""
    xs, ys = x.vector(), y.vector()
    comps = []
    for k in range(x.dim):
        comps.append(directional(xs, ys[k]) - directional(ys, xs[k]))
    return MultiVector.vector_field(x.ctx, comps)


Bracket = Callable[[int, int], Mapping[int, Poly]]


def algebroid_differential(anchor: Sequence[Sequence[Poly]], q: MultiVector, bracket: Bracket | None = None) -> MultiVector:
    """Lie algebroid differential of ``q`` evaluated on coordinate 1-forms.

    ``anchor[a]`` lists the components of the anchor image of ``dz_a``;
    ``bracket(a, b)`` gives the coefficients of ``[dz_a, dz_b]`` in the
    coordinate coframe (``None`` means all such brackets vanish).
    """
    ctx = q.ctx
    n = q.dim
    p = q.degree
    if p + 1 > min(n, MAX_DEGREE):
        raise ValueError("degree overflow")
    partials = _Partials()
    out = {}
    for idx in combinations(range(n), p + 1):
        acc = Poly.zero(ctx)
        for j, a in enumerate(idx):
            comp = q[idx[:j] + idx[j + 1:]]
            if comp:
                term = directional(anchor[a], comp, partials(comp))
                acc = acc + term if j % 2 == 0 else acc - term
        if bracket is not None:
            for x, y in combinations(range(p + 1), 2):
                rest = tuple(v for t, v in enumerate(idx) if t not in (x, y))
                for c, g in bracket(idx[x], idx[y]).items():
                    comp = q[(c,) + rest]
                    if comp and g:
                        term = g * comp
                        acc = acc + term if (x + y) % 2 == 0 else acc - term
        out[idx] = acc
    return MultiVector(ctx, p + 1, out)
