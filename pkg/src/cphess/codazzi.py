"""Contravariant Codazzi structures on flat R^n.

Everything here is computed in the affine chart: the defect tensor, the
cotangent algebroid (bracket, anchor, flat connection D, differential
d_h), divergence and modular fields, point algebras and leaf metrics.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from typing import Mapping, Sequence

from . import linalg
from .algebra import AlgebraSC
from .multivector import (
    MultiVector,
    OneForm,
    SymBivector,
    _Partials,
    algebroid_differential,
    directional,
    divergence,
    hess_pairing,
    lie_bracket,
)
from .poly import Poly, as_number


@dataclass(frozen=True)
class DefectTensor:
    """Nonzero entries (i<j, k) of the Codazzi defect, 0-based."""

    dim: int
    entries: Mapping[tuple[int, int, int], Poly]

    def is_zero(self) -> bool:
        return not self.entries

    def entry(self, i: int, j: int, k: int) -> Poly | int:
        if i == j:
            return 0
        if i > j:
            v = self.entries.get((j, i, k))
            return -v if v is not None else 0
        return self.entries.get((i, j, k), 0)

    def witness(self) -> list[dict]:
        return [{"entry": [i + 1, j + 1, k + 1], "value": str(v)} for (i, j, k), v in self.entries.items()]


def codazzi_defect(h: SymBivector) -> DefectTensor:
    """Entries sum_l (h_il d_l h_jk - h_jl d_l h_ik) for i<j and every k."""
    n = h.dim
    partials = _Partials()
    entries = {}
    for i, j in combinations(range(n), 2):
        for k in range(n):
            v = directional(h.rows[i], h[(j, k)], partials(h[(j, k)])) - directional(
                h.rows[j], h[(i, k)], partials(h[(i, k)])
            )
            if v:
                entries[(i, j, k)] = v
    return DefectTensor(n, entries)


def is_codazzi(h: SymBivector) -> bool:
    return codazzi_defect(h).is_zero()


def anchors(h: SymBivector) -> list[MultiVector]:
    """The vector fields X_i = h#(dx_i)."""
    return [h.anchor_coordinate(i) for i in range(h.dim)]


def anchor_commutators(h: SymBivector) -> dict[tuple[int, int], MultiVector]:
    """Nonzero brackets [X_i, X_j], i<j, of the coordinate anchors."""
    xs = anchors(h)
    out = {}
    for i, j in combinations(range(h.dim), 2):
        b = lie_bracket(xs[i], xs[j])
        if not b.is_zero():
            out[(i, j)] = b
    return out


def _check(h: SymBivector, *forms: OneForm) -> None:
    for f in forms:
        if f.ctx != h.ctx or f.dim != h.dim:
            raise ValueError("dimension or context mismatch")


def algebroid_bracket(h: SymBivector, alpha: OneForm, beta: OneForm) -> OneForm:
    """[alpha, beta]_h with k-th component X_alpha(beta_k) - X_beta(alpha_k)."""
    _check(h, alpha, beta)
    xa = h.anchor(alpha).vector()
    xb = h.anchor(beta).vector()
    return OneForm(h.ctx, [directional(xa, b) - directional(xb, a) for a, b in zip(alpha.comps, beta.comps)])


def connection_D(h: SymBivector, alpha: OneForm, beta: OneForm) -> OneForm:
    """(D_alpha beta)_m = sum_ij alpha_i beta_j d_m h_ij + h#(alpha)(beta_m)."""
    _check(h, alpha, beta)
    n = h.dim
    xa = h.anchor(alpha).vector()
    comps = []
    for m in range(n):
        acc = directional(xa, beta.comps[m])
        for i in range(n):
            if not alpha.comps[i]:
                continue
            for j in range(n):
                if beta.comps[j] and h[(i, j)]:
                    d = h[(i, j)].diff_coord(m)
                    if d:
                        acc = acc + alpha.comps[i] * beta.comps[j] * d
        comps.append(acc)
    return OneForm(h.ctx, comps)


def dh(h: SymBivector, q: MultiVector) -> MultiVector:
    """Algebroid differential of a multivector field.

    Coordinate 1-forms bracket to zero, so only anchor terms appear.
    """
    if q.ctx != h.ctx:
        raise ValueError("context mismatch")
    return algebroid_differential(h.rows, q)


def modular_field(h: SymBivector, log_density: Poly | None = None) -> MultiVector:
    """Modular field of the volume e^g * (standard volume), i.e. h#(dg)."""
    if log_density is None:
        return MultiVector.vector_field(h.ctx, [0] * h.dim)
    return h.anchor(OneForm.exact(log_density))


def volume_identity_defect(h: SymBivector, f: Poly, log_density: Poly | None = None) -> Poly:
    """div_Omega(X_f) - M(f) - div(h)(f) - <h, Hess f>, which always vanishes.

    ``div_Omega`` is the divergence for the volume e^g * standard, namely
    the flat divergence plus X_f(g).
    """
    xf = h.anchor(OneForm.exact(f))
    div_x = divergence(xf).scalar()
    if log_density is not None:
        div_x = div_x + directional(xf.vector(), log_density)
    m_f = directional(modular_field(h, log_density).vector(), f)
    div_h_f = directional(divergence(h).vector(), f)
    return div_x - m_f - div_h_f - hess_pairing(h, f)


def point_values(h: SymBivector, point: Sequence) -> dict[str, object]:
    return {name: v for name, v in zip(h.ctx.coordinates, point)}


def point_algebra(h: SymBivector, point: Sequence) -> AlgebraSC:
    """Algebra on the cotangent space at a zero of h: C_ij^k = d_k h_ij(x0)."""
    n = h.dim
    if len(point) != n:
        raise ValueError("point dimension mismatch")
    at = point_values(h, point)
    for i in range(n):
        for j in range(i, n):
            if not h[(i, j)].subs(at).is_zero():
                raise ValueError("h does not vanish at the given point")
    consts = {}
    for i in range(n):
        for j in range(n):
            for k in range(n):
                v = as_number(h[(i, j)].diff_coord(k).subs(at))
                if v:
                    consts[(i, j, k)] = v
    return AlgebraSC(n, consts)


@dataclass(frozen=True)
class GramData:
    point: tuple[Fraction, ...]
    pivots: tuple[int, ...]
    basis: tuple[tuple[Fraction, ...], ...]
    gram: tuple[tuple[Fraction, ...], ...]
    signature: tuple[int, int]

    @property
    def rank(self) -> int:
        return len(self.basis)

    def as_dict(self) -> dict:
        fmt = lambda x: str(x)
        return {
            "point": [fmt(x) for x in self.point],
            "pivots": [p + 1 for p in self.pivots],
            "basis": [[fmt(x) for x in v] for v in self.basis],
            "gram": [[fmt(x) for x in row] for row in self.gram],
            "signature": list(self.signature),
            "rank": self.rank,
        }


def leaf_metric(
    h: SymBivector,
    point: Sequence,
    params: Mapping | None = None,
    column_order: Sequence[int] | None = None,
    pivot_order: Sequence[int] | None = None,
) -> GramData:
    """Leaf metric g(h#a, h#b) = h(a, b) on the image of h#(x0).

    Columns of H = h(x0) are scanned in ``column_order`` and kept when they
    raise the rank; the Gram matrix is the principal block of H on those
    columns.
    """
    n = h.dim
    values = dict(params or {})
    values.update(point_values(h, [Fraction(x) for x in point]))
    mat = h.evaluate(values)
    order = list(column_order) if column_order is not None else list(range(n))
    chosen: list[int] = []
    cols = linalg.transpose(mat)
    for c in order:
        trial = [cols[x] for x in chosen + [c]]
        if linalg.rank(trial) > len(chosen):
            chosen.append(c)
    gram = [[mat[a][b] for b in chosen] for a in chosen]
    # pivot_order ranks the original coordinate indices for tie-breaking
    order = None if pivot_order is None else [chosen.index(c) for c in pivot_order if c in chosen]
    pos, neg, _ = linalg.inertia(gram, order)
    return GramData(
        point=tuple(Fraction(x) for x in point),
        pivots=tuple(chosen),
        basis=tuple(tuple(cols[c]) for c in chosen),
        gram=tuple(tuple(r) for r in gram),
        signature=(pos, neg),
    )


def divergence_linear_part(h: SymBivector) -> list[list[Poly]]:
    """Matrix L with (div h)_j = sum_m L[j][m] x_m; requires a linear divergence."""
    div = divergence(h).vector()
    ctx = h.ctx
    n = h.dim
    names = ctx.coordinates
    mat = []
    for j in range(n):
        row = [div[j].coeff({names[m]: 1}) for m in range(n)]
        rebuilt = Poly.zero(ctx)
        for m in range(n):
            rebuilt = rebuilt + row[m] * Poly.coord(ctx, m)
        if rebuilt != div[j]:
            raise ValueError("divergence is not a linear vector field")
        mat.append(row)
    return mat


def jordan_class(l: Sequence[Sequence]) -> str:
    """Real Jordan type of a rational 2x2 matrix.

    One of ``zero``, ``nilpotent-jordan`` (a single non-diagonalizable
    block), ``diagonalizable`` (real eigenvalues) or ``non-real``.
    """
    (a, b), (c, d) = [[Fraction(x) for x in row] for row in l]
    if not (a or b or c or d):
        return "zero"
    disc = (a + d) ** 2 - 4 * (a * d - b * c)
    if disc < 0:
        return "non-real"
    if disc > 0:
        return "diagonalizable"
    return "diagonalizable" if (b == 0 and c == 0 and a == d) else "nilpotent-jordan"
