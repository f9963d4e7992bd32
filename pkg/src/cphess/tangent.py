"""Lift of a symmetric bivector on R^n to a skew bivector on T R^n = R^2n.

Coordinates on the tangent bundle are the base coordinates followed by
one fiber coordinate per base coordinate; base index ``i`` is at position
``i`` and its fiber partner at ``n + i``.
"""

from __future__ import annotations

import re
from fractions import Fraction
from functools import lru_cache

from .codazzi import dh
from .multivector import MultiVector, SymBivector, algebroid_differential, divergence, schouten_self
from .poly import Context, Poly

_X_NAME = re.compile(r"x(_?\d+)\Z")


def _fiber_names(base: Context) -> tuple[str, ...]:
    taken = set(base.names)
    matches = [_X_NAME.match(c) for c in base.coordinates]
    if all(matches):
        names = tuple("y" + m.group(1) for m in matches)
        if not taken.intersection(names):
            return names
    names = []
    for c in base.coordinates:
        cand = f"v_{c}"
        while cand in taken:
            cand += "_"
        taken.add(cand)
        names.append(cand)
    return tuple(names)


class TangentModel:
    """Coordinates and frame conventions of T R^n."""

    def __init__(self, base: Context) -> None:
        self.base = base
        self.n = base.ncoords
        self.fiber = _fiber_names(base)
        self.ctx = Context(base.coordinates + self.fiber, base.parameters, base.trig)

    @staticmethod
    @lru_cache(maxsize=None)
    def of(base: Context) -> TangentModel:
        return TangentModel(base)

    def horizontal(self, i: int) -> int:
        return i

    def vertical(self, i: int) -> int:
        return self.n + i

    def lift(self, p: Poly) -> Poly:
        return p.embed(self.ctx)

    def complex_structure(self) -> list[list[Fraction]]:
        """Matrix of J (columns are images of the frame d/dx_i, d/dy_i)."""
        m = 2 * self.n
        j = [[Fraction(0)] * m for _ in range(m)]
        for i in range(self.n):
            j[self.vertical(i)][self.horizontal(i)] = Fraction(1)
            j[self.horizontal(i)][self.vertical(i)] = Fraction(-1)
        return j


def lift_poisson(h: SymBivector) -> MultiVector:
    """Pi with Pi(dx_i, dy_j) = h_ij and no pure x or pure y components."""
    model = TangentModel.of(h.ctx)
    n = h.dim
    comps = {}
    for i in range(n):
        for j in range(n):
            if h[(i, j)]:
                comps[(model.horizontal(i), model.vertical(j))] = model.lift(h[(i, j)])
    return MultiVector(model.ctx, 2, comps)


def poisson_defect(h: SymBivector) -> MultiVector:
    return schouten_self(lift_poisson(h))


def vertical_lift(q: MultiVector) -> MultiVector:
    """Relabel every index i as its fiber partner n + i."""
    model = TangentModel.of(q.ctx)
    return MultiVector(
        model.ctx,
        q.degree,
        {tuple(model.vertical(i) for i in k): model.lift(v) for k, v in q.comps.items()},
    )


def anchor_rows(pi: MultiVector) -> list[list[Poly]]:
    m = pi.dim
    return [[pi[(a, b)] for b in range(m)] for a in range(m)]


def koszul_coordinate_bracket(pi: MultiVector):
    """[dz_a, dz_b]_pi = d(pi^{ab}) as a coefficient map on coordinate forms."""
    m = pi.dim
    cache: dict = {}

    def bracket(a: int, b: int) -> dict[int, Poly]:
        if (a, b) not in cache:
            p = pi[(a, b)]
            cache[(a, b)] = {c: d for c in range(m) if (d := p.diff_coord(c))} if p else {}
        return cache[(a, b)]

    return bracket


def d_pi(pi: MultiVector, q: MultiVector) -> MultiVector:
    """Algebroid differential of the cotangent algebroid of a bivector pi."""
    return algebroid_differential(anchor_rows(pi), q, koszul_coordinate_bracket(pi))


def coho_defect(h: SymBivector, q: MultiVector) -> MultiVector:
    """(d_h q)^v + d_Pi(q^v); vanishes when h is Codazzi."""
    return vertical_lift(dh(h, q)) + d_pi(lift_poisson(h), vertical_lift(q))


def lift_divergence_defect(h: SymBivector) -> MultiVector:
    """div(Pi) - (div h)^v; vanishes for every symmetric h."""
    return divergence(lift_poisson(h)) - vertical_lift(divergence(h))
