"""Grid search for S-matrices of 2-dimensional algebras and orbit matching.

The search is a verifier: it enumerates a finite rational grid, keeps the
S-matrices, and tries to write each one as ``lam * M r0 M^T`` for a
representative ``r0``, an automorphism ``M`` and a nonzero scale ``lam``.
Solutions with no match are reported, never dropped.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from itertools import product
from typing import Iterator, Mapping, Sequence

from . import linalg
from .algebra import AlgebraSC
from .finalg import aut_member, smatrix_defect
from .poly import Poly, PolyError


def grid_values(bound: int) -> list[Fraction]:
    """{p/q : |p| <= bound, 1 <= q <= bound}, ordered by height then value."""
    vals = {Fraction(p, q) for p in range(-bound, bound + 1) for q in range(1, max(bound, 1) + 1)}
    return sorted(vals, key=lambda v: (max(abs(v.numerator), v.denominator), abs(v), v < 0))


def _numeric(m: Sequence[Sequence], values: Mapping | None = None) -> list[list[Fraction]]:
    out = []
    for row in m:
        r = []
        for x in row:
            if isinstance(x, Poly):
                try:
                    x = x.eval(values or {})
                except PolyError:
                    raise ValueError(f"entry {x} still depends on parameters") from None
            r.append(Fraction(x))
        out.append(r)
    return out


def _params_of(matrices: Sequence[Sequence[Sequence]]) -> tuple[str, ...]:
    names: list[str] = []
    for m in matrices:
        for row in m:
            for x in row:
                if isinstance(x, Poly):
                    for p in x.ctx.parameters:
                        if p in x.free_symbols() and p not in names:
                            names.append(p)
    return tuple(names)


def _assignments(params: Sequence[str], values: Sequence[Fraction]) -> Iterator[dict]:
    if not params:
        yield {}
        return
    height = lambda v: max(abs(v.numerator), v.denominator)
    combos = sorted(product(values, repeat=len(params)), key=lambda vs: (max(map(height, vs)), [height(v) for v in vs]))
    for vs in combos:
        yield dict(zip(params, vs))


@dataclass(frozen=True)
class AutFamily:
    """Automorphism candidates: parametrized matrices and/or fixed ones."""

    matrices: tuple = ()

    @property
    def parameters(self) -> tuple[str, ...]:
        return _params_of(self.matrices)

    def samples(self, values: Sequence[Fraction]) -> Iterator[tuple[dict, list[list[Fraction]]]]:
        for m in self.matrices:
            params = _params_of([m])
            for assignment in _assignments(params, values):
                num = _numeric(m, assignment)
                if linalg.det(num):
                    yield assignment, num


@dataclass(frozen=True)
class Representative:
    label: str
    matrix: tuple


@dataclass(frozen=True)
class Match:
    label: str
    params: dict
    automorphism: list
    scale: Fraction


@dataclass
class ClassifyReport:
    bound: int
    solutions: list = field(default_factory=list)
    matches: list = field(default_factory=list)
    rejected_automorphisms: int = 0

    @property
    def unmatched(self) -> list:
        return [r for r, m in zip(self.solutions, self.matches) if m is None]

    def as_dict(self) -> dict:
        fmt = lambda m: [[str(x) for x in row] for row in m]
        items = []
        for r, m in zip(self.solutions, self.matches):
            entry = {"r": fmt(r), "match": None}
            if m is not None:
                entry["match"] = {
                    "representative": m.label,
                    "params": {k: str(v) for k, v in m.params.items()},
                    "automorphism": fmt(m.automorphism),
                    "scale": str(m.scale),
                }
            items.append(entry)
        return {
            "bound": self.bound,
            "solutions": len(self.solutions),
            "unmatched": len(self.unmatched),
            "rejected_automorphisms": self.rejected_automorphisms,
            "items": items,
        }


def _projective_key(m: list[list[Fraction]]) -> tuple:
    """Entries divided by the first nonzero one; equal keys mean proportional."""
    flat = [x for row in m for x in row]
    k = next((t for t, x in enumerate(flat) if x), None)
    if k is None:
        return ("zero",)
    return tuple(x / flat[k] for x in flat)


def _scale_between(target: list[list[Fraction]], image: list[list[Fraction]]) -> Fraction:
    flat_t = [x for row in target for x in row]
    flat_i = [x for row in image for x in row]
    k = next((t for t, x in enumerate(flat_i) if x), None)
    return Fraction(1) if k is None else flat_t[k] / flat_i[k]


def grid_classify(
    a: AlgebraSC,
    bound: int,
    representatives: Sequence[Representative] = (),
    aut: AutFamily | None = None,
    aut_bound: int | None = None,
) -> ClassifyReport:
    """S-matrices with entries in the height-``bound`` grid, matched to representatives.

    Automorphism parameters and representative parameters range over the
    grid of height ``aut_bound`` (default ``max(4, 2 * bound**2)``).
    Sampled matrices that fail :func:`aut_member` are discarded and counted.
    """
    if a.dim != 2:
        raise ValueError("grid classification supports dimension 2 only")
    if any(isinstance(v, Poly) for v in a.constants.values()):
        raise ValueError("grid classification needs rational structure constants")
    report = ClassifyReport(bound)
    grid = grid_values(bound)
    for r11, r12, r22 in product(grid, repeat=3):
        r = [[r11, r12], [r12, r22]]
        if not smatrix_defect(a, r):
            report.solutions.append(r)
    ab = aut_bound if aut_bound is not None else max(4, 2 * bound * bound)
    fine = grid_values(ab)
    autos: list = []
    for assignment, m in (aut or AutFamily((((1, 0), (0, 1)),))).samples(fine):
        if aut_member(a, m):
            autos.append(m)
        else:
            report.rejected_automorphisms += 1
    if not autos:
        autos = [linalg.identity(2)]
    reps: list = []
    for rep in representatives:
        params = _params_of([rep.matrix])
        for assignment in _assignments(params, fine):
            reps.append((rep.label, assignment, _numeric(rep.matrix, assignment)))
    images: dict = {}
    for label, assignment, r0 in reps:
        for m in autos:
            img = linalg.matmul(linalg.matmul(m, r0), linalg.transpose(m))
            images.setdefault(_projective_key(img), (label, assignment, m, img))
    for r in report.solutions:
        hit = images.get(_projective_key(r))
        found = None
        if hit is not None:
            label, assignment, m, img = hit
            found = Match(label, assignment, m, _scale_between(r, img))
        report.matches.append(found)
    return report
