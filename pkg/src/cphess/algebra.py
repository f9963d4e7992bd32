"""Finite-dimensional algebras given by structure constants.

Scalars are exact: :class:`fractions.Fraction` or parameter-field
:class:`~cphess.poly.Poly` values.  Identities that involve parameters
hold only if they hold identically.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property
from itertools import product
from typing import Mapping, Sequence

from .poly import Poly, as_number

ZERO = Fraction(0)


def scalar(x):
    return as_number(x)


def vsum(values) -> object:
    acc = ZERO
    for v in values:
        if v:
            acc = acc + v
    return acc


@dataclass(frozen=True)
class Flags:
    commutative: bool
    associative: bool
    left_symmetric: bool
    jacobi: bool | None

    def as_dict(self) -> dict:
        return {
            "commutative": self.commutative,
            "associative": self.associative,
            "left_symmetric": self.left_symmetric,
            "jacobi": self.jacobi,
        }


@dataclass(frozen=True, eq=False)
class AlgebraSC:
    """Algebra with ``e_i * e_j = sum_k C[i, j, k] e_k`` (0-based indices)."""

    dim: int
    constants: Mapping[tuple[int, int, int], object] = field(default_factory=dict)
    name: str = ""

    def __post_init__(self) -> None:
        clean = {}
        for (i, j, k), v in self.constants.items():
            if not all(0 <= t < self.dim for t in (i, j, k)):
                raise ValueError(f"structure constant index {(i, j, k)} out of range")
            v = scalar(v)
            if v:
                clean[(i, j, k)] = v
        object.__setattr__(self, "constants", dict(sorted(clean.items())))

    @classmethod
    def zero(cls, dim: int) -> AlgebraSC:
        return cls(dim, {})

    @classmethod
    def from_products(cls, dim: int, products: Mapping[tuple[int, int], Mapping[int, object]], name: str = "") -> AlgebraSC:
        return cls(dim, {(i, j, k): v for (i, j), res in products.items() for k, v in res.items()}, name)

    def c(self, i: int, j: int, k: int):
        return self.constants.get((i, j, k), ZERO)

    @cached_property
    def _table(self) -> list:
        t = [[[ZERO] * self.dim for _ in range(self.dim)] for _ in range(self.dim)]
        for (i, j, k), v in self.constants.items():
            t[i][j][k] = v
        return t

    def basis_product(self, i: int, j: int) -> list:
        return self._table[i][j]

    def mul(self, u: Sequence, v: Sequence) -> list:
        n = self.dim
        out = [ZERO] * n
        for i in range(n):
            if not u[i]:
                continue
            for j in range(n):
                if not v[j]:
                    continue
                uv = u[i] * v[j]
                row = self._table[i][j]
                for k in range(n):
                    if row[k]:
                        out[k] = out[k] + uv * row[k]
        return out

    def commutator(self, u: Sequence, v: Sequence) -> list:
        return [a - b for a, b in zip(self.mul(u, v), self.mul(v, u))]

    def unit(self, i: int) -> list:
        return [Fraction(int(i == k)) for k in range(self.dim)]

    def associator(self, u, v, w) -> list:
        return [a - b for a, b in zip(self.mul(self.mul(u, v), w), self.mul(u, self.mul(v, w)))]

    @cached_property
    def flags(self) -> Flags:
        return algebra_checks(self)

    def __eq__(self, other: object) -> bool:
        return isinstance(other, AlgebraSC) and self.dim == other.dim and self.constants == other.constants

    def __hash__(self) -> int:
        return hash((self.dim, tuple(self.constants.items())))

    def products(self) -> dict[tuple[int, int], dict[int, object]]:
        out: dict = {}
        for (i, j, k), v in self.constants.items():
            out.setdefault((i, j), {})[k] = v
        return out

    def substitute(self, values: Mapping) -> AlgebraSC:
        """Specialize parameter-valued constants."""
        return AlgebraSC(
            self.dim,
            {key: (v.subs(values) if isinstance(v, Poly) else v) for key, v in self.constants.items()},
            self.name,
        )

    def __repr__(self) -> str:
        prods = ", ".join(
            f"e{i + 1}e{j + 1}=" + " + ".join(f"({v})e{k + 1}" for k, v in res.items())
            for (i, j), res in self.products().items()
        )
        return f"AlgebraSC(dim={self.dim}{', ' + prods if prods else ''})"


def _is_zero_vec(v) -> bool:
    return all(not x for x in v)


def algebra_checks(a: AlgebraSC) -> Flags:
    """Brute-force identity checks over all basis triples."""
    n = a.dim
    commutative = all(a.c(i, j, k) == a.c(j, i, k) for i, j, k in product(range(n), repeat=3))
    ass = {}
    for i, j, k in product(range(n), repeat=3):
        ass[(i, j, k)] = a.associator(a.unit(i), a.unit(j), a.unit(k))
    associative = all(_is_zero_vec(v) for v in ass.values())
    left_symmetric = all(
        _is_zero_vec([x - y for x, y in zip(ass[(i, j, k)], ass[(j, i, k)])])
        for i, j, k in product(range(n), repeat=3)
    )
    jacobi = None
    if left_symmetric:
        jacobi = True
        for i, j, k in product(range(n), repeat=3):
            u, v, w = a.unit(i), a.unit(j), a.unit(k)
            total = [
                x + y + z
                for x, y, z in zip(
                    a.commutator(u, a.commutator(v, w)),
                    a.commutator(v, a.commutator(w, u)),
                    a.commutator(w, a.commutator(u, v)),
                )
            ]
            if not _is_zero_vec(total):
                jacobi = False
                break
    return Flags(commutative, associative, left_symmetric, jacobi)


def flag_witness(a: AlgebraSC, flag: str) -> list[dict]:
    """Nonzero defect components of one identity, as 1-based (i, j, k, l) entries.

    commutative: c_ij^l - c_ji^l (k unused); associative: ((e_i e_j) e_k - e_i (e_j e_k))^l;
    left-symmetric: associator(i, j, k)^l - associator(j, i, k)^l.
    """
    n = a.dim
    out = []
    for i, j, k in product(range(n), repeat=3):
        if flag == "commutative":
            if k:
                continue
            vec = a.commutator(a.unit(i), a.unit(j))
            key = [i + 1, j + 1]
        else:
            vec = a.associator(a.unit(i), a.unit(j), a.unit(k))
            if flag == "left-symmetric":
                vec = [x - y for x, y in zip(vec, a.associator(a.unit(j), a.unit(i), a.unit(k)))]
            elif flag != "associative":
                raise ValueError(f"unknown flag {flag!r}")
            key = [i + 1, j + 1, k + 1]
        for l, v in enumerate(vec):
            if v:
                out.append({"entry": key + [l + 1], "value": str(v)})
    return out


def is_lie(a: AlgebraSC) -> bool:
    """The product itself is skew and satisfies the Jacobi identity."""
    n = a.dim
    if any(a.c(i, j, k) != -a.c(j, i, k) for i, j, k in product(range(n), repeat=3)):
        return False
    for i, j, k in product(range(n), repeat=3):
        u, v, w = a.unit(i), a.unit(j), a.unit(k)
        total = [x + y + z for x, y, z in zip(a.mul(u, a.mul(v, w)), a.mul(v, a.mul(w, u)), a.mul(w, a.mul(u, v)))]
        if not _is_zero_vec(total):
            return False
    return True
