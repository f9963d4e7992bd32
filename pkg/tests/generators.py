"""Seeded random objects shared by the acceptance and property tests."""

from __future__ import annotations

import random
from fractions import Fraction
from itertools import product

from cphess import linalg
from cphess.algebra import AlgebraSC
from cphess.finalg import affine_bivector, cocycle_space
from cphess.multivector import SymBivector
from cphess.poly import Context, Poly

COEFFS = range(-3, 4)


def context(n: int) -> Context:
    return Context([f"x{i + 1}" for i in range(n)])


def monomials(n: int, max_degree: int) -> list[tuple[int, ...]]:
    return [e for e in product(range(max_degree + 1), repeat=n) if sum(e) <= max_degree]


def random_poly(rng: random.Random, ctx: Context, max_degree: int = 2, density: float = 0.4) -> Poly:
    n = ctx.ncoords
    p = Poly.zero(ctx)
    for e in monomials(n, max_degree):
        if rng.random() < density:
            term = Poly.const(ctx, rng.choice(COEFFS))
            for i, k in enumerate(e):
                term = term * Poly.coord(ctx, i) ** k
            p = p + term
    return p


def random_symmetric(rng: random.Random, n: int, max_degree: int = 2) -> SymBivector:
    ctx = context(n)
    rows = [[None] * n for _ in range(n)]
    for i in range(n):
        for j in range(i, n):
            rows[i][j] = rows[j][i] = random_poly(rng, ctx, max_degree, density=rng.choice((0.2, 0.4)))
    return SymBivector(ctx, rows)


def rank_one_codazzi(rng: random.Random, n: int) -> SymBivector:
    """g(x) v v^T with a constant vector v is Codazzi for every g."""
    ctx = context(n)
    g = random_poly(rng, ctx, 2)
    v = [rng.choice((-1, 0, 1)) for _ in range(n)]
    return SymBivector(ctx, [[g * (v[i] * v[j]) for j in range(n)] for i in range(n)])


def diagonal_codazzi(rng: random.Random, n: int) -> SymBivector:
    ctx = context(n)
    rows = [[Poly.zero(ctx)] * n for _ in range(n)]
    rows = [list(r) for r in rows]
    for i in range(n):
        x = Poly.coord(ctx, i)
        rows[i][i] = sum((x**k * rng.choice(COEFFS) for k in range(3)), Poly.zero(ctx))
    return SymBivector(ctx, rows)


# Commutative associative seeds, as {(i, j): {k: c}} with symmetric entries.
SEEDS = {
    1: [{}, {(0, 0): {0: 1}}],
    2: [
        {},
        {(0, 0): {0: 1}},
        {(0, 0): {1: 1}},
        {(0, 0): {0: 1}, (1, 1): {1: 1}},
        {(0, 0): {0: 1}, (0, 1): {1: 1}, (1, 0): {1: 1}},
        {(0, 0): {0: 1}, (0, 1): {1: 1}, (1, 0): {1: 1}, (1, 1): {0: -1}},
    ],
    3: [
        {},
        {(0, 0): {1: 1}, (0, 1): {2: 1}, (1, 0): {2: 1}},
        {(0, 0): {0: 1}, (1, 1): {1: 1}, (2, 2): {2: 1}},
        {(0, 0): {0: 1}, (0, 1): {1: 1}, (1, 0): {1: 1}, (0, 2): {2: 1}, (2, 0): {2: 1}},
        {(0, 0): {2: 1}, (1, 1): {2: 1}},
        {(0, 0): {0: 1}, (1, 1): {2: 1}},
    ],
}


def change_basis(a: AlgebraSC, p: list[list[int]]) -> AlgebraSC:
    """Structure constants in the basis f_i = sum_a p[a][i] e_a."""
    n = a.dim
    pinv = linalg.inverse([[Fraction(x) for x in row] for row in p])
    cols = [[Fraction(p[r][i]) for r in range(n)] for i in range(n)]
    consts = {}
    for i, j in product(range(n), repeat=2):
        prod_e = a.mul(cols[i], cols[j])
        coords = linalg.matvec(pinv, prod_e)
        for k, v in enumerate(coords):
            if v:
                consts[(i, j, k)] = v
    return AlgebraSC(n, consts)


def random_unimodular(rng: random.Random, n: int) -> list[list[int]]:
    while True:
        p = [[rng.choice((-1, 0, 0, 1, 2)) for _ in range(n)] for _ in range(n)]
        if linalg.det(p):
            return p


def random_commutative(rng: random.Random, n: int) -> AlgebraSC:
    consts = {}
    for i in range(n):
        for j in range(i, n):
            for k in range(n):
                if rng.random() < 0.3:
                    consts[(i, j, k)] = consts[(j, i, k)] = rng.choice((-2, -1, 1, 2))
    return AlgebraSC(n, consts)


def commutative_associative(rng: random.Random, n: int) -> AlgebraSC:
    seed = AlgebraSC.from_products(n, rng.choice(SEEDS[n]))
    return change_basis(seed, random_unimodular(rng, n))


def random_symmetric_constant(rng: random.Random, n: int) -> list[list[Fraction]]:
    b = [[Fraction(0)] * n for _ in range(n)]
    for i in range(n):
        for j in range(i, n):
            b[i][j] = b[j][i] = Fraction(rng.choice(COEFFS))
    return b


def random_cocycle(rng: random.Random, a: AlgebraSC) -> list[list[Fraction]]:
    n = a.dim
    b = [[Fraction(0)] * n for _ in range(n)]
    for basis in cocycle_space(a):
        c = rng.choice(COEFFS)
        for i, j in product(range(n), repeat=2):
            b[i][j] += c * basis[i][j]
    return b


def codazzi_population(rng: random.Random, size: int) -> list[SymBivector]:
    """Mixed population of symmetric polynomial bivectors, n <= 3, degree <= 2.

    Half are unconstrained random matrices (almost never Codazzi); the rest
    come from constructions that are Codazzi by design, so both outcomes
    appear in quantity.
    """
    out = []
    builders = (rank_one_codazzi, diagonal_codazzi, _affine_codazzi)
    for t in range(size):
        n = rng.choice((1, 2, 2, 3, 3))
        if t % 2 == 0:
            out.append(random_symmetric(rng, n, 2))
        else:
            out.append(builders[(t // 2) % len(builders)](rng, n))
    return out


def _affine_codazzi(rng: random.Random, n: int) -> SymBivector:
    a = commutative_associative(rng, n)
    # the population is restricted to coefficients in -3..3
    for _ in range(20):
        if all(abs(v) <= 3 for v in a.constants.values()):
            break
        a = commutative_associative(rng, n)
    else:
        a = AlgebraSC.from_products(n, SEEDS[n][1])
    b = random_cocycle(rng, a)
    h = affine_bivector(a, b, context(n))
    if any(abs(c) > 3 for row in h.rows for x in row for c in x.terms.values()):
        return affine_bivector(a, None, context(n))
    return h
