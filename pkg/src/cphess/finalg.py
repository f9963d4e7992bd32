"""Algebraic side: affine bivectors from algebras, S-matrices and doublings.

Matrices (cocycles ``B``, S-matrix candidates ``r``) are square lists of
exact scalars written in the dual basis, so ``r[i][j] = r(eps_i, eps_j)``.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations, permutations, product
from typing import Sequence

from . import linalg
from .algebra import ZERO, AlgebraSC, scalar, vsum
from .multivector import MultiVector, SymBivector
from .poly import Context, Poly
from .tangent import TangentModel, lift_poisson


def square(m: Sequence[Sequence], n: int, symmetric: bool = False) -> list[list]:
    out = [[scalar(x) for x in row] for row in m]
    if len(out) != n or any(len(row) != n for row in out):
        raise ValueError(f"expected a {n}x{n} matrix")
    if symmetric:
        for i, j in combinations(range(n), 2):
            if out[i][j] != out[j][i]:
                raise ValueError(f"matrix is not symmetric at ({i + 1},{j + 1})")
    return out


def default_context(n: int, parameters: Sequence[str] = ()) -> Context:
    return Context([f"x{i + 1}" for i in range(n)], parameters)


def _param_context(values) -> tuple[str, ...]:
    params: list[str] = []
    for v in values:
        if isinstance(v, Poly):
            for p in v.ctx.parameters:
                if p in v.free_symbols() and p not in params:
                    params.append(p)
    return tuple(params)


def _bilinear(b: list[list], u: Sequence, v: Sequence):
    return vsum(u[i] * b[i][j] * v[j] for i in range(len(u)) if u[i] for j in range(len(v)) if v[j] and b[i][j])


def cocycle_defect(a: AlgebraSC, b: Sequence[Sequence]) -> dict[tuple[int, int, int], object]:
    """Nonzero values of B(e_i e_j, e_k) - B(e_i, e_j e_k)."""
    n = a.dim
    bm = square(b, n, symmetric=True)
    out = {}
    for i, j, k in product(range(n), repeat=3):
        v = _bilinear(bm, a.basis_product(i, j), a.unit(k)) - _bilinear(bm, a.unit(i), a.basis_product(j, k))
        if v:
            out[(i, j, k)] = v
    return out


def is_cocycle(a: AlgebraSC, b) -> bool:
    return not cocycle_defect(a, b)


def cocycle_space(a: AlgebraSC) -> list[list[list[Fraction]]]:
    """Basis of the symmetric 2-cocycles of a rational algebra."""
    n = a.dim
    unknowns = [(p, q) for p in range(n) for q in range(p, n)]
    col = {pq: t for t, pq in enumerate(unknowns)}
    key = lambda p, q: col[(min(p, q), max(p, q))]
    rows = []
    for i, j, k in product(range(n), repeat=3):
        row = [Fraction(0)] * len(unknowns)
        for m in range(n):
            row[key(m, k)] += a.c(i, j, m)
            row[key(i, m)] -= a.c(j, k, m)
        if any(row):
            rows.append(row)
    basis = []
    for v in linalg.nullspace(rows, len(unknowns)):
        mat = [[Fraction(0)] * n for _ in range(n)]
        for (p, q), t in col.items():
            mat[p][q] = mat[q][p] = v[t]
        basis.append(mat)
    return basis


def affine_bivector(a: AlgebraSC, b: Sequence[Sequence] | None = None, ctx: Context | None = None) -> SymBivector:
    """h_ij = b_ij + sum_k C_ij^k x_k on the space dual to the algebra."""
    n = a.dim
    bm = square(b, n, symmetric=True) if b is not None else [[ZERO] * n for _ in range(n)]
    if ctx is None:
        ctx = default_context(n, _param_context(list(a.constants.values()) + [x for row in bm for x in row]))
    if ctx.ncoords != n:
        raise ValueError("context dimension does not match the algebra")
    lift = lambda v: v.embed(ctx) if isinstance(v, Poly) else Poly.const(ctx, v)
    rows = []
    for i in range(n):
        row = []
        for j in range(n):
            p = lift(bm[i][j])
            for k in range(n):
                c = a.c(i, j, k)
                if c:
                    p = p + lift(c) * Poly.coord(ctx, k)
            row.append(p)
        rows.append(row)
    return SymBivector(ctx, rows)


def decompose_affine(h: SymBivector) -> tuple[AlgebraSC, list[list]]:
    """Split an affine bivector into its algebra (linear part) and constant part."""
    ctx = h.ctx
    n = h.dim
    consts = {}
    b = []
    for i in range(n):
        brow = []
        for j in range(n):
            p = h[(i, j)]
            const = p.coeff({})
            rebuilt = const
            for k in range(n):
                ck = p.coeff({ctx.coordinates[k]: 1})
                if ck:
                    consts[(i, j, k)] = ck
                    rebuilt = rebuilt + ck * Poly.coord(ctx, k)
            if rebuilt != p:
                raise ValueError(f"component ({i + 1},{j + 1}) is not affine")
            brow.append(scalar(const))
        b.append(brow)
    return AlgebraSC(n, consts), b


# --- S-matrices -----------------------------------------------------------

def sharp(r: list[list], alpha: Sequence) -> list:
    """r#(alpha) with <beta, r#(alpha)> = r(alpha, beta)."""
    n = len(r)
    return [vsum(alpha[i] * r[i][j] for i in range(n) if alpha[i] and r[i][j]) for j in range(n)]


def dual_left(a: AlgebraSC, u: Sequence, alpha: Sequence) -> list:
    """L*_u(alpha), defined by <L*_u alpha, v> = -<alpha, u v>."""
    n = a.dim
    out = []
    for v in range(n):
        uv = a.mul(u, a.unit(v))
        out.append(-vsum(alpha[k] * uv[k] for k in range(n) if alpha[k] and uv[k]))
    return out


def r_bracket(a: AlgebraSC, r: list[list], alpha: Sequence, beta: Sequence) -> list:
    ra, rb = sharp(r, alpha), sharp(r, beta)
    x, y = dual_left(a, ra, beta), dual_left(a, rb, alpha)
    return [p - q for p, q in zip(x, y)]


def smatrix_defect(a: AlgebraSC, r: Sequence[Sequence]) -> dict[tuple[int, int, int], object]:
    """Nonzero values of [[r,r]](eps_i, eps_j, eps_k) for i<j."""
    n = a.dim
    rm = square(r, n, symmetric=True)
    out = {}
    for i, j in combinations(range(n), 2):
        ei, ej = a.unit(i), a.unit(j)
        lhs = sharp(rm, r_bracket(a, rm, ei, ej))
        rhs = a.commutator(sharp(rm, ei), sharp(rm, ej))
        for k in range(n):
            v = lhs[k] - rhs[k]
            if v:
                out[(i, j, k)] = v
    return out


def is_smatrix(a: AlgebraSC, r) -> bool:
    return not smatrix_defect(a, r)


@dataclass(frozen=True)
class DoubledAlgebra:
    base: AlgebraSC
    star: AlgebraSC
    lie: AlgebraSC
    j0_defect: dict

    def j0(self, v: Sequence) -> list:
        return j0_apply(self.base.dim, v)


def j0_apply(n: int, v: Sequence) -> list:
    """J0(a, b) = (b, -a)."""
    return list(v[n:]) + [-x for x in v[:n]]


def phi_double(a: AlgebraSC) -> DoubledAlgebra:
    """(a,b)*(c,d) = (ac, ad) on A x A, its commutator and the J0 Nijenhuis tensor."""
    if not a.flags.left_symmetric:
        raise ValueError("the doubling requires a left-symmetric algebra")
    n = a.dim
    star = {}
    for (i, j, k), v in a.constants.items():
        star[(i, j, k)] = v
        star[(i, n + j, n + k)] = v
    star_alg = AlgebraSC(2 * n, star)
    lie = {}
    for x, y, z in product(range(2 * n), repeat=3):
        v = star_alg.c(x, y, z) - star_alg.c(y, x, z)
        if v:
            lie[(x, y, z)] = v
    lie_alg = AlgebraSC(2 * n, lie)
    br = lie_alg.mul
    j = lambda v: j0_apply(n, v)
    defect = {}
    for x, y in combinations(range(2 * n), 2):
        u, w = lie_alg.unit(x), lie_alg.unit(y)
        terms = [br(j(u), j(w)), j(br(j(u), w)), j(br(u, j(w))), br(u, w)]
        val = [p - q - s - t for p, q, s, t in zip(*terms)]
        for z, v in enumerate(val):
            if v:
                defect[(x, y, z)] = v
    return DoubledAlgebra(a, star_alg, lie_alg, defect)


def lift_r(r: Sequence[Sequence]) -> list[list]:
    """R((a1,b1),(a2,b2)) = r(a1,b2) - r(a2,b1) as a 2n x 2n matrix."""
    n = len(r)
    rm = square(r, n, symmetric=True)
    big = [[ZERO] * (2 * n) for _ in range(2 * n)]
    for i, j in product(range(n), repeat=2):
        big[i][n + j] = rm[i][j]
        big[n + j][i] = -rm[i][j]
    return big


def cybe_lift_defect(a: AlgebraSC, r: Sequence[Sequence]) -> dict[tuple[int, int, int], object]:
    """Nonzero values of [R,R] on dual-basis triples (i<j<k) of the doubling."""
    lie = phi_double(a).lie
    big = lift_r(r)
    m = 2 * a.dim
    images = [sharp(big, lie.unit(i)) for i in range(m)]
    out = {}
    for i, j, k in combinations(range(m), 3):
        v = lie.mul(images[i], images[j])[k] + lie.mul(images[j], images[k])[i] + lie.mul(images[k], images[i])[j]
        if v:
            out[(i, j, k)] = v
    return out


# --- dual affine Poisson tensor --------------------------------------------

def linear_poisson(lie: AlgebraSC, ctx: Context, cocycle: Sequence[Sequence] | None = None) -> MultiVector:
    """Affine Poisson tensor on the dual of a Lie algebra.

    Pi(dz_a, dz_b) at the point z is <z, [f_a, f_b]> + cocycle(f_a, f_b).
    """
    m = lie.dim
    if ctx.ncoords != m:
        raise ValueError("context dimension does not match the Lie algebra")
    lift = lambda v: v.embed(ctx) if isinstance(v, Poly) else Poly.const(ctx, v)
    comps = {}
    for x, y in combinations(range(m), 2):
        p = lift(cocycle[x][y]) if cocycle is not None else Poly.zero(ctx)
        for z in range(m):
            c = lie.c(x, y, z)
            if c:
                p = p + lift(c) * Poly.coord(ctx, z)
        comps[(x, y)] = p
    return MultiVector(ctx, 2, comps)


def dual_poisson_defect(a: AlgebraSC, b: Sequence[Sequence] | None = None) -> MultiVector:
    """Lift of the affine bivector minus the affine Poisson tensor of A x A.

    The Lie bracket is [(a,b),(c,d)] = (ad - bc, 0) and the cocycle
    B0((a,b),(c,d)) = B(a,d) - B(c,b).
    """
    flags = a.flags
    if not (flags.commutative and flags.associative):
        raise ValueError("the algebra must be commutative and associative")
    n = a.dim
    bm = square(b, n, symmetric=True) if b is not None else [[ZERO] * n for _ in range(n)]
    if cocycle_defect(a, bm):
        raise ValueError("B is not a 2-cocycle")
    h = affine_bivector(a, bm)
    model = TangentModel.of(h.ctx)
    m = 2 * n
    basis = [[Fraction(int(i == k)) for k in range(m)] for i in range(m)]
    consts = {}
    b0 = [[ZERO] * m for _ in range(m)]
    for x, y in product(range(m), repeat=2):
        (p, q), (c, d) = (basis[x][:n], basis[x][n:]), (basis[y][:n], basis[y][n:])
        first = [s - t for s, t in zip(a.mul(p, d), a.mul(q, c))]
        for z, v in enumerate(first):
            if v:
                consts[(x, y, z)] = v
        b0[x][y] = _bilinear(bm, p, d) - _bilinear(bm, c, q)
    pi2 = linear_poisson(AlgebraSC(m, consts), model.ctx, b0)
    return lift_poisson(h) - pi2


# --- automorphisms ---------------------------------------------------------

def _det(m: list[list]):
    n = len(m)
    total = ZERO
    for perm in permutations(range(n)):
        inv = sum(1 for i, j in combinations(range(n), 2) if perm[i] > perm[j])
        term = Fraction(-1) if inv % 2 else Fraction(1)
        for i in range(n):
            term = term * m[i][perm[i]]
            if not term:
                break
        total = total + term
    return total


def aut_member(a: AlgebraSC, m: Sequence[Sequence]) -> bool:
    """True iff M(e_i e_j) = M e_i * M e_j, where M e_i is the i-th column."""
    n = a.dim
    mm = square(m, n)
    if not _det(mm):
        raise ValueError("matrix is singular")
    col = lambda v: [vsum(mm[k][i] * v[i] for i in range(n) if v[i]) for k in range(n)]
    images = [[mm[k][i] for k in range(n)] for i in range(n)]
    for i, j in product(range(n), repeat=2):
        lhs = col(a.basis_product(i, j))
        rhs = a.mul(images[i], images[j])
        if any(p != q for p, q in zip(lhs, rhs)):
            return False
    return True


# --- affine vector fields ----------------------------------------------------

AffineField = tuple  # (matrix A, translation u): the field x -> A x + u


def field_product(f: AffineField, g: AffineField) -> AffineField:
    """(A,u)(B,v) = (BA, Bu): the flat covariant derivative of g along f."""
    (a, u), (b, _) = f, g
    return linalg.matmul(b, a), linalg.matvec(b, u)


def _flatten(f: AffineField) -> list[Fraction]:
    a, u = f
    return [Fraction(x) for row in a for x in row] + [Fraction(x) for x in u]


def affine_field_algebra(fields: Sequence[AffineField]) -> AlgebraSC:
    """Structure constants of the span of affine fields under field_product."""
    cols = [_flatten(f) for f in fields]
    mat = linalg.transpose(cols)
    if linalg.rank(mat) != len(fields):
        raise ValueError("affine fields are linearly dependent")
    consts = {}
    for i, j in product(range(len(fields)), repeat=2):
        x = linalg.solve(mat, _flatten(field_product(fields[i], fields[j])))
        if x is None:
            raise ValueError("span of the affine fields is not closed under the product")
        for k, v in enumerate(x):
            if v:
                consts[(i, j, k)] = v
    return AlgebraSC(len(fields), consts)


def regular_affine_fields(a: AlgebraSC) -> list[AffineField]:
    """u -> (x -> x u + u), a faithful affine realization of an associative algebra."""
    if not a.flags.associative:
        raise ValueError("the realization needs an associative algebra")
    n = a.dim
    fields = []
    for i in range(n):
        mat = [[Fraction(scalar(a.c(k, i, m))) for k in range(n)] for m in range(n)]
        fields.append((mat, [Fraction(int(i == k)) for k in range(n)]))
    return fields


def action_bivector(fields: Sequence[AffineField], r: Sequence[Sequence], ctx: Context | None = None) -> SymBivector:
    """rho(r) = sum r_ij rho(e_i) (x) rho(e_j) with rho(A,u) = Ax + u."""
    m = len(fields)
    rm = square(r, m, symmetric=True)
    n = len(fields[0][1]) if fields else (ctx.ncoords if ctx else 0)
    ctx = ctx or default_context(n)
    xs = [Poly.coord(ctx, k) for k in range(n)]
    rho = []
    for a, u in fields:
        rho.append([sum((xs[c] * Fraction(a[k][c]) for c in range(n)), Poly.const(ctx, u[k])) for k in range(n)])
    rows = []
    for k in range(n):
        row = []
        for l in range(n):
            p = Poly.zero(ctx)
            for i, j in product(range(m), repeat=2):
                if rm[i][j]:
                    p = p + rho[i][k] * rho[j][l] * rm[i][j]
            row.append(p)
        rows.append(row)
    return SymBivector(ctx, rows)
