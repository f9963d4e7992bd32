import random
from fractions import Fraction

from hypothesis import given, settings
from hypothesis import strategies as st

import generators as gen
from cphess import linalg
from cphess.codazzi import codazzi_defect, dh
from cphess.expr import parse_expr
from cphess.multivector import MultiVector, SymBivector, divergence
from cphess.poly import Context, Poly
from cphess.tangent import (
    TangentModel,
    coho_defect,
    d_pi,
    lift_divergence_defect,
    lift_poisson,
    poisson_defect,
    vertical_lift,
)

X2 = Context(["x1", "x2"])
T2 = TangentModel.of(X2).ctx


def P(text, ctx=X2):
    return parse_expr(text, ctx)


def sym(rows, ctx=X2):
    return SymBivector(ctx, [[P(x, ctx) for x in row] for row in rows])


H_LIN = sym([["x2", "0"], ["0", "0"]])
H_QUAD = sym([["x1^2", "x1*x2"], ["x1*x2", "x2^2"]])
H_BAD = sym([["x2", "0"], ["0", "x1"]])


def test_fiber_names_follow_coordinates():
    assert TangentModel.of(X2).ctx.coordinates == ("x1", "x2", "y1", "y2")
    other = TangentModel.of(Context(["x", "y"])).ctx
    assert other.coordinates == ("x", "y", "v_x", "v_y")


def test_fiber_names_avoid_collisions():
    ctx = Context(["x1", "x2"], ["y1"])
    assert TangentModel.of(ctx).fiber == ("v_x1", "v_x2")


def test_lift_of_linear_example():
    pi = lift_poisson(H_LIN)
    assert pi.comps == {(0, 2): P("x2", T2)}


def test_lift_of_zero():
    assert lift_poisson(SymBivector.zero(X2)).is_zero()


def test_lift_of_rank_one_quadratic():
    pi = lift_poisson(H_QUAD)
    assert pi.comps == {
        (0, 2): P("x1^2", T2),
        (0, 3): P("x1*x2", T2),
        (1, 2): P("x1*x2", T2),
        (1, 3): P("x2^2", T2),
    }


def test_poisson_defect_examples():
    assert poisson_defect(H_QUAD).is_zero()
    assert poisson_defect(sym([["1", "2"], ["2", "5"]])).is_zero()
    d = poisson_defect(H_BAD)
    assert not d.is_zero() and d.degree == 3


def test_vertical_lift_examples():
    v = vertical_lift(MultiVector.vector_field(X2, [1, 0]))
    assert v.comps == {(2,): Poly.const(T2, 1)}
    q = MultiVector(X2, 2, {(0, 1): P("x2")})
    assert vertical_lift(q).comps == {(2, 3): P("x2", T2)}
    assert vertical_lift(divergence(H_QUAD)).comps == {(2,): P("3*x1", T2), (3,): P("3*x2", T2)}


def test_coho_examples():
    assert coho_defect(H_QUAD, MultiVector.function(Poly.const(X2, 1))).is_zero()
    assert coho_defect(H_QUAD, divergence(H_QUAD)).is_zero()
    assert coho_defect(H_LIN, MultiVector(X2, 1, {(0,): P("x1")})).is_zero()


@settings(max_examples=30, deadline=None)
@given(st.integers(0, 10**6))
def test_coho_holds_without_codazzi(seed):
    """Only vertical forms enter, whose Koszul brackets vanish, so h need not be Codazzi."""
    rng = random.Random(seed)
    h = gen.random_symmetric(rng, 3)
    index_sets = {0: [()], 1: [(0,), (1,), (2,)], 2: [(0, 1), (0, 2), (1, 2)]}
    for degree, keys in index_sets.items():
        q = MultiVector(h.ctx, degree, {k: gen.random_poly(rng, h.ctx, 2) for k in keys})
        assert coho_defect(h, q).is_zero()


def test_coho_signs_are_opposite():
    """(d_h Q)^v equals minus d_Pi(Q^v), and neither side is zero here."""
    q = MultiVector.function(P("x1*x2"))
    left = vertical_lift(dh(H_QUAD, q))
    right = d_pi(lift_poisson(H_QUAD), vertical_lift(q))
    assert not left.is_zero()
    assert left == -right


def test_lift_divergence_examples():
    for h in (H_QUAD, SymBivector.zero(X2), H_BAD):
        assert lift_divergence_defect(h).is_zero()


@settings(max_examples=50, deadline=None)
@given(st.integers(0, 10**6))
def test_equivalence_on_random_bivectors(seed):
    rng = random.Random(seed)
    h = gen.codazzi_population(rng, 2)[seed % 2]
    assert codazzi_defect(h).is_zero() == poisson_defect(h).is_zero()


@settings(max_examples=50, deadline=None)
@given(st.integers(0, 10**6))
def test_lift_has_bidegree_one_one(seed):
    rng = random.Random(seed)
    h = gen.random_symmetric(rng, rng.choice((2, 3)))
    n = h.dim
    for i, j in lift_poisson(h).comps:
        assert i < n <= j


def test_complex_structure_squares_to_minus_identity():
    for n in (1, 2, 3, 4):
        ctx = Context([f"x{i}" for i in range(1, n + 1)])
        j = TangentModel.of(ctx).complex_structure()
        minus = [[-x for x in row] for row in linalg.identity(2 * n)]
        assert linalg.matmul(j, j) == minus


@settings(max_examples=50, deadline=None)
@given(st.integers(0, 10**6))
def test_lift_is_j_invariant_at_points(seed):
    rng = random.Random(seed)
    n = rng.choice((2, 3))
    h = gen.random_symmetric(rng, n)
    pi = lift_poisson(h)
    model = TangentModel.of(h.ctx)
    pt = {c: Fraction(rng.randint(-3, 3), rng.randint(1, 3)) for c in model.ctx.coordinates}
    m = [[pi[(a, b)].eval(pt) if a != b else Fraction(0) for b in range(2 * n)] for a in range(2 * n)]
    j = model.complex_structure()
    assert linalg.matmul(linalg.matmul(j, m), linalg.transpose(j)) == m
