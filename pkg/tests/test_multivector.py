import random
from fractions import Fraction
from itertools import combinations

import pytest
import sympy as sp
from hypothesis import given, settings
from hypothesis import strategies as st

import generators as gen
import oracles
from cphess.expr import parse_expr
from cphess.multivector import MultiVector, SymBivector, divergence, hess_pairing, schouten_self, skew_bivector
from cphess.poly import Context, Poly

X2 = Context(["x1", "x2"])
X4 = Context(["x1", "x2", "y1", "y2"])


def P(text, ctx=X2):
    return parse_expr(text, ctx)


def sym(rows, ctx=X2):
    return SymBivector(ctx, [[P(x, ctx) for x in row] for row in rows])


# --- storage --------------------------------------------------------------------


def test_only_increasing_indices_stored():
    mv = MultiVector(X4, 2, {(1, 0): P("x1", X4)})
    assert mv.comps == {(0, 1): -P("x1", X4)}
    assert mv[(1, 0)] == P("x1", X4)


def test_repeated_index_vanishes():
    assert MultiVector(X4, 2, {(2, 2): 1}).is_zero()


def test_degree_cap():
    with pytest.raises(ValueError):
        MultiVector(Context([f"x{i}" for i in range(6)]), 5)


def test_symmetric_bivector_rejects_asymmetry():
    with pytest.raises(ValueError):
        sym([["x1", "1"], ["0", "0"]])


# --- Schouten self-bracket ---------------------------------------------------------------


def test_schouten_of_lift_of_linear_bivector_is_zero():
    pi = skew_bivector(X4, {(0, 2): P("x2", X4)})
    assert schouten_self(pi).is_zero()


def test_schouten_of_zero():
    assert schouten_self(MultiVector.zero(X4, 2)).is_zero()


def test_schouten_nonzero_example():
    ctx = Context(["x", "y", "z"])
    pi = skew_bivector(ctx, {(0, 1): P("x", ctx), (1, 2): P("y", ctx)})
    s = schouten_self(pi)
    # {x,y} = x, {y,z} = y, {x,z} = 0 is not a Lie bracket: the Jacobiator is x
    assert not s.is_zero()
    xs = sp.symbols("x y z")
    jac = oracles.poisson_jacobiator({(0, 1): xs[0], (1, 2): xs[1]}, xs)
    assert {k: oracles.to_sympy(v) for k, v in s.comps.items()} == {k: 2 * v for k, v in jac.items()}


def test_constant_bivector_is_poisson():
    ctx = Context(["a", "b", "c", "d"])
    pi = skew_bivector(ctx, {(0, 1): 3, (1, 3): -2, (0, 2): Fraction(1, 2)})
    assert schouten_self(pi).is_zero()


def test_linear_lie_poisson_with_vanishing_bracket():
    ctx = Context(["x", "y", "z"])
    # {x,y} = z, {y,z} = x, {x,z} = 0 satisfies Jacobi
    pi = skew_bivector(ctx, {(0, 1): P("z", ctx), (1, 2): P("x", ctx)})
    assert schouten_self(pi).is_zero()


def test_linear_lie_poisson_so3():
    ctx = Context(["x", "y", "z"])
    pi = skew_bivector(ctx, {(0, 1): P("z", ctx), (1, 2): P("x", ctx), (0, 2): -P("y", ctx)})
    assert schouten_self(pi).is_zero()


@st.composite
def skew_bivectors(draw):
    m = draw(st.sampled_from((3, 4)))
    ctx = Context([f"z{i}" for i in range(m)])
    rng = random.Random(draw(st.integers(0, 10**6)))
    comps = {(i, j): gen.random_poly(rng, ctx, 2, density=0.25) for i, j in combinations(range(m), 2)}
    return skew_bivector(ctx, comps), comps


@settings(max_examples=40, deadline=None)
@given(skew_bivectors())
def test_schouten_is_twice_jacobiator(data):
    pi, comps = data
    syms = oracles.symbols_for(pi.ctx)
    xs = [syms[c] for c in pi.ctx.coordinates]
    jac = oracles.poisson_jacobiator({k: oracles.to_sympy(v, syms) for k, v in comps.items()}, xs)
    s = schouten_self(pi)
    got = {k: oracles.to_sympy(v, syms) for k, v in s.comps.items()}
    assert set(got) == set(jac)
    for k in jac:
        assert sp.expand(got[k] - 2 * jac[k]) == 0


# --- divergence --------------------------------------------------------------------


def test_divergence_of_quadratic_family_item1_is_zero():
    ctx = Context(["x1", "x2"], ["u"])
    h = SymBivector(ctx, [[0, 0], [0, parse_expr("u*x1^2", ctx)]])
    assert divergence(h).is_zero()


def test_divergence_of_constant_is_zero():
    assert divergence(sym([["1", "2"], ["2", "-3"]])).is_zero()


def test_divergence_of_rank_one_quadratic():
    h = sym([["x1^2", "x1*x2"], ["x1*x2", "x2^2"]])
    assert divergence(h).vector() == [P("3*x1"), P("3*x2")]


def test_divergence_of_bivector_field():
    pi = skew_bivector(X4, {(0, 2): P("x1*y1", X4)})
    d = divergence(pi)
    # div(pi)^j = sum_i d_i pi^{ij}: j = 2 gets d_x1(x1 y1) = y1, j = 0 gets -d_y1(x1 y1) = -x1
    assert d.vector() == [-P("x1", X4), Poly.zero(X4), P("y1", X4), Poly.zero(X4)]


@settings(max_examples=40, deadline=None)
@given(st.integers(0, 10**6), st.integers(0, 10**6))
def test_divergence_is_additive(s1, s2):
    a = gen.random_symmetric(random.Random(s1), 3)
    b = gen.random_symmetric(random.Random(s2), 3)
    assert divergence(a + b) == divergence(a) + divergence(b)


# --- Hessian pairing -------------------------------------------------------------------


def test_hess_pairing_single_term():
    assert hess_pairing(sym([["x2", "0"], ["0", "0"]]), P("x1^2")) == P("2*x2")


def test_hess_pairing_linear_function():
    h = gen.random_symmetric(random.Random(5), 2)
    assert hess_pairing(h, P("3*x1 - x2 + 7")).is_zero()


def test_hess_pairing_identity_is_laplacian():
    assert hess_pairing(sym([["1", "0"], ["0", "1"]]), P("x1^2 + x2^2")) == Poly.const(X2, 4)


@settings(max_examples=40, deadline=None)
@given(st.integers(0, 10**6))
def test_hess_pairing_leibniz(seed):
    """<h, Hess(fg)> = f<h,Hess g> + g<h,Hess f> + 2 h(df, dg)."""
    rng = random.Random(seed)
    h = gen.random_symmetric(rng, 2)
    ctx = h.ctx
    f, g = gen.random_poly(rng, ctx, 2), gen.random_poly(rng, ctx, 2)
    cross = Poly.zero(ctx)
    for i in range(2):
        for j in range(2):
            cross = cross + h[(i, j)] * f.diff_coord(i) * g.diff_coord(j)
    assert hess_pairing(h, f * g) == f * hess_pairing(h, g) + g * hess_pairing(h, f) + cross * 2
