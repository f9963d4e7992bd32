import random
from fractions import Fraction
from itertools import product

import pytest
import sympy as sp
from hypothesis import given, settings
from hypothesis import strategies as st

import generators as gen
import oracles
from cphess import catalog
from cphess.algebra import AlgebraSC, algebra_checks, flag_witness, is_lie
from cphess.classify import AutFamily, Representative, grid_classify, grid_values
from cphess.codazzi import codazzi_defect
from cphess.expr import parse_expr
from cphess.finalg import (
    action_bivector,
    affine_bivector,
    affine_field_algebra,
    aut_member,
    cocycle_defect,
    cocycle_space,
    cybe_lift_defect,
    decompose_affine,
    dual_poisson_defect,
    field_product,
    lift_r,
    phi_double,
    regular_affine_fields,
    smatrix_defect,
)
from cphess.poly import Context, Poly

WORKED = AlgebraSC.from_products(
    4, {(0, 0): {1: 1}, (0, 1): {2: 1}, (1, 0): {2: 1}, (0, 2): {3: 1}, (2, 0): {3: 1}, (1, 1): {3: 1}}
)
NIL2 = AlgebraSC.from_products(2, {(0, 0): {1: 1}})  # e1 e1 = e2, the As2-1 row
IDEM = AlgebraSC.from_products(2, {(0, 0): {0: 1}})
B4 = AlgebraSC.from_products(2, {(0, 0): {0: 2}, (0, 1): {1: 1}, (1, 1): {0: 1}})
B1_ONE = AlgebraSC.from_products(2, {(1, 0): {0: 1}, (1, 1): {1: 1}})
SWAP = [[0, 1], [1, 0]]


def table_algebras():
    return {eid: catalog.load_entry(eid).parse() for eid in catalog.list_entries("smatrix-row")}


# --- flags -----------------------------------------------------------------------


def test_worked_example_flags():
    f = algebra_checks(WORKED)
    assert f.commutative and f.associative and f.left_symmetric


def test_zero_algebra_flags():
    f = algebra_checks(AlgebraSC.zero(3))
    assert f.commutative and f.associative and f.left_symmetric


def test_b4_is_left_symmetric_not_associative():
    f = algebra_checks(B4)
    assert f.left_symmetric and not f.associative
    comm, assoc, lsym = oracles.algebra_flags(B4.constants, 2)
    assert (f.commutative, f.associative, f.left_symmetric) == (comm, assoc, lsym)


@settings(max_examples=60, deadline=None)
@given(st.integers(0, 10**6))
def test_flags_match_brute_force(seed):
    rng = random.Random(seed)
    n = rng.choice((2, 3))
    consts = {(i, j, k): rng.choice((-1, 1, 2)) for i, j, k in product(range(n), repeat=3) if rng.random() < 0.2}
    a = AlgebraSC(n, consts)
    f = algebra_checks(a)
    assert (f.commutative, f.associative, f.left_symmetric) == oracles.algebra_flags(consts, n)
    for flag, holds in (("commutative", f.commutative), ("associative", f.associative), ("left-symmetric", f.left_symmetric)):
        assert (flag_witness(a, flag) == []) == holds


def test_flag_witness_names_associator_entry():
    a = AlgebraSC.from_products(2, {(0, 0): {1: 1}, (1, 1): {0: 1}})
    # (e1 e1) e2 = e1 while e1 (e1 e2) = 0
    assert {"entry": [1, 1, 2, 1], "value": "1"} in flag_witness(a, "associative")
    assert flag_witness(a, "commutative") == []


def test_commutator_of_left_symmetric_is_lie():
    for doc in table_algebras().values():
        assert is_lie(phi_double(doc.algebra).lie)


# --- cocycles and affine bivectors ------------------------------------------------------


def test_nil2_cocycles_are_forms_with_b22_zero():
    """Brute force in sympy: B(e1 e1, e2) = B(e1, e1 e2) forces B(e2, e2) = 0 and nothing else."""
    b11, b12, b22 = sp.symbols("b11 b12 b22")
    bm = sp.Matrix([[b11, b12], [b12, b22]])
    e = [sp.Matrix([1, 0]), sp.Matrix([0, 1])]
    prod = lambda i, j: e[1] if (i, j) == (0, 0) else sp.zeros(2, 1)
    conditions = {sp.expand((prod(i, j).T * bm * e[k])[0] - (e[i].T * bm * prod(j, k))[0]) for i, j, k in product(range(2), repeat=3)}
    assert conditions - {0} == {b22, -b22}
    rng = random.Random(1)
    for _ in range(20):
        b = gen.random_symmetric_constant(rng, 2)
        assert (not cocycle_defect(NIL2, b)) == (b[1][1] == 0)
    assert len(cocycle_space(NIL2)) == 2


def test_zero_cocycle():
    assert not cocycle_defect(IDEM, [[0, 0], [0, 0]])


def test_cocycle_defect_value():
    d = cocycle_defect(IDEM, SWAP)
    assert d[(0, 0, 1)] == 1


def test_cocycle_space_is_exact():
    rng = random.Random(7)
    for _ in range(20):
        a = gen.commutative_associative(rng, rng.choice((2, 3)))
        for basis in cocycle_space(a):
            assert not cocycle_defect(a, basis)


def test_affine_bivector_of_worked_example():
    ctx = Context(["x", "y", "z", "t"])
    h = affine_bivector(WORKED, None, ctx)
    want = [["y", "z", "t", "0"], ["z", "t", "0", "0"], ["t", "0", "0", "0"], ["0", "0", "0", "0"]]
    assert h.to_rows() == want


def test_affine_bivector_with_cocycle():
    assert affine_bivector(NIL2, SWAP).to_rows() == [["x2", "1"], ["1", "0"]]


def test_affine_bivector_of_zero():
    assert affine_bivector(AlgebraSC.zero(2)).is_zero()


def test_decompose_inverts_affine_bivector():
    rng = random.Random(3)
    for _ in range(10):
        a = gen.random_commutative(rng, 3)
        b = gen.random_symmetric_constant(rng, 3)
        a2, b2 = decompose_affine(affine_bivector(a, b))
        assert a2.constants == a.constants and b2 == b


@settings(max_examples=100, deadline=None)
@given(st.integers(0, 10**6))
def test_affine_biconditional(seed):
    rng = random.Random(seed)
    n = rng.choice((1, 2, 3))
    a = gen.commutative_associative(rng, n) if rng.random() < 0.5 else gen.random_commutative(rng, n)
    b = gen.random_cocycle(rng, a) if rng.random() < 0.5 else gen.random_symmetric_constant(rng, n)
    f = a.flags
    want = f.associative and f.commutative and not cocycle_defect(a, b)
    assert codazzi_defect(affine_bivector(a, b)).is_zero() == want


def test_dual_poisson_examples():
    assert dual_poisson_defect(WORKED).is_zero()
    assert dual_poisson_defect(AlgebraSC.zero(2)).is_zero()
    assert dual_poisson_defect(NIL2, SWAP).is_zero()


def test_dual_poisson_requires_commutative_associative():
    bad = AlgebraSC.from_products(2, {(0, 0): {1: 1}, (1, 1): {0: 1}})
    with pytest.raises(ValueError):
        dual_poisson_defect(bad)


# --- S-matrices ---------------------------------------------------------------------


def test_smatrix_examples():
    assert not smatrix_defect(NIL2, SWAP)
    assert not smatrix_defect(NIL2, [[0, 0], [0, 0]])
    d = smatrix_defect(NIL2, [[1, 0], [0, 0]])
    assert abs(d[(0, 1, 0)]) == 1


def test_parameterized_smatrix_is_identity():
    ctx = Context([], ["c"])
    c = Poly.var(ctx, "c")
    assert not smatrix_defect(B1_ONE, [[1, c], [c, c * c]])


def test_nil2_smatrix_locus_is_r11_zero():
    grid = grid_values(2)
    for r11, r12, r22 in product(grid, repeat=3):
        assert (not smatrix_defect(NIL2, [[r11, r12], [r12, r22]])) == (r11 == 0)


@settings(max_examples=60, deadline=None)
@given(st.integers(0, 10**6))
def test_smatrix_defect_matches_oracle(seed):
    rng = random.Random(seed)
    docs = table_algebras()
    eid = rng.choice(sorted(e for e, d in docs.items() if not any(isinstance(v, Poly) for v in d.algebra.constants.values())))
    a = docs[eid].algebra
    r = gen.random_symmetric_constant(rng, 2)
    mine = smatrix_defect(a, r)
    consts = {k: sp.Rational(str(v)) for k, v in a.constants.items()}
    want = oracles.smatrix_defect(consts, sp.Matrix([[sp.Rational(str(x)) for x in row] for row in r]))
    assert (not mine) == all(e == 0 for e in want)
    # defect entries are ordered (i<j, k) exactly as the oracle lists them
    flat = [mine.get((0, 1, k), 0) for k in range(2)]
    assert [sp.Rational(str(x)) for x in flat] == want


def test_phi_double_of_zero():
    d = phi_double(AlgebraSC.zero(2))
    assert not d.star.constants and not d.lie.constants and not d.j0_defect


def test_phi_double_of_nil2():
    d = phi_double(NIL2)
    assert d.star.constants == {(0, 0, 1): 1, (0, 2, 3): 1}
    assert d.star.flags.left_symmetric and not d.j0_defect


def test_phi_double_requires_left_symmetry():
    with pytest.raises(ValueError):
        phi_double(AlgebraSC.from_products(2, {(0, 1): {0: 1}, (1, 0): {1: 1}, (1, 1): {0: 1}}))


def test_lift_r_shape():
    big = lift_r([[1, 2], [2, 3]])
    assert big[0][2] == 1 and big[2][0] == -1 and big[1][3] == 3 and big[0][1] == 0


def test_cybe_lift_examples():
    assert not cybe_lift_defect(NIL2, SWAP)
    assert not cybe_lift_defect(NIL2, [[0, 0], [0, 0]])
    assert cybe_lift_defect(NIL2, [[1, 0], [0, 0]])


@settings(max_examples=60, deadline=None)
@given(st.integers(0, 10**6))
def test_smatrix_iff_cybe_on_table(seed):
    rng = random.Random(seed)
    docs = table_algebras()
    doc = docs[rng.choice(sorted(docs))]
    r = gen.random_symmetric_constant(rng, 2)
    if rng.random() < 0.3:
        r[0][0] = Fraction(0)
    assert (not smatrix_defect(doc.algebra, r)) == (not cybe_lift_defect(doc.algebra, r))


# --- automorphisms ------------------------------------------------------------------


def test_aut_examples():
    assert aut_member(NIL2, [[2, 0], [3, 4]])
    assert aut_member(B4, [[1, 0], [0, 1]])
    assert not aut_member(NIL2, [[1, 1], [0, 1]])


def test_aut_rejects_singular():
    with pytest.raises(ValueError):
        aut_member(NIL2, [[1, 0], [0, 0]])


@settings(max_examples=60, deadline=None)
@given(st.integers(0, 10**6))
def test_random_matrices_fail_aut(seed):
    rng = random.Random(seed)
    m = [[rng.randint(-3, 3) for _ in range(2)] for _ in range(2)]
    if m[0][0] * m[1][1] - m[0][1] * m[1][0] == 0 or m[0][1] == 0:
        return
    # an automorphism of e1 e1 = e2 fixes the line of e2, so m[0][1] must vanish
    assert not aut_member(NIL2, m)


# --- grid classification -------------------------------------------------------------


def _as21_inputs():
    doc = catalog.load_entry("sec6-As2-1").parse()
    reps = [Representative(label, tuple(tuple(r) for r in m)) for label, m in doc.smatrices]
    aut = AutFamily(tuple(tuple(tuple(r) for r in m) for m in doc.aut))
    return doc.algebra, reps, aut


def test_grid_bound_zero():
    a, reps, aut = _as21_inputs()
    rep = grid_classify(a, 0, reps, aut)
    assert rep.solutions == [[[0, 0], [0, 0]]]
    assert rep.matches[0].label == "r3"


def test_grid_bound_two():
    a, reps, aut = _as21_inputs()
    rep = grid_classify(a, 2, reps, aut)
    assert {tuple(map(tuple, r)) for r in rep.solutions} == {
        ((0, b), (b, c)) for b, c in product(grid_values(2), repeat=2)
    }
    assert not rep.unmatched
    assert {m.label for m in rep.matches} == {"r1", "r2", "r3"}


def test_grid_b1_alpha_one_bound_one():
    doc = catalog.load_entry("sec6-b1-alpha-1").parse()
    reps = [Representative(label, tuple(tuple(r) for r in m)) for label, m in doc.smatrices]
    aut = AutFamily(tuple(tuple(tuple(r) for r in m) for m in doc.aut))
    rep = grid_classify(doc.algebra, 1, reps, aut)
    assert rep.solutions and not rep.unmatched
    # the printed Aut family is too large; grid samples outside Aut are discarded, not used
    assert rep.rejected_automorphisms > 0


def test_grid_reports_unmatched_rather_than_dropping():
    doc = catalog.load_entry("sec6-As2-4").parse()
    reps = [Representative(label, tuple(tuple(r) for r in m)) for label, m in doc.smatrices]
    aut = AutFamily(tuple(tuple(tuple(r) for r in m) for m in doc.aut))
    rep = grid_classify(doc.algebra, 1, reps, aut)
    assert len(rep.matches) == len(rep.solutions)
    assert rep.unmatched
    assert rep.as_dict()["unmatched"] == len(rep.unmatched)


def test_grid_rejects_parameterized_algebra():
    doc = catalog.load_entry("sec6-b1-alpha").parse()
    with pytest.raises(ValueError):
        grid_classify(doc.algebra, 1)


# --- affine vector fields --------------------------------------------------------------


def test_gl1_action():
    fields = [([[1]], [0])]
    h = action_bivector(fields, [[1]])
    assert h.to_rows() == [["x1^2"]]
    assert codazzi_defect(h).is_zero()


def test_zero_r_action():
    assert action_bivector([([[1]], [0])], [[0]]).is_zero()


def test_translations_give_constant_codazzi():
    fields = [([[0, 0], [0, 0]], [1, 0]), ([[0, 0], [0, 0]], [0, 1])]
    h = action_bivector(fields, [[2, -1], [-1, 3]])
    assert h.to_rows() == [["2", "-1"], ["-1", "3"]]
    assert codazzi_defect(h).is_zero()


def test_field_product_convention():
    f = ([[1, 0], [0, 0]], [0, 1])
    g = ([[0, 1], [0, 0]], [1, 0])
    assert field_product(f, g) == ([[0, 0], [0, 0]], [1, 0])


def test_regular_fields_realize_the_algebra():
    for a in (NIL2, WORKED, IDEM):
        assert affine_field_algebra(regular_affine_fields(a)).constants == a.constants


@pytest.mark.parametrize("eid, bound", [("sec6-As2-1", 2), ("sec6-As2-4", 1)])
def test_actions_of_grid_smatrices_are_codazzi(eid, bound):
    a = catalog.load_entry(eid).parse().algebra
    fields = regular_affine_fields(a)
    rep = grid_classify(a, bound)
    assert rep.solutions
    for r in rep.solutions:
        assert codazzi_defect(action_bivector(fields, r)).is_zero()


def test_action_of_non_smatrix_can_fail():
    fields = regular_affine_fields(NIL2)
    assert not codazzi_defect(action_bivector(fields, [[1, 0], [0, 0]])).is_zero()


def test_parse_of_table_constant_context():
    doc = catalog.load_entry("sec6-b1-alpha").parse()
    assert any(isinstance(v, Poly) for v in doc.algebra.constants.values())
    assert parse_expr("alpha", Context([], ["alpha"])).is_param_only()
