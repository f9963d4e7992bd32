"""Named checks that catalog expectations (and the CLI) can invoke.

A check receives a parsed :class:`~cphess.docio.Document` plus an
argument mapping and returns an :class:`Outcome`: the observed value, which
is compared with the expectation, and a witness explaining it.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import product
from typing import Any, Callable, Mapping

from ..algebra import algebra_checks, is_lie
from ..classify import AutFamily, Representative, grid_classify
from ..codazzi import (
    anchor_commutators,
    anchors,
    codazzi_defect,
    dh,
    divergence_linear_part,
    jordan_class,
    leaf_metric,
    point_algebra,
    volume_identity_defect,
)
from ..docio import Document, dump_algebra, fmt_scalar, parse_value
from ..finalg import (
    action_bivector,
    affine_bivector,
    aut_member,
    cocycle_defect,
    cybe_lift_defect,
    decompose_affine,
    dual_poisson_defect,
    phi_double,
    smatrix_defect,
)
from ..multivector import MultiVector, divergence
from ..poly import Poly
from ..tangent import coho_defect, lift_divergence_defect, poisson_defect


class CheckError(ValueError):
    """A check cannot run on the given document (missing field, bad argument)."""


@dataclass
class Outcome:
    observed: Any
    witness: Any = None


CHECKS: dict[str, Callable[[Document, Mapping], Outcome]] = {}
DEFAULT_SAMPLES = ("1", "-1", "2", "-1/2", "3")


def check(name: str):
    def register(fn):
        CHECKS[name] = fn
        return fn

    return register


def run_check(name: str, doc: Document, args: Mapping | None = None) -> Outcome:
    fn = CHECKS.get(name)
    if fn is None:
        raise CheckError(f"unknown check {name!r}")
    return fn(doc, dict(args or {}))


def _need(doc: Document, attr: str):
    value = getattr(doc, attr)
    if value is None or value == []:
        raise CheckError(f"document has no {attr!r}")
    return value


def _mv_witness(mv: MultiVector) -> dict:
    return mv.to_dict()


def _fmt_defect(values: Mapping) -> list[dict]:
    return [{"entry": [i + 1 for i in k], "value": fmt_scalar(v)} for k, v in values.items()]


def _matrix_str(m) -> list[list[str]]:
    return [[fmt_scalar(x) for x in row] for row in m]


def _test_forms(doc: Document) -> list[MultiVector]:
    """Functions x_i, vector fields x_i d/dx_j and the divergence of h."""
    h = _need(doc, "bivector")
    ctx = h.ctx
    n = h.dim
    out = [MultiVector.function(Poly.coord(ctx, i)) for i in range(n)]
    for i, j in product(range(n), repeat=2):
        out.append(MultiVector(ctx, 1, {(j,): Poly.coord(ctx, i)}))
    out.append(divergence(h))
    return out


# --- bivector checks -------------------------------------------------------

@check("codazzi")
def _codazzi(doc, args):
    d = codazzi_defect(_need(doc, "bivector"))
    return Outcome(d.is_zero(), d.witness() or None)


@check("poisson-lift")
def _poisson(doc, args):
    d = poisson_defect(_need(doc, "bivector"))
    return Outcome(d.is_zero(), _mv_witness(d) or None)


@check("lift-divergence")
def _lift_div(doc, args):
    d = lift_divergence_defect(_need(doc, "bivector"))
    return Outcome(d.is_zero(), _mv_witness(d) or None)


@check("volume-identity")
def _volume(doc, args):
    h = _need(doc, "bivector")
    ctx = h.ctx
    funcs = args.get("functions")
    if funcs is None:
        xs = [Poly.coord(ctx, i) for i in range(h.dim)]
        fs = xs + [a * b for a in xs for b in xs]
    else:
        fs = [parse_value(f, ctx, "args.functions") for f in funcs]
    g = parse_value(args["log_density"], ctx, "args.log_density") if "log_density" in args else None
    for f in fs:
        d = volume_identity_defect(h, f, g)
        if d:
            return Outcome(False, {"function": str(f), "defect": str(d)})
    return Outcome(True)


@check("dh-div-closed")
def _dh_div(doc, args):
    h = _need(doc, "bivector")
    d = dh(h, divergence(h))
    return Outcome(d.is_zero(), _mv_witness(d) or None)


@check("dh-squared")
def _dh_sq(doc, args):
    h = _need(doc, "bivector")
    for q in _test_forms(doc):
        if q.degree + 2 > h.dim:
            continue
        d = dh(h, dh(h, q))
        if not d.is_zero():
            return Outcome(False, {"input": q.to_dict(), "degree": q.degree, "defect": d.to_dict()})
    return Outcome(True)


@check("anchor-commute")
def _anchor_commute(doc, args):
    brackets = anchor_commutators(_need(doc, "bivector"))
    witness = [{"pair": [i + 1, j + 1], "bracket": b.to_dict()} for (i, j), b in brackets.items()]
    return Outcome(not brackets, witness or None)


@check("coho")
def _coho(doc, args):
    h = _need(doc, "bivector")
    for q in _test_forms(doc):
        if q.degree + 1 > h.dim:
            continue
        d = coho_defect(h, q)
        if not d.is_zero():
            return Outcome(False, {"input": q.to_dict(), "degree": q.degree, "defect": d.to_dict()})
    return Outcome(True)


@check("divergence-free")
def _div_free(doc, args):
    d = divergence(_need(doc, "bivector"))
    return Outcome(d.is_zero(), _mv_witness(d) or None)


@check("divergence-linear-part")
def _div_linear(doc, args):
    try:
        mat = divergence_linear_part(_need(doc, "bivector"))
    except ValueError as exc:
        return Outcome(None, str(exc))
    return Outcome(_matrix_str(mat))


@check("jordan-class")
def _jordan(doc, args):
    """Class of the divergence linear part at each sampled parameter assignment."""
    h = _need(doc, "bivector")
    mat = divergence_linear_part(h)
    samples = args.get("assignments") or [{}]
    classes = []
    for assignment in samples:
        values = {k: Fraction(v) for k, v in assignment.items()}
        num = [[x.eval(values) for x in row] for row in mat]
        classes.append({"assignment": dict(assignment), "class": jordan_class(num), "matrix": _matrix_str(num)})
    kinds = {c["class"] for c in classes}
    return Outcome(kinds.pop() if len(kinds) == 1 else sorted(kinds), classes)


@check("affine-criterion")
def _affine_criterion(doc, args):
    """Associative and commutative linear part with a cocycle constant part."""
    a, b = decompose_affine(_need(doc, "bivector"))
    flags = a.flags
    cdef = cocycle_defect(a, b)
    ok = flags.associative and flags.commutative and not cdef
    witness = {"flags": flags.as_dict(), "cocycle_defect": _fmt_defect(cdef)}
    return Outcome(ok, witness)


@check("affine-reproduces")
def _affine_reproduces(doc, args):
    h = _need(doc, "bivector")
    built = affine_bivector(_need(doc, "algebra"), doc.cocycle, h.ctx)
    diff = [
        {"entry": [i + 1, j + 1], "document": str(h[(i, j)]), "built": str(built[(i, j)])}
        for i in range(h.dim)
        for j in range(i, h.dim)
        if h[(i, j)] != built[(i, j)]
    ]
    return Outcome(not diff, diff or None)


@check("point-algebra")
def _point_algebra(doc, args):
    """Algebra at a zero of h: associative, commutative, and equal to the source."""
    h = _need(doc, "bivector")
    point = doc.point if doc.point is not None else [Fraction(0)] * h.dim
    alg = point_algebra(h, point)
    source = doc.algebra if doc.algebra is not None else decompose_affine(h)[0]
    flags = alg.flags
    same = alg.constants == source.constants
    return Outcome(
        flags.associative and flags.commutative and same,
        {"algebra": dump_algebra(alg), "flags": flags.as_dict(), "matches_source": same},
    )


@check("anchors")
def _anchors(doc, args):
    h = _need(doc, "bivector")
    want = _need(doc, "anchors")
    got = [a.vector() for a in anchors(h)]
    diff = [
        {"anchor": i + 1, "document": [str(x) for x in want[i]], "computed": [str(x) for x in got[i]]}
        for i in range(h.dim)
        if list(want[i]) != got[i]
    ]
    return Outcome(not diff, diff or None)


@check("hessian-potential")
def _hessian(doc, args):
    """Hessian of the potential, after substitution, against the stated metric."""
    pot = _need(doc, "potential")
    ctx = pot["context"]
    phi = pot["function"]
    subs = pot["substitute"]
    n = ctx.ncoords
    mismatches = []
    for i in range(n):
        for j in range(i, n):
            hij = phi.diff_coord(i).diff_coord(j)
            if subs:
                hij = hij.subs(subs)
            want = pot["metric"][i][j]
            if hij != want:
                mismatches.append({"entry": [i + 1, j + 1], "hessian": str(hij), "metric": str(want)})
    return Outcome(not mismatches, mismatches or None)


@check("signature")
def _signature(doc, args):
    h = _need(doc, "bivector")
    ctx = h.ctx
    raw = args.get("point")
    if raw is None:
        raise CheckError("signature needs a 'point' argument")
    point = [Fraction(x) for x in raw]
    params = {k: Fraction(v) for k, v in args.get("assignment", {}).items()}
    for name in params:
        if ctx.kind(name) == "coordinate":
            raise CheckError(f"{name!r} is a coordinate; pass it in 'point'")
    g = leaf_metric(h, point, params)
    return Outcome(list(g.signature), g.as_dict())


# --- algebra checks ----------------------------------------------------------

@check("flags")
def _flags(doc, args):
    flags = algebra_checks(_need(doc, "algebra")).as_dict()
    keys = args.get("keys")
    return Outcome({k: flags[k] for k in keys} if keys else flags)


@check("cocycle")
def _cocycle(doc, args):
    d = cocycle_defect(_need(doc, "algebra"), _need(doc, "cocycle"))
    return Outcome(not d, _fmt_defect(d) or None)


@check("dual-poisson")
def _dual_poisson(doc, args):
    d = dual_poisson_defect(_need(doc, "algebra"), doc.cocycle)
    return Outcome(d.is_zero(), _mv_witness(d) or None)


@check("aut-family")
def _aut(doc, args):
    """Every listed automorphism matrix, sampled on a grid, preserves the product."""
    a = _need(doc, "algebra")
    mats = _need(doc, "aut")
    samples = [Fraction(s) for s in args.get("samples", DEFAULT_SAMPLES)]
    tried = 0
    failures = []
    for t, m in enumerate(mats):
        for assignment, num in AutFamily((m,)).samples(samples):
            tried += 1
            if not aut_member(a, num):
                failures.append({"matrix": t + 1, "assignment": {k: fmt_scalar(v) for k, v in assignment.items()}})
    witness = {"samples_tried": tried, "failures": failures[:10], "failure_count": len(failures)}
    return Outcome(not failures, witness)


def _smatrix_by_label(doc: Document, label: str):
    for lab, m in doc.smatrices:
        if lab == label:
            return m
    if doc.smatrix is not None and label in ("", "r"):
        return doc.smatrix
    raise CheckError(f"no S-matrix labelled {label!r}")


@check("smatrix")
def _smatrix(doc, args):
    r = _smatrix_by_label(doc, args.get("label", "r"))
    d = smatrix_defect(_need(doc, "algebra"), r)
    return Outcome(not d, _fmt_defect(d) or None)


@check("cybe-lift")
def _cybe(doc, args):
    r = _smatrix_by_label(doc, args.get("label", "r"))
    d = cybe_lift_defect(_need(doc, "algebra"), r)
    return Outcome(not d, _fmt_defect(d) or None)


@check("phi-double")
def _phi(doc, args):
    """Doubling is left-symmetric, its commutator is Lie and J0 is integrable."""
    dbl = phi_double(_need(doc, "algebra"))
    star = dbl.star.flags
    lie = is_lie(dbl.lie)
    ok = star.left_symmetric and not dbl.j0_defect and lie
    return Outcome(
        ok,
        {
            "star_left_symmetric": star.left_symmetric,
            "lie_jacobi": lie,
            "j0_defect": _fmt_defect(dbl.j0_defect),
        },
    )


@check("grid-classify")
def _grid(doc, args):
    a = _need(doc, "algebra")
    bound = int(args.get("bound", 1))
    reps = [Representative(label, tuple(tuple(r) for r in m)) for label, m in doc.smatrices]
    aut = AutFamily(tuple(tuple(tuple(r) for r in m) for m in doc.aut)) if doc.aut else None
    report = grid_classify(a, bound, reps, aut, args.get("aut_bound"))
    summary = {"solutions": len(report.solutions), "unmatched": len(report.unmatched)}
    keys = args.get("report", ["unmatched"])
    return Outcome({k: summary[k] for k in keys}, report.as_dict())


@check("action-codazzi")
def _action(doc, args):
    """Bivector of an S-matrix pushed through affine vector fields is Codazzi."""
    fields = _need(doc, "fields")
    r = _need(doc, "smatrix")
    h = action_bivector(fields, r, doc.ctx)
    d = codazzi_defect(h)
    witness = {"bivector": h.to_rows(), "defect": d.witness()}
    if doc.bivector is not None and doc.bivector.rows != h.rows:
        return Outcome(False, dict(witness, mismatch="action bivector differs from the document bivector"))
    return Outcome(d.is_zero(), witness)


def available() -> list[str]:
    return sorted(CHECKS)


__all__ = ["CHECKS", "CheckError", "Outcome", "available", "run_check"]
