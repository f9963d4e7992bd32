"""JSON documents carrying tensors, algebras and matrices.

Every exact value travels as an expression string, so a document
survives any JSON implementation unchanged.  Parsing followed by
serialization produces canonical text, and a second round is a fixed
point.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any, Mapping

from .algebra import AlgebraSC
from .expr import ParseError, parse_expr
from .multivector import MultiVector, SymBivector
from .poly import Context, Poly, PolyError, as_number

SCHEMA = "cphess/1"


class DocumentError(ValueError):
    """Malformed document; ``path`` locates the field, ``position`` the character."""

    def __init__(self, message: str, path: str = "", position: int | None = None) -> None:
        where = f" at {path}" if path else ""
        if position is not None:
            where += f" (character {position})"
        super().__init__(message + where)
        self.message = message
        self.path = path
        self.position = position

    def as_dict(self) -> dict:
        return {"message": self.message, "path": self.path, "position": self.position}


def dumps(data: Any) -> str:
    return json.dumps(data, indent=2, sort_keys=True, ensure_ascii=False) + "\n"


def loads(text: str, path: str = "") -> Any:
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise DocumentError(f"invalid JSON: {exc.msg} (line {exc.lineno}, column {exc.colno})", path, exc.pos) from None


def fmt_scalar(x) -> str:
    if isinstance(x, Fraction):
        return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"
    return str(x)


def parse_value(raw, ctx: Context, path: str) -> Poly:
    if isinstance(raw, bool) or not isinstance(raw, (str, int)):
        raise DocumentError("expected an expression string", path)
    try:
        return parse_expr(str(raw), ctx)
    except ParseError as exc:
        raise DocumentError(exc.message, path, exc.position) from None


def parse_number(raw, ctx: Context, path: str):
    v = as_number(parse_value(raw, ctx, path))
    return v


def parse_matrix(raw, ctx: Context, path: str, n: int | None = None, scalars: bool = False) -> list[list]:
    if not isinstance(raw, list) or not all(isinstance(r, list) for r in raw):
        raise DocumentError("expected a matrix (list of rows)", path)
    size = len(raw) if n is None else n
    if len(raw) != size or any(len(r) != size for r in raw):
        raise DocumentError(f"expected a {size}x{size} matrix", path)
    conv = parse_number if scalars else parse_value
    return [[conv(x, ctx, f"{path}[{i}][{j}]") for j, x in enumerate(row)] for i, row in enumerate(raw)]


def _index_key(key: str, n: int, arity: int, path: str) -> tuple[int, ...]:
    try:
        idx = tuple(int(t) - 1 for t in key.split(",")) if key else ()
    except ValueError:
        raise DocumentError(f"bad index key {key!r}", path) from None
    if len(idx) != arity or any(not 0 <= i < n for i in idx):
        raise DocumentError(f"index key {key!r} out of range", path)
    return idx


def parse_algebra(raw, ctx: Context, path: str) -> AlgebraSC:
    if not isinstance(raw, Mapping) or "dim" not in raw:
        raise DocumentError("algebra needs 'dim' and 'products'", path)
    n = raw["dim"]
    if not isinstance(n, int) or n < 0:
        raise DocumentError("'dim' must be a natural number", f"{path}.dim")
    consts = {}
    products = raw.get("products", {})
    if not isinstance(products, Mapping):
        raise DocumentError("'products' must be an object", f"{path}.products")
    for key, res in products.items():
        i, j = _index_key(key, n, 2, f"{path}.products")
        if not isinstance(res, Mapping):
            raise DocumentError("product result must map basis index to coefficient", f"{path}.products.{key}")
        for kk, v in res.items():
            (k,) = _index_key(kk, n, 1, f"{path}.products.{key}")
            val = parse_number(v, ctx, f"{path}.products.{key}.{kk}")
            if val:
                consts[(i, j, k)] = val
    return AlgebraSC(n, consts, raw.get("name", ""))


def dump_algebra(a: AlgebraSC) -> dict:
    prods: dict = {}
    for (i, j, k), v in a.constants.items():
        prods.setdefault(f"{i + 1},{j + 1}", {})[str(k + 1)] = fmt_scalar(v)
    out = {"dim": a.dim, "products": prods}
    if a.name:
        out["name"] = a.name
    return out


def dump_matrix(m) -> list[list[str]]:
    return [[fmt_scalar(x) for x in row] for row in m]


@dataclass
class Document:
    """A context plus any of the supported payload fields."""

    ctx: Context
    bivector: SymBivector | None = None
    algebra: AlgebraSC | None = None
    smatrix: list | None = None
    smatrices: list = field(default_factory=list)
    cocycle: list | None = None
    multivector: MultiVector | None = None
    point: list | None = None
    assignment: dict = field(default_factory=dict)
    aut: list = field(default_factory=list)
    anchors: list | None = None
    potential: dict | None = None
    fields: list | None = None

    # parsing ---------------------------------------------------------
    @classmethod
    def from_json(cls, data: Any) -> Document:
        if not isinstance(data, Mapping):
            raise DocumentError("document must be a JSON object")
        schema = data.get("schema", SCHEMA)
        if schema != SCHEMA:
            raise DocumentError(f"unsupported schema {schema!r}", "schema")
        known = {
            "schema", "context", "bivector", "algebra", "smatrix", "smatrices", "cocycle",
            "multivector", "point", "assignment", "aut", "anchors", "potential", "fields",
        }
        for key in data:
            if key not in known:
                raise DocumentError(f"unknown field {key!r}", key)
        ctx = parse_context(data.get("context", {}), "context")
        doc = cls(ctx)
        n = ctx.ncoords
        if "bivector" in data:
            rows = parse_matrix(data["bivector"], ctx, "bivector", n)
            try:
                doc.bivector = SymBivector(ctx, rows)
            except ValueError as exc:
                raise DocumentError(str(exc), "bivector") from None
        if "algebra" in data:
            doc.algebra = parse_algebra(data["algebra"], ctx, "algebra")
        m = doc.algebra.dim if doc.algebra is not None else None
        if "smatrix" in data:
            doc.smatrix = _symmetric(parse_matrix(data["smatrix"], ctx, "smatrix", m, scalars=True), "smatrix")
        if "smatrices" in data:
            raw = data["smatrices"]
            if not isinstance(raw, list):
                raise DocumentError("expected a list", "smatrices")
            for t, item in enumerate(raw):
                p = f"smatrices[{t}]"
                if not isinstance(item, Mapping) or "matrix" not in item:
                    raise DocumentError("expected {label, matrix}", p)
                mat = _symmetric(parse_matrix(item["matrix"], ctx, f"{p}.matrix", m, scalars=True), p)
                doc.smatrices.append((str(item.get("label", f"r{t + 1}")), mat))
        if "cocycle" in data:
            doc.cocycle = _symmetric(parse_matrix(data["cocycle"], ctx, "cocycle", m, scalars=True), "cocycle")
        if "multivector" in data:
            doc.multivector = parse_multivector(data["multivector"], ctx, "multivector")
        if "point" in data:
            raw = data["point"]
            if not isinstance(raw, list) or len(raw) != n:
                raise DocumentError(f"point must list {n} coordinates", "point")
            doc.point = [_rational(x, ctx, f"point[{t}]") for t, x in enumerate(raw)]
        if "assignment" in data:
            raw = data["assignment"]
            if not isinstance(raw, Mapping):
                raise DocumentError("assignment must be an object", "assignment")
            for name, v in raw.items():
                if name not in ctx.parameters:
                    raise DocumentError(f"{name!r} is not a declared parameter", f"assignment.{name}")
                doc.assignment[name] = _rational(v, ctx, f"assignment.{name}")
        if "aut" in data:
            raw = data["aut"]
            if not isinstance(raw, list):
                raise DocumentError("aut must be a list of matrices", "aut")
            doc.aut = [parse_matrix(x, ctx, f"aut[{t}]", m, scalars=True) for t, x in enumerate(raw)]
        if "anchors" in data:
            raw = data["anchors"]
            if not isinstance(raw, list) or len(raw) != n or any(not isinstance(r, list) or len(r) != n for r in raw):
                raise DocumentError(f"anchors must be {n} vector fields of length {n}", "anchors")
            doc.anchors = [[parse_value(x, ctx, f"anchors[{i}][{j}]") for j, x in enumerate(r)] for i, r in enumerate(raw)]
        if "potential" in data:
            doc.potential = parse_potential(data["potential"], "potential")
        if "fields" in data:
            doc.fields = parse_fields(data["fields"], ctx, "fields")
        return doc

    @classmethod
    def from_text(cls, text: str) -> Document:
        return cls.from_json(loads(text))

    # serialization ---------------------------------------------------
    def to_json(self) -> dict:
        out: dict = {"schema": SCHEMA, "context": dump_context(self.ctx)}
        if self.bivector is not None:
            out["bivector"] = self.bivector.to_rows()
        if self.algebra is not None:
            out["algebra"] = dump_algebra(self.algebra)
        if self.smatrix is not None:
            out["smatrix"] = dump_matrix(self.smatrix)
        if self.smatrices:
            out["smatrices"] = [{"label": label, "matrix": dump_matrix(m)} for label, m in self.smatrices]
        if self.cocycle is not None:
            out["cocycle"] = dump_matrix(self.cocycle)
        if self.multivector is not None:
            out["multivector"] = {"degree": self.multivector.degree, "components": self.multivector.to_dict()}
        if self.point is not None:
            out["point"] = [fmt_scalar(x) for x in self.point]
        if self.assignment:
            out["assignment"] = {k: fmt_scalar(v) for k, v in self.assignment.items()}
        if self.aut:
            out["aut"] = [dump_matrix(m) for m in self.aut]
        if self.anchors is not None:
            out["anchors"] = [[str(x) for x in r] for r in self.anchors]
        if self.potential is not None:
            out["potential"] = dump_potential(self.potential)
        if self.fields is not None:
            out["fields"] = [{"matrix": dump_matrix(a), "translation": [fmt_scalar(x) for x in u]} for a, u in self.fields]
        return out

    def dumps(self) -> str:
        return dumps(self.to_json())


def _symmetric(m: list[list], path: str) -> list[list]:
    for i in range(len(m)):
        for j in range(i):
            if m[i][j] != m[j][i]:
                raise DocumentError(f"matrix is not symmetric at ({j + 1},{i + 1})", path)
    return m


def _rational(raw, ctx: Context, path: str) -> Fraction:
    v = parse_number(raw, ctx, path)
    if isinstance(v, Poly):
        raise DocumentError("expected a rational number", path)
    return v


def parse_context(raw, path: str) -> Context:
    if not isinstance(raw, Mapping):
        raise DocumentError("context must be an object", path)
    coords = raw.get("coordinates")
    dim = raw.get("dim")
    if coords is None:
        coords = [f"x{i + 1}" for i in range(dim or 0)]
    if not isinstance(coords, list) or not all(isinstance(c, str) for c in coords):
        raise DocumentError("coordinates must be a list of names", f"{path}.coordinates")
    if dim is not None and dim != len(coords):
        raise DocumentError("dim does not match the number of coordinates", f"{path}.dim")
    params = raw.get("parameters", [])
    if not isinstance(params, list) or not all(isinstance(c, str) for c in params):
        raise DocumentError("parameters must be a list of names", f"{path}.parameters")
    trig = raw.get("trig")
    if trig is not None:
        if not isinstance(trig, Mapping) or not all(k in trig for k in ("angle", "cos", "sin")):
            raise DocumentError("trig must be {angle, cos, sin}", f"{path}.trig")
        trig = (trig["angle"], trig["cos"], trig["sin"])
    try:
        return Context(coords, params, trig)
    except PolyError as exc:
        raise DocumentError(str(exc), path) from None


def dump_context(ctx: Context) -> dict:
    out = ctx.to_dict()
    out["dim"] = ctx.ncoords
    return out


def parse_multivector(raw, ctx: Context, path: str) -> MultiVector:
    if not isinstance(raw, Mapping) or "degree" not in raw:
        raise DocumentError("multivector needs 'degree' and 'components'", path)
    p = raw["degree"]
    if not isinstance(p, int) or not 0 <= p <= 4 or p > max(ctx.ncoords, 0) and p > 0:
        raise DocumentError("degree out of range", f"{path}.degree")
    comps = {}
    for key, v in raw.get("components", {}).items():
        idx = _index_key(key, ctx.ncoords, p, f"{path}.components")
        if len(set(idx)) != len(idx) or list(idx) != sorted(idx):
            raise DocumentError("component indices must be strictly increasing", f"{path}.components.{key}")
        comps[idx] = parse_value(v, ctx, f"{path}.components.{key}")
    return MultiVector(ctx, p, comps)


def parse_potential(raw, path: str) -> dict:
    if not isinstance(raw, Mapping) or "function" not in raw or "metric" not in raw:
        raise DocumentError("potential needs 'context', 'function' and 'metric'", path)
    ctx = parse_context(raw.get("context", {}), f"{path}.context")
    subs = {}
    for name, v in raw.get("substitute", {}).items():
        if name not in ctx.index:
            raise DocumentError(f"unknown symbol {name!r}", f"{path}.substitute")
        subs[name] = parse_value(v, ctx, f"{path}.substitute.{name}")
    return {
        "context": ctx,
        "function": parse_value(raw["function"], ctx, f"{path}.function"),
        "substitute": subs,
        "metric": parse_matrix(raw["metric"], ctx, f"{path}.metric", ctx.ncoords),
    }


def dump_potential(p: dict) -> dict:
    return {
        "context": dump_context(p["context"]),
        "function": str(p["function"]),
        "substitute": {k: str(v) for k, v in p["substitute"].items()},
        "metric": [[str(x) for x in row] for row in p["metric"]],
    }


def parse_fields(raw, ctx: Context, path: str) -> list:
    if not isinstance(raw, list):
        raise DocumentError("fields must be a list", path)
    out = []
    for t, item in enumerate(raw):
        p = f"{path}[{t}]"
        if not isinstance(item, Mapping) or "matrix" not in item or "translation" not in item:
            raise DocumentError("expected {matrix, translation}", p)
        mat = parse_matrix(item["matrix"], ctx, f"{p}.matrix", ctx.ncoords, scalars=True)
        vec = item["translation"]
        if not isinstance(vec, list) or len(vec) != ctx.ncoords:
            raise DocumentError("translation length mismatch", f"{p}.translation")
        out.append(([[_as_rational(x, f"{p}.matrix") for x in row] for row in mat], [_rational(x, ctx, f"{p}.translation[{i}]") for i, x in enumerate(vec)]))
    return out


def _as_rational(x, path: str) -> Fraction:
    if isinstance(x, Poly):
        raise DocumentError("expected rational entries", path)
    return x
