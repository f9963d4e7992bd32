"""Command-line front end.

Every subcommand prints one JSON report on standard output.  Exit status:
0 when all checks pass, 1 when a check fails (the report carries the
witness), 2 for unreadable input or usage errors.
"""

from __future__ import annotations

import argparse
import hashlib
import sys
from pathlib import Path
from typing import Callable, Sequence

from . import __version__
from .algebra import algebra_checks, flag_witness
from .catalog import KINDS, UnknownEntry, list_entries, load_entry, verify
from .catalog.checks import CheckError, run_check
from .codazzi import codazzi_defect, leaf_metric, point_algebra
from .docio import Document, DocumentError, dump_algebra, dumps, fmt_scalar, loads
from .finalg import affine_bivector, phi_double
from .poly import PolyError
from .tangent import TangentModel, lift_poisson

TOOL = "cphess"
EXIT_PASS, EXIT_FAIL, EXIT_INPUT = 0, 1, 2


class InputError(Exception):
    def __init__(self, err: DocumentError) -> None:
        super().__init__(str(err))
        self.err = err


def _check_entry(name: str, outcome, expect=True, **extra) -> dict:
    ok = outcome.observed == expect
    out = {"name": name, "verdict": "pass" if ok else "fail", "observed": outcome.observed}
    out.update(extra)
    if not ok or outcome.witness is not None:
        out["witness"] = outcome.witness
    return out


def _flag_check(a, flag: str, observed: bool) -> dict:
    out = {"name": flag, "verdict": "pass" if observed else "fail", "observed": observed}
    if not observed:
        out["witness"] = flag_witness(a, flag)
    return out


def _run(name: str, doc: Document, expect=True, args=None, **extra) -> dict:
    return _check_entry(name, run_check(name, doc, args), expect, **extra)


# --- subcommands ----------------------------------------------------------------
# Each takes (doc, options) and returns (checks, result).


def cmd_check_codazzi(doc: Document, opts) -> tuple[list, dict]:
    h = _require(doc, "bivector")
    checks = [_run("codazzi", doc)]
    if opts.lift:
        checks.append(_run("poisson-lift", doc))
    return checks, {"dim": h.dim, "parameters": list(h.ctx.parameters)}


def cmd_lift(doc: Document, opts) -> tuple[list, dict]:
    h = _require(doc, "bivector")
    pi = lift_poisson(h)
    model = TangentModel.of(h.ctx)
    checks = [_run("poisson-lift", doc), _run("lift-divergence", doc)]
    result = {
        "coordinates": list(model.ctx.coordinates),
        "bivector": pi.to_dict(),
    }
    return checks, result


def cmd_check_smatrix(doc: Document, opts) -> tuple[list, dict]:
    a = _require(doc, "algebra")
    flags = algebra_checks(a)
    checks = [_flag_check(a, "left-symmetric", flags.left_symmetric)]
    labels = [label for label, _ in doc.smatrices]
    if doc.smatrix is not None:
        labels.insert(0, "r")
    if not labels:
        raise InputError(DocumentError("document has no smatrix or smatrices", "smatrix"))
    for label in labels:
        checks.append(_run("smatrix", doc, args={"label": label}, label=label))
        if flags.left_symmetric:
            checks.append(_run("cybe-lift", doc, args={"label": label}, label=label))
    return checks, {"flags": flags.as_dict()}


def cmd_check_cocycle(doc: Document, opts) -> tuple[list, dict]:
    a = _require(doc, "algebra")
    b = _require(doc, "cocycle")
    flags = algebra_checks(a)
    checks = [_run("cocycle", doc)]
    h = affine_bivector(a, b)
    codazzi = codazzi_defect(h).is_zero()
    result = {
        "flags": flags.as_dict(),
        "affine_bivector": h.to_rows(),
        "affine_bivector_codazzi": codazzi,
    }
    return checks, result


def cmd_double(doc: Document, opts) -> tuple[list, dict]:
    a = _require(doc, "algebra")
    if not algebra_checks(a).left_symmetric:
        return [_flag_check(a, "left-symmetric", False)], {}
    dbl = phi_double(a)
    checks = [_run("phi-double", doc)]
    return checks, {"star": dump_algebra(dbl.star), "lie": dump_algebra(dbl.lie)}


def cmd_classify_grid(doc: Document, opts) -> tuple[list, dict]:
    _require(doc, "algebra")
    outcome = run_check("grid-classify", doc, {"bound": opts.bound, "report": ["solutions", "unmatched"]})
    report = outcome.witness
    ok = outcome.observed["unmatched"] == 0
    check = {"name": "grid-classify", "verdict": "pass" if ok else "fail", "observed": outcome.observed}
    if not ok:
        check["witness"] = [item["r"] for item in report["items"] if item["match"] is None]
    return [check], report


def cmd_point_algebra(doc: Document, opts) -> tuple[list, dict]:
    h = _require(doc, "bivector")
    point = doc.point if doc.point is not None else [0] * h.dim
    alg = point_algebra(h, point)
    flags = algebra_checks(alg)
    checks = [
        _flag_check(alg, "associative", flags.associative),
        _flag_check(alg, "commutative", flags.commutative),
    ]
    return checks, {"point": [fmt_scalar(x) for x in point], "algebra": dump_algebra(alg), "flags": flags.as_dict()}


def cmd_leaf_metric(doc: Document, opts) -> tuple[list, dict]:
    h = _require(doc, "bivector")
    point = _require(doc, "point")
    g = leaf_metric(h, point, doc.assignment)
    return [], g.as_dict()


COMMANDS: dict[str, Callable] = {
    "check-codazzi": cmd_check_codazzi,
    "lift": cmd_lift,
    "check-smatrix": cmd_check_smatrix,
    "check-cocycle": cmd_check_cocycle,
    "double": cmd_double,
    "classify-grid": cmd_classify_grid,
    "point-algebra": cmd_point_algebra,
    "leaf-metric": cmd_leaf_metric,
}


def _require(doc: Document, attr: str):
    value = getattr(doc, attr)
    if value is None or value == []:
        raise InputError(DocumentError(f"document has no {attr!r} field", attr))
    return value


# --- reports ------------------------------------------------------------------


def _report(command: str, digest: str, checks: list, result, error: dict | None = None) -> dict:
    if error is not None:
        status, code = "error", EXIT_INPUT
    elif all(c["verdict"] == "pass" for c in checks):
        status, code = "pass", EXIT_PASS
    else:
        status, code = "fail", EXIT_FAIL
    out = {
        "tool": TOOL,
        "version": __version__,
        "command": command,
        "input_digest": digest,
        "checks": checks,
        "result": result,
        "status": status,
        "exit_code": code,
    }
    if error is not None:
        out["error"] = error
    return out


def _markdown(report: dict) -> str:
    lines = [f"# {report['tool']} {report['command']}", ""]
    lines.append(f"- status: **{report['status']}** (exit {report['exit_code']})")
    lines.append(f"- input sha256: `{report['input_digest']}`")
    lines.append(f"- version: {report['version']}")
    if "error" in report:
        err = report["error"]
        where = f" at `{err['path']}`" if err.get("path") else ""
        pos = f", character {err['position']}" if err.get("position") is not None else ""
        lines += ["", f"Input error{where}{pos}: {err['message']}"]
    if report["checks"]:
        lines += ["", "| check | verdict | detail |", "| --- | --- | --- |"]
        for c in report["checks"]:
            detail = c.get("entry") or c.get("label") or ""
            lines.append(f"| {c['name']} | {c['verdict']} | {detail} |")
    failing = [c for c in report["checks"] if c["verdict"] != "pass"]
    for c in failing:
        lines += ["", f"## Witness for {c['name']}" + (f" ({c['entry']})" if "entry" in c else ""), "", "```json"]
        lines.append(dumps(c.get("witness")).rstrip())
        lines.append("```")
    return "\n".join(lines) + "\n"


def _emit(report: dict, markdown: str | None) -> int:
    sys.stdout.write(dumps(report))
    if markdown:
        Path(markdown).write_text(_markdown(report), encoding="utf-8")
    return report["exit_code"]


def _read_input(path: str) -> bytes:
    if path == "-":
        return sys.stdin.buffer.read()
    return Path(path).read_bytes()


def _verify_catalog(opts) -> int:
    try:
        if opts.entry:
            entries = [load_entry(i) for i in opts.entry]
        else:
            entries = [load_entry(i) for i in list_entries(opts.kind)]
    except UnknownEntry as exc:
        err = {"message": f"unknown catalog entry {exc.args[0]!r}", "path": "--entry", "position": None}
        return _emit(_report("verify-catalog", "", [], None, err), opts.markdown)
    digest = hashlib.sha256("".join(e.dumps() for e in entries).encode("utf-8")).hexdigest()
    checks = []
    summaries = []
    for e in entries:
        rep = verify(e)
        summaries.append(rep.as_dict())
        for r in rep.results:
            item = {"name": r.check, "entry": e.id, "verdict": "pass" if r.passed else "fail", "observed": r.observed}
            if r.args:
                item["args"] = r.args
            if r.printed_claim is not None:
                item["printed_claim"] = r.printed_claim
            if not r.passed:
                item["expect"] = r.expect
                item["witness"] = r.witness
                if r.error:
                    item["error"] = r.error
            checks.append(item)
    result = {
        "entries": len(entries),
        "failed_entries": [s["entry"] for s in summaries if s["verdict"] != "pass"],
        "printed_disagreements": sorted(
            {f"{c['entry']}:{c['name']}" for c in checks if "printed_claim" in c and c["printed_claim"] != c["observed"]}
        ),
    }
    return _emit(_report("verify-catalog", digest, checks, result), opts.markdown)


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog=TOOL, description="Exact checks for contravariant Codazzi structures.")
    ap.add_argument("--version", action="version", version=f"{TOOL} {__version__}")
    sub = ap.add_subparsers(dest="command", required=True, metavar="COMMAND")

    def add(name, help_text, needs_input=True):
        p = sub.add_parser(name, help=help_text)
        if needs_input:
            p.add_argument("input", nargs="?", help="JSON document (default '-', standard input)", default="-")
        p.add_argument("--markdown", metavar="PATH", help="also write a markdown summary to PATH")
        return p

    p = add("check-codazzi", "Codazzi defect of a symmetric bivector")
    p.add_argument("--lift", action="store_true", help="also check the Poisson lift")
    add("lift", "Poisson bivector on the tangent bundle")
    add("check-smatrix", "S-matrix and lifted Yang-Baxter defects")
    add("check-cocycle", "scalar 2-cocycle condition")
    add("double", "doubled left-symmetric algebra and its Lie bracket")
    p = add("classify-grid", "grid search for S-matrices of a 2-dimensional algebra", needs_input=False)
    p.add_argument("input", nargs="?", default=None, help="JSON document with algebra, aut and smatrices")
    p.add_argument("--entry", help="use the document of a catalog entry instead of a file")
    p.add_argument("--bound", type=int, default=1, help="grid height (default 1)")
    add("point-algebra", "algebra on the cotangent space at a zero of h")
    add("leaf-metric", "leaf metric and signature at a point")
    p = add("verify-catalog", "re-verify the shipped catalog", needs_input=False)
    p.add_argument("--entry", action="append", help="entry id (repeatable); default all")
    p.add_argument("--kind", choices=KINDS, help="restrict to one kind")
    return ap


def main(argv: Sequence[str] | None = None) -> int:
    ap = build_parser()
    try:
        opts = ap.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    if opts.command == "verify-catalog":
        return _verify_catalog(opts)
    digest = ""
    try:
        if opts.command == "classify-grid" and opts.entry:
            try:
                data = load_entry(opts.entry).document
            except UnknownEntry:
                raise InputError(DocumentError(f"unknown catalog entry {opts.entry!r}", "--entry")) from None
            raw = dumps(data).encode("utf-8")
        else:
            raw = _read_input(opts.input or "-")
        digest = hashlib.sha256(raw).hexdigest()
        try:
            text = raw.decode("utf-8")
        except UnicodeDecodeError as exc:
            raise InputError(DocumentError("input is not UTF-8", "", exc.start)) from None
        try:
            doc = Document.from_json(loads(text))
        except DocumentError as exc:
            raise InputError(exc) from None
        checks, result = COMMANDS[opts.command](doc, opts)
    except InputError as exc:
        return _emit(_report(opts.command, digest, [], None, exc.err.as_dict()), opts.markdown)
    except OSError as exc:
        err = {"message": f"cannot read input: {exc.strerror or exc}", "path": "", "position": None}
        return _emit(_report(opts.command, digest, [], None, err), opts.markdown)
    except (CheckError, PolyError, ValueError) as exc:
        err = {"message": str(exc), "path": "", "position": None}
        return _emit(_report(opts.command, digest, [], None, err), opts.markdown)
    return _emit(_report(opts.command, digest, checks, result), opts.markdown)


if __name__ == "__main__":
    sys.exit(main())
