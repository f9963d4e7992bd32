"""Shipped fixture entries and the driver that re-verifies them.

Each entry is one JSON file in ``data/``::

    {"id": ..., "kind": ..., "title": ..., "document": {...},
     "expectations": [{"check": ..., "expect": ..., "args": {...},
                       "note": ..., "printed_claim": ...}]}

``expect`` is the verified truth.  When a printed source statement
disagrees with it, ``printed_claim`` holds the printed value, so the
disagreement stays visible in every report.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from functools import lru_cache
from importlib import resources
from typing import Any

from ..docio import Document, DocumentError, dumps
from .checks import CHECKS, CheckError, run_check

KINDS = ("bivector", "algebra", "smatrix-row", "quadratic-family", "affine-family", "worked-example")


class UnknownEntry(KeyError):
    pass


@dataclass(frozen=True)
class Entry:
    id: str
    kind: str
    title: str
    document: dict
    expectations: tuple

    def parse(self) -> Document:
        return Document.from_json(self.document)

    def to_json(self) -> dict:
        return {
            "id": self.id,
            "kind": self.kind,
            "title": self.title,
            "document": self.document,
            "expectations": list(self.expectations),
        }

    def dumps(self) -> str:
        return dumps(self.to_json())


@dataclass
class CheckResult:
    check: str
    args: dict
    expect: Any
    observed: Any
    witness: Any = None
    note: str = ""
    printed_claim: Any = None
    error: str | None = None

    @property
    def passed(self) -> bool:
        return self.error is None and self.observed == self.expect

    def as_dict(self) -> dict:
        out = {
            "check": self.check,
            "args": self.args,
            "expect": self.expect,
            "observed": self.observed,
            "verdict": "pass" if self.passed else "fail",
        }
        if self.note:
            out["note"] = self.note
        if self.printed_claim is not None:
            out["printed_claim"] = self.printed_claim
            out["agrees_with_printed"] = self.observed == self.printed_claim
        if self.error is not None:
            out["error"] = self.error
        if not self.passed or self.witness is not None:
            out["witness"] = self.witness
        return out


@dataclass
class Report:
    entry: str
    kind: str
    results: list = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return all(r.passed for r in self.results)

    def as_dict(self) -> dict:
        return {
            "entry": self.entry,
            "kind": self.kind,
            "verdict": "pass" if self.passed else "fail",
            "checks": [r.as_dict() for r in self.results],
        }


def _data_dir():
    return resources.files(__package__).joinpath("data")


def _entry_from_json(data: dict) -> Entry:
    for key in ("id", "kind", "document", "expectations"):
        if key not in data:
            raise DocumentError(f"catalog entry lacks {key!r}", key)
    if data["kind"] not in KINDS:
        raise DocumentError(f"unknown kind {data['kind']!r}", "kind")
    for t, exp in enumerate(data["expectations"]):
        if exp.get("check") not in CHECKS:
            raise DocumentError(f"unknown check {exp.get('check')!r}", f"expectations[{t}].check")
    return Entry(data["id"], data["kind"], data.get("title", ""), data["document"], tuple(data["expectations"]))


@lru_cache(maxsize=1)
def _all_entries() -> dict[str, Entry]:
    entries = {}
    for path in sorted(_data_dir().iterdir(), key=lambda p: p.name):
        if not path.name.endswith(".json"):
            continue
        entry = _entry_from_json(json.loads(path.read_text(encoding="utf-8")))
        if entry.id in entries:
            raise DocumentError(f"duplicate catalog id {entry.id!r}", path.name)
        entries[entry.id] = entry
    return dict(sorted(entries.items()))


def entry_path(entry_id: str):
    return _data_dir().joinpath(f"{entry_id}.json")


def load_entry(entry_id: str) -> Entry:
    try:
        return _all_entries()[entry_id]
    except KeyError:
        raise UnknownEntry(entry_id) from None


def list_entries(kind: str | None = None) -> list[str]:
    """Entry ids in sorted order, optionally restricted to one kind."""
    return [e.id for e in _all_entries().values() if kind is None or e.kind == kind]


def verify(entry: Entry) -> Report:
    doc = entry.parse()
    report = Report(entry.id, entry.kind)
    for exp in entry.expectations:
        args = exp.get("args", {})
        res = CheckResult(exp["check"], args, exp.get("expect"), None, note=exp.get("note", ""), printed_claim=exp.get("printed_claim"))
        try:
            outcome = run_check(exp["check"], doc, args)
            res.observed, res.witness = outcome.observed, outcome.witness
        except (CheckError, ValueError) as exc:
            res.error = str(exc)
        report.results.append(res)
    return report


def verify_entry(entry_id: str) -> Report:
    return verify(load_entry(entry_id))


__all__ = [
    "KINDS",
    "CheckResult",
    "Entry",
    "Report",
    "UnknownEntry",
    "entry_path",
    "list_entries",
    "load_entry",
    "verify",
    "verify_entry",
]
