"""Check reports and their JSON / CSV serialisation."""

from __future__ import annotations

import csv
import io
import json
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any, Iterable

SCHEMA_VERSION = 1

PASS = "PASS"
FAIL = "FAIL"
INCONCLUSIVE = "INCONCLUSIVE"


@dataclass
class CheckReport:
    """Outcome of one verification run.

    ``FAIL`` is reserved for a machine-verified violation of a claim and must
    carry a certificate in ``artifacts``; budget and hypothesis problems are
    ``INCONCLUSIVE``.  ``timing`` is kept apart from ``metrics`` so that two
    runs with the same seed serialise identically.
    """

    check_id: str
    status: str = PASS
    detail: str = ""
    metrics: dict = field(default_factory=dict)
    seed: int | None = None
    artifacts: dict = field(default_factory=dict)
    anchor: str = ""
    timing: dict = field(default_factory=dict)

    @property
    def ok(self) -> bool:
        return self.status == PASS

    def to_dict(self, include_timing: bool = False) -> dict:
        out = {
            "schema": SCHEMA_VERSION,
            "check_id": self.check_id,
            "status": self.status,
            "detail": self.detail,
            "anchor": self.anchor,
            "seed": self.seed,
            "metrics": _jsonable(self.metrics),
            "artifacts": _jsonable(self.artifacts),
        }
        if include_timing:
            out["timing"] = _jsonable(self.timing)
        return out


def _jsonable(obj: Any):
    from .matrix import Matrix
    from .multipoly import MultiPoly
    from .poly import UniPoly
    from .rings import RingValue

    if isinstance(obj, dict):
        return {str(k): _jsonable(v) for k, v in sorted(obj.items(), key=lambda kv: str(kv[0]))}
    if isinstance(obj, (list, tuple)):
        return [_jsonable(v) for v in obj]
    if isinstance(obj, Matrix):
        return {"ring": str(obj.ring), "entries": obj.to_strings()}
    if isinstance(obj, (RingValue, UniPoly, MultiPoly, Fraction)):
        return str(obj)
    if isinstance(obj, (bool, int, float, str)) or obj is None:
        return obj
    return str(obj)


def worst_status(reports: Iterable[CheckReport]) -> str:
    statuses = {r.status for r in reports}
    if FAIL in statuses:
        return FAIL
    if INCONCLUSIVE in statuses:
        return INCONCLUSIVE
    return PASS


def exit_code(reports: Iterable[CheckReport]) -> int:
    return {PASS: 0, FAIL: 1, INCONCLUSIVE: 2}[worst_status(list(reports))]


def _flatten(prefix: str, obj, out: dict):
    if isinstance(obj, dict):
        for k, v in obj.items():
            _flatten(f"{prefix}.{k}" if prefix else str(k), v, out)
    elif isinstance(obj, list):
        out[prefix] = json.dumps(obj, sort_keys=True)
    else:
        out[prefix] = obj


def to_json(reports: list[CheckReport], include_timing: bool = False) -> str:
    payload = {"schema": SCHEMA_VERSION, "reports": [r.to_dict(include_timing) for r in reports]}
    return json.dumps(payload, indent=2, sort_keys=True) + "\n"


def to_csv(reports: list[CheckReport], include_timing: bool = False) -> str:
    rows = []
    for r in reports:
        row = {"check_id": r.check_id, "status": r.status, "detail": r.detail, "seed": r.seed}
        flat: dict = {}
        _flatten("", _jsonable(r.metrics), flat)
        row.update(flat)
        if include_timing:
            row.update({f"timing.{k}": v for k, v in r.timing.items()})
        rows.append(row)
    head = ["check_id", "status", "detail", "seed"]
    extra = sorted({k for row in rows for k in row} - set(head))
    buf = io.StringIO()
    writer = csv.DictWriter(buf, fieldnames=head + extra, lineterminator="\n")
    writer.writeheader()
    for row in rows:
        writer.writerow(row)
    return buf.getvalue()


def emit_report(reports: list[CheckReport], fmt: str = "json", path=None, include_timing: bool = False) -> str:
    """Serialise reports; write to ``path`` when given.  Returns the text."""
    if fmt == "json":
        text = to_json(reports, include_timing)
    elif fmt == "csv":
        text = to_csv(reports, include_timing)
    else:
        raise ValueError(f"unknown report format {fmt!r}")
    if path is not None:
        with open(path, "w", encoding="utf-8") as fh:
            fh.write(text)
    return text
