"""Report assembly, canonical JSON, golden files and schema validation."""

from __future__ import annotations

import json
from dataclasses import asdict, dataclass, field as dc_field
from importlib import resources
from pathlib import Path

import numpy as np

from . import __version__
from .errors import SumRankLabError

FINDING_KINDS = ("claim_violation", "paper_discrepancy", "note")


class GoldenMismatch(SumRankLabError):
    pass


@dataclass
class Finding:
    kind: str
    id: str
    message: str
    data: dict = dc_field(default_factory=dict)

    def __post_init__(self):
        if self.kind not in FINDING_KINDS:
            raise ValueError(f"unknown finding kind {self.kind!r}")


@dataclass
class Report:
    command: str
    config: dict
    results: dict = dc_field(default_factory=dict)
    checks: list = dc_field(default_factory=list)
    findings: list = dc_field(default_factory=list)
    timings: dict | None = None
    aborted: bool = False

    def check(self, id: str, claim: str, passed: bool, **data) -> bool:
        """Record a verdict; a failed claim becomes a claim_violation finding."""
        self.checks.append({"id": id, "claim": claim, "passed": bool(passed)})
        if not passed:
            self.findings.append(Finding("claim_violation", id, claim, data))
        return bool(passed)

    def find(self, kind: str, id: str, message: str, **data) -> None:
        self.findings.append(Finding(kind, id, message, data))

    @property
    def status(self) -> str:
        if self.aborted:
            return "precondition"
        return "claim_violation" if any(f.kind == "claim_violation" for f in self.findings) else "ok"

    def exit_code(self) -> int:
        return {"ok": 0, "claim_violation": 2, "precondition": 3}[self.status]

    def as_dict(self) -> dict:
        return {
            "tool": "sumrank-lab",
            "version": __version__,
            "command": self.command,
            "config": self.config,
            "results": self.results,
            "checks": self.checks,
            "findings": [asdict(f) for f in self.findings],
            "status": self.status,
            "timings": self.timings,
        }


def _plain(obj):
    if isinstance(obj, dict):
        return {str(k): _plain(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_plain(v) for v in obj]
    if isinstance(obj, np.ndarray):
        return _plain(obj.tolist())
    if isinstance(obj, np.integer):
        return int(obj)
    if isinstance(obj, np.bool_):
        return bool(obj)
    if isinstance(obj, np.floating):
        return float(obj)
    return obj


def canonical_json(obj) -> str:
    if isinstance(obj, Report):
        obj = obj.as_dict()
    return json.dumps(_plain(obj), sort_keys=True, indent=2, ensure_ascii=True) + "\n"


def golden_store(report, path) -> None:
    Path(path).write_text(canonical_json(report), encoding="ascii")


def golden_compare(report, path) -> bool:
    """Byte equality of the canonical serialization with the stored file."""
    return Path(path).read_bytes() == canonical_json(report).encode("ascii")


def assert_golden(report, path) -> None:
    if not golden_compare(report, path):
        raise GoldenMismatch(f"report differs from {path}")


def load_schema() -> dict:
    return json.loads(resources.files("sumrank_lab").joinpath("report.schema.json").read_text())


def validate(report) -> None:
    """Raise jsonschema.ValidationError when the report does not match the schema."""
    import jsonschema

    data = json.loads(canonical_json(report))
    jsonschema.validate(data, load_schema())
