""" Checks, run manifests and the report files written by the command line. """

from __future__ import annotations

import csv
import hashlib
import io
import json
import logging
from dataclasses import dataclass, field, replace
from datetime import datetime, timezone
from fractions import Fraction
from pathlib import Path
from typing import Any, Dict, List, Mapping, Optional, Sequence

import anglekit
from .settings import DEFAULT, Settings

log = logging.getLogger(__name__)

JSON = "json"
CSV = "csv"
FORMATS = (JSON, CSV)


def jsonable(value: Any) -> Any:
    """Return value with Fractions, Estimates, tuples and sets replaced by JSON-friendly equivalents."""

    if isinstance(value, anglekit.Estimate):
        return value.to_json()
    if isinstance(value, Fraction):
        return str(value) if value.denominator != 1 else value.numerator
    if isinstance(value, Mapping):
        return {str(key): jsonable(item) for key, item in value.items()}
    if isinstance(value, (frozenset, set)):
        return sorted(jsonable(item) for item in value)
    if isinstance(value, (list, tuple)):
        return [jsonable(item) for item in value]
    if hasattr(value, "to_json"):
        return value.to_json()
    return value


def canonical_json(data: Any) -> str:
    """Return the canonical serialisation used for hashing: sorted keys and no whitespace."""

    return json.dumps(jsonable(data), sort_keys=True, separators=(",", ":"))


@dataclass(frozen=True)
class Check:
    """One claim compared against a computation."""

    claim: str
    computed: Any
    expected: Any
    passed: bool
    sigma: Optional[float] = None
    informational: bool = False

    @classmethod
    def compare(cls, claim: str, computed: Any, expected: Any, settings: Settings = DEFAULT, informational: bool = False) -> Check:
        """Return the check that computed equals expected: exactly for exact values, otherwise within tolerance."""

        exact = (int, Fraction)
        if isinstance(computed, exact) and isinstance(expected, exact):
            return cls(claim, computed, expected, computed == expected, None, informational)

        difference = anglekit.Estimate.coerce(computed) - anglekit.Estimate.coerce(expected)
        passed = anglekit.incidence.agree(computed, expected, settings)
        sigma = difference.deviation(0) if difference.stderr > 0 else None
        log.info("%s: %s vs %s (%s)", claim, computed, expected, "pass" if passed else "FAIL")
        return cls(claim, computed, expected, passed, sigma, informational)

    @property
    def ok(self) -> bool:
        return self.passed or self.informational

    def to_json(self) -> Dict[str, Any]:
        return {"claim": self.claim, "computed": jsonable(self.computed), "expected": jsonable(self.expected), "sigma": self.sigma, "pass": self.passed, "informational": self.informational}


@dataclass(frozen=True)
class RunManifest:
    """Everything needed to replay a run."""

    command: str
    config: Mapping[str, Any]
    seed: int
    workers: int
    settings: Mapping[str, Any] = field(default_factory=dict)
    version: str = field(default_factory=lambda: anglekit.__version__)
    started: Optional[str] = None
    finished: Optional[str] = None

    @staticmethod
    def now() -> str:
        return datetime.now(timezone.utc).isoformat(timespec="seconds")

    def finish(self) -> RunManifest:
        return replace(self, finished=self.now())

    def digest(self) -> str:
        """Return the content hash of the manifest, ignoring timestamps and the report directory."""

        settings = {key: value for key, value in self.settings.items() if key != "reports"}
        data = {"command": self.command, "config": self.config, "seed": self.seed, "workers": self.workers, "settings": settings, "version": self.version}
        return hashlib.sha256(canonical_json(data).encode()).hexdigest()[:16]

    def to_json(self) -> Dict[str, Any]:
        return {
            "command": self.command,
            "config": jsonable(self.config),
            "seed": self.seed,
            "workers": self.workers,
            "settings": jsonable(self.settings),
            "version": self.version,
            "started": self.started,
            "finished": self.finished,
        }


@dataclass
class Report:
    """The checks made by one command together with the claim they test and any tables of values."""

    claim: str
    manifest: RunManifest
    checks: List[Check] = field(default_factory=list)
    tables: Dict[str, List[List[Any]]] = field(default_factory=dict)

    @property
    def passed(self) -> bool:
        return all(check.ok for check in self.checks)

    def extend(self, checks: Sequence[Check]) -> None:
        self.checks.extend(checks)

    def summary(self) -> str:
        failed = [check for check in self.checks if not check.ok]
        lines = [f"{self.manifest.command}: {self.claim}", f"{len(self.checks) - len(failed)}/{len(self.checks)} checks pass"]
        lines.extend(f"  FAIL {check.claim}: computed {check.computed}, expected {check.expected}" for check in failed)
        return "\n".join(lines)

    def to_json(self) -> Dict[str, Any]:
        return {"claim": self.claim, "manifest": self.manifest.to_json(), "pass": self.passed, "checks": [check.to_json() for check in self.checks], "tables": jsonable(self.tables)}

    def to_csv(self) -> str:
        """Return the tables (or the checks if there are none) as CSV."""

        buffer = io.StringIO()
        writer = csv.writer(buffer, lineterminator="\n")
        if self.tables:
            for name, rows in self.tables.items():
                for row in rows:
                    writer.writerow([name] + [_cell(cell) for cell in row])
        else:
            writer.writerow(["claim", "computed", "expected", "sigma", "pass"])
            for check in self.checks:
                writer.writerow([check.claim, _cell(check.computed), _cell(check.expected), check.sigma, check.passed])
        return buffer.getvalue()


def _cell(value: Any) -> Any:
    if isinstance(value, anglekit.Estimate):
        return value.value
    if isinstance(value, Fraction):
        return str(value)
    return value


class ReportStore:
    """An append-only directory of reports, each named by the hash of its manifest."""

    def __init__(self, directory: str | Path) -> None:
        self.directory = Path(directory)

    def path(self, report: Report, fmt: str = JSON) -> Path:
        return self.directory / f"{report.manifest.command}-{report.manifest.digest()}.{fmt}"

    def write(self, report: Report, fmt: str = JSON) -> Path:
        """Write the report unless one with the same manifest already exists; return its path."""

        if fmt not in FORMATS:
            raise anglekit.ConfigurationError(f"Unknown report format {fmt!r}, expected one of {FORMATS}")

        path = self.path(report, fmt)
        if path.exists():
            log.warning("Report %s already exists, leaving it in place", path)
            return path

        self.directory.mkdir(parents=True, exist_ok=True)
        text = json.dumps(report.to_json(), sort_keys=True, indent=2) if fmt == JSON else report.to_csv()
        path.write_text(text)
        log.info("Wrote %s", path)
        return path
