# -*- encoding: utf-8 -*-
"""
 * Project Name: ltlab
 * Created by eniocc
 * Date: 10/06/2023
 * Time: 15:20
 *
 * Edited by: eniocc
 * Date: 15/06/2023
 * Time: 10:05
"""
import logging
from dataclasses import dataclass, field
from typing import Any, Dict, List, Optional

import pandas as pd

from ltlab.core.Serialize import serialize, to_jsonable

_logger = logging.getLogger(__name__)

SCHEMA_VERSION = "ltlab-report/1"

STATUSES = ("pass", "fail", "skipped")


@dataclass
class CheckRecord:
    """One verified identity: ``ref`` names the identity, ``lhs``/``rhs`` hold the compared values."""
    id: str
    ref: str
    status: str
    lhs: Any = None
    rhs: Any = None
    precision: Optional[Dict[str, int]] = None
    reason: Optional[str] = None

    def __post_init__(self):
        if self.status not in STATUSES:
            raise ValueError(f"status must be one of {STATUSES}, got {self.status!r}")
        if self.status == "skipped" and not self.reason:
            raise ValueError("a skipped check needs a reason")

    @classmethod
    def create_record_from_comparison(cls, id_: str, ref: str, lhs, rhs, precision=None) -> "CheckRecord":
        try:
            equal = bool(lhs == rhs)
        except Exception as e:
            _logger.debug("comparison of %s raised %s", id_, e)
            equal = False
        return cls(id_, ref, "pass" if equal else "fail", lhs, rhs, precision)

    @property
    def passed(self) -> bool:
        return self.status == "pass"

    def as_dict(self) -> dict:
        record = {"id": self.id, "ref": self.ref, "status": self.status, "lhs": to_jsonable(self.lhs),
                  "rhs": to_jsonable(self.rhs), "precision": self.precision or {}}
        if self.reason:
            record["reason"] = self.reason
        return record


@dataclass
class Report:
    config: Dict[str, Any]
    checks: List[CheckRecord] = field(default_factory=list)
    results: Dict[str, Any] = field(default_factory=dict)
    schema_version: str = SCHEMA_VERSION

    def add(self, record: CheckRecord) -> None:
        self.checks.append(record)

    def extend(self, records) -> None:
        self.checks.extend(records)

    def summary(self) -> Dict[str, int]:
        counts = {status: 0 for status in STATUSES}
        for record in self.checks:
            counts[record.status] += 1
        counts["total"] = len(self.checks)
        return counts

    @property
    def failed(self) -> bool:
        return any(record.status == "fail" for record in self.checks)

    def exit_code(self) -> int:
        return 1 if self.failed else 0

    def as_dict(self) -> dict:
        checks = sorted(self.checks, key=lambda record: record.id)
        report = {"schema_version": self.schema_version, "config": to_jsonable(self.config),
                  "checks": [record.as_dict() for record in checks], "summary": self.summary()}
        if self.results:
            report["results"] = to_jsonable(self.results)
        return report

    def to_json(self) -> str:
        return serialize(self.as_dict())

    def to_frame(self) -> pd.DataFrame:
        """One row per check, sorted by id."""
        rows = [{"id": r.id, "ref": r.ref, "status": r.status, "reason": r.reason or ""}
                for r in sorted(self.checks, key=lambda record: record.id)]
        return pd.DataFrame(rows, columns=["id", "ref", "status", "reason"])

    def summary_frame(self) -> pd.DataFrame:
        """Counts per suite prefix and status."""
        frame = self.to_frame()
        if frame.empty:
            return pd.DataFrame(columns=list(STATUSES))
        frame["suite"] = frame["id"].str.split(".").str[0]
        table = frame.pivot_table(index="suite", columns="status", values="id", aggfunc="count", fill_value=0)
        return table.reindex(columns=list(STATUSES), fill_value=0)
