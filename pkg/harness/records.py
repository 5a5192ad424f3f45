"""
In-memory result records and their persistence.
"""

from __future__ import annotations

import json
import math
from collections.abc import Iterable
from dataclasses import dataclass, field

from django.db import transaction

from config.exceptions import ParameterDomainError

from .models import ExperimentRun, ResultRecord

CSV_COLUMNS = (
    "index",
    "experiment",
    "term",
    "N",
    "parameters",
    "measured",
    "stderr",
    "predicted",
    "predicted_limit",
    "discrepancy",
    "tolerance",
    "passed",
    "seed",
    "code_version",
)


@dataclass
class Record:
    experiment: str
    term: str
    measured: float
    stderr: float = 0.0
    predicted: float | None = None
    predicted_limit: float | None = None
    tolerance: float | None = None
    passed: bool | None = None
    N: int | None = None
    parameters: dict = field(default_factory=dict)
    wall_time: float = 0.0
    seed: int = 0
    code_version: str = ""

    def __post_init__(self) -> None:
        if math.isnan(self.stderr) or self.stderr < 0:
            raise ParameterDomainError(f"error bar of {self.experiment}:{self.term} must be >= 0")

    @property
    def discrepancy(self) -> float | None:
        if self.predicted is None:
            return None
        return self.measured - self.predicted

    @classmethod
    def from_model(cls, row: ResultRecord) -> Record:
        return cls(
            experiment=row.experiment,
            term=row.term,
            measured=row.measured,
            stderr=row.stderr,
            predicted=row.predicted,
            predicted_limit=row.predicted_limit,
            tolerance=row.tolerance,
            passed=row.passed,
            N=row.N,
            parameters=row.parameters,
            wall_time=row.wall_time,
            seed=int(row.seed),
            code_version=row.code_version,
        )

    def csv_row(self, index: int) -> list[str]:
        values = {
            "index": index,
            "experiment": self.experiment,
            "term": self.term,
            "N": self.N,
            "parameters": json.dumps(self.parameters, sort_keys=True),
            "measured": self.measured,
            "stderr": self.stderr,
            "predicted": self.predicted,
            "predicted_limit": self.predicted_limit,
            "discrepancy": self.discrepancy,
            "tolerance": self.tolerance,
            "passed": self.passed,
            "seed": self.seed,
            "code_version": self.code_version,
        }
        return [_format(values[name]) for name in CSV_COLUMNS]


def _format(value) -> str:
    if value is None:
        return ""
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, float):
        return repr(value)
    return str(value)


def within(measured: float, predicted: float, tolerance: float) -> bool:
    return bool(abs(measured - predicted) <= tolerance)


@transaction.atomic
def persist_records(run: ExperimentRun, records: Iterable[Record]) -> list[ResultRecord]:
    """Store ``records`` under ``run`` in emission order, replacing earlier rows."""
    run.records.all().delete()
    rows = [
        ResultRecord(
            run=run,
            index=index,
            experiment=record.experiment,
            term=record.term,
            N=record.N,
            parameters=record.parameters,
            measured=record.measured,
            stderr=record.stderr,
            predicted=record.predicted,
            predicted_limit=record.predicted_limit,
            discrepancy=record.discrepancy,
            tolerance=record.tolerance,
            passed=record.passed,
            wall_time=record.wall_time,
            seed=str(record.seed),
            code_version=record.code_version,
        )
        for index, record in enumerate(records)
    ]
    return ResultRecord.objects.bulk_create(rows)


def load_records(run: ExperimentRun) -> list[Record]:
    return [Record.from_model(row) for row in run.records.order_by("index")]
