"""
CSV and JSON summaries of result records.

The CSV body depends on the records only, so identical runs produce identical
files; wall times and timestamps go to the JSON summary.
"""

from __future__ import annotations

import csv
import json
import logging
import math
from collections import defaultdict
from collections.abc import Sequence
from datetime import datetime, timezone
from pathlib import Path

from config.exceptions import AnyonLabError, ParameterDomainError

from .records import CSV_COLUMNS, Record

logger = logging.getLogger(__name__)

CSV_NAME = "records.csv"
SUMMARY_NAME = "summary.json"
SCAN_EXPERIMENTS = ("convergence", "g-scan", "omega-scan")
GROUP_KEYS = ("beta", "g", "omega")


def _groups(records: Sequence[Record], term: str) -> dict[tuple, list[Record]]:
    groups: dict[tuple, list[Record]] = defaultdict(list)
    for record in records:
        if record.term == term and record.N is not None and record.experiment in SCAN_EXPERIMENTS:
            key = tuple(record.parameters.get(name) for name in GROUP_KEYS)
            groups[key].append(record)
    return groups


def monotonicity_verdict(records: Sequence[Record], term: str = "total", sigmas: float = 1.0) -> bool | None:
    """|discrepancy| (or the measured value for unpredicted terms) non-increasing in N within error bars.

    None when no group holds two particle numbers.
    """
    verdict = None
    for key, group in sorted(_groups(records, term).items(), key=lambda item: str(item[0])):
        group = sorted(group, key=lambda r: r.N)
        if len(group) < 2:
            continue
        verdict = True if verdict is None else verdict
        values = [abs(r.discrepancy) if r.discrepancy is not None else r.measured for r in group]
        for k in range(len(group) - 1):
            slack = sigmas * (group[k].stderr + group[k + 1].stderr)
            if values[k + 1] > values[k] + slack:
                logger.info(
                    "term %s of group %s grows from N=%d to N=%d", term, key, group[k].N, group[k + 1].N
                )
                verdict = False
    return verdict


def verdicts(records: Sequence[Record]) -> dict[str, bool | None]:
    failed = [f"{r.experiment}:{r.term}" for r in records if r.passed is False]
    result: dict[str, bool | None] = {"records": not failed}
    if any(r.experiment in SCAN_EXPERIMENTS for r in records):
        result["monotonicity"] = monotonicity_verdict(records, "total", sigmas=3.0)
        result["density_monotonicity"] = monotonicity_verdict(records, "density_l1", sigmas=1.0)
    return result


def _json_number(value: float | None) -> float | str | None:
    if value is None or math.isfinite(value):
        return value
    return repr(value)


def summarize(records: Sequence[Record], kind: str, run_id: int | None = None) -> dict:
    checks = verdicts(records)
    return {
        "kind": kind,
        "run": run_id,
        "records": len(records),
        "checks": checks,
        "passed": all(value is not False for value in checks.values()),
        "failed": [
            {"index": i, "experiment": r.experiment, "term": r.term, "N": r.N,
             "measured": _json_number(r.measured), "predicted": _json_number(r.predicted)}
            for i, r in enumerate(records)
            if r.passed is False
        ],
        "wall_time": sum(r.wall_time for r in records),
        "generated_at": datetime.now(timezone.utc).isoformat(),
    }


def write_csv(records: Sequence[Record], path: Path) -> Path:
    try:
        with path.open("w", newline="", encoding="utf-8") as handle:
            writer = csv.writer(handle, lineterminator="\n")
            writer.writerow(CSV_COLUMNS)
            for index, record in enumerate(records):
                writer.writerow(record.csv_row(index))
    except OSError as exc:
        raise AnyonLabError(f"could not write {path}: {exc}") from exc
    return path


def write_json(payload: dict, path: Path) -> Path:
    try:
        path.write_text(json.dumps(payload, indent=2, sort_keys=True) + "\n", encoding="utf-8")
    except OSError as exc:
        raise AnyonLabError(f"could not write {path}: {exc}") from exc
    return path


def report(records: Sequence[Record], out_dir: str | Path, kind: str, run_id: int | None = None) -> dict:
    """Write ``records.csv`` and ``summary.json`` into ``out_dir`` and return the summary."""
    if not records:
        raise ParameterDomainError("no records to report")
    out_dir = Path(out_dir)
    try:
        out_dir.mkdir(parents=True, exist_ok=True)
    except OSError as exc:
        raise AnyonLabError(f"could not create {out_dir}: {exc}") from exc
    summary = summarize(records, kind, run_id)
    summary["csv"] = str(write_csv(records, out_dir / CSV_NAME))
    write_json(summary, out_dir / SUMMARY_NAME)
    logger.info("%d records of %s written to %s", len(records), kind, out_dir)
    return summary
