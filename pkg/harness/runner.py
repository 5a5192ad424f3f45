"""
Shared plumbing of the experiment management commands.

Exit codes: 0 when every check passes, 1 on invalid input or a driver error,
2 when the run completes but a check fails.
"""

import json
import logging
import time
from pathlib import Path

from django.conf import settings
from django.core.management.base import BaseCommand, CommandError
from django.utils import timezone
from rest_framework.exceptions import ValidationError

from config.exceptions import AnyonLabError

from .experiments import DRIVERS, LabContext
from .models import ExperimentRun
from .records import persist_records
from .reporting import report
from .serializers import COMMAND_SERIALIZERS, U64_MAX

logger = logging.getLogger(__name__)

EXIT_FAILED_CHECKS = 2


def u64(value: str) -> int:
    seed = int(value)
    if not 0 <= seed <= U64_MAX:
        raise ValueError(f"seed {value} is not an unsigned 64-bit integer")
    return seed


def load_config(path: str) -> dict:
    try:
        with open(path, encoding="utf-8") as handle:
            data = json.load(handle)
    except OSError as exc:
        raise CommandError(f"cannot read config {path}: {exc}", returncode=1) from exc
    except json.JSONDecodeError as exc:
        raise CommandError(f"config {path} is not valid JSON: {exc}", returncode=1) from exc
    if not isinstance(data, dict):
        raise CommandError(f"config {path} must hold a JSON object", returncode=1)
    return data


def validate_config(command: str, data: dict) -> dict:
    serializer = COMMAND_SERIALIZERS[command](data=data)
    try:
        serializer.is_valid(raise_exception=True)
    except ValidationError as exc:
        raise CommandError(f"invalid {command} config: {json.dumps(exc.detail)}", returncode=1) from exc
    return serializer.validated_data


class ExperimentCommand(BaseCommand):
    """Base class: ``--config``, ``--seed`` and ``--out``, then run, persist and report."""

    command: str

    def add_arguments(self, parser):
        parser.add_argument("--config", required=True, help="JSON experiment config")
        parser.add_argument("--seed", type=u64, default=None, help="Unsigned 64-bit seed, overrides the config")
        parser.add_argument("--out", default=None, help="Output directory, overrides the config")

    def handle(self, *args, **options):
        raw = load_config(options["config"])
        cfg = validate_config(self.command, raw)
        lab = settings.ANYONLAB
        seed = options["seed"] if options["seed"] is not None else cfg["seed"]
        out_dir = Path(options["out"] or cfg.get("out") or lab["OUTPUT_DIR"])
        kind = cfg.get("kind", self.command)

        run = ExperimentRun.objects.create(
            kind=kind,
            config=raw,
            seed=str(seed),
            code_version=lab["CODE_VERSION"],
            output_dir=str(out_dir),
        )
        ctx = LabContext(seed=seed, code_version=lab["CODE_VERSION"], out_dir=out_dir, lab=lab)
        records = []
        start = time.perf_counter()
        try:
            for record in DRIVERS[self.command](cfg, ctx):
                records.append(record)
                logger.debug("%s:%s measured %.10g", record.experiment, record.term, record.measured)
        except Exception as exc:
            error = str(exc) if isinstance(exc, AnyonLabError) else f"{type(exc).__name__}: {exc}"
            persist_records(run, records)
            self._finish(run, start, status=ExperimentRun.Status.FAILED, error=error)
            logger.error(
                "%s run %d failed after %d records: %s", kind, run.pk, len(records), error,
                exc_info=not isinstance(exc, AnyonLabError),
            )
            raise CommandError(error, returncode=1) from exc

        persist_records(run, records)
        try:
            summary = report(records, out_dir, kind, run.pk)
        except AnyonLabError as exc:
            self._finish(run, start, status=ExperimentRun.Status.FAILED, error=str(exc))
            raise CommandError(str(exc), returncode=1) from exc
        self._finish(
            run, start, status=ExperimentRun.Status.COMPLETED,
            checks_passed=summary["passed"], verdicts=summary["checks"],
        )
        self.stdout.write(f"run {run.pk}: {len(records)} records written to {out_dir}")
        if not summary["passed"]:
            raise CommandError(f"run {run.pk}: checks failed {summary['checks']}", returncode=EXIT_FAILED_CHECKS)
        self.stdout.write(self.style.SUCCESS("all checks passed"))

    def _finish(self, run, start, **fields):
        for name, value in fields.items():
            setattr(run, name, value)
        run.finished_at = timezone.now()
        run.wall_time = time.perf_counter() - start
        run.save()