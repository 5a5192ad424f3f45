from pathlib import Path

from django.core.management.base import BaseCommand, CommandError

from config.exceptions import AnyonLabError
from harness.models import ExperimentRun
from harness.records import load_records
from harness.reporting import report
from harness.runner import EXIT_FAILED_CHECKS


class Command(BaseCommand):
    help = "Re-write the CSV and JSON summary of a stored run."

    def add_arguments(self, parser):
        parser.add_argument("--run", type=int, required=True, help="Experiment run id")
        parser.add_argument("--out", default=None, help="Output directory, defaults to the run's own")

    def handle(self, *args, **options):
        try:
            run = ExperimentRun.objects.get(pk=options["run"])
        except ExperimentRun.DoesNotExist:
            raise CommandError(f"no experiment run with id {options['run']}", returncode=1)
        out_dir = Path(options["out"] or run.output_dir)
        try:
            summary = report(load_records(run), out_dir, run.kind, run.pk)
        except AnyonLabError as exc:
            raise CommandError(str(exc), returncode=1) from exc
        self.stdout.write(f"run {run.pk}: {summary['records']} records written to {out_dir}")
        if not summary["passed"]:
            raise CommandError(f"run {run.pk}: checks failed {summary['checks']}", returncode=EXIT_FAILED_CHECKS)
