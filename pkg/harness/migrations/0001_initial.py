import django.db.models.deletion
from django.db import migrations, models


class Migration(migrations.Migration):

    initial = True

    dependencies = []

    operations = [
        migrations.CreateModel(
            name="ExperimentRun",
            fields=[
                ("id", models.BigAutoField(auto_created=True, primary_key=True, serialize=False, verbose_name="ID")),
                (
                    "kind",
                    models.CharField(
                        choices=[
                            ("twobody", "Twobody"),
                            ("vmc", "Vmc"),
                            ("css", "Css"),
                            ("nll", "Nll"),
                            ("gammastar", "Gammastar"),
                            ("convergence", "Convergence"),
                            ("g-scan", "G Scan"),
                            ("omega-scan", "Omega Scan"),
                            ("nll-suite", "Nll Suite"),
                            ("gammastar-scan", "Gammastar Scan"),
                        ],
                        max_length=20,
                    ),
                ),
                ("config", models.JSONField()),
                ("seed", models.CharField(max_length=20)),
                ("code_version", models.CharField(max_length=40)),
                ("output_dir", models.CharField(max_length=500)),
                (
                    "status",
                    models.CharField(
                        choices=[("running", "Running"), ("completed", "Completed"), ("failed", "Failed")],
                        default="running",
                        max_length=10,
                    ),
                ),
                ("checks_passed", models.BooleanField(blank=True, null=True)),
                ("verdicts", models.JSONField(blank=True, default=dict)),
                ("error", models.TextField(blank=True, default="")),
                ("created_at", models.DateTimeField(auto_now_add=True)),
                ("finished_at", models.DateTimeField(blank=True, null=True)),
                ("wall_time", models.FloatField(default=0.0)),
            ],
            options={
                "db_table": "experiment_runs",
                "ordering": ["-created_at", "-id"],
            },
        ),
        migrations.CreateModel(
            name="ResultRecord",
            fields=[
                ("id", models.BigAutoField(auto_created=True, primary_key=True, serialize=False, verbose_name="ID")),
                ("index", models.PositiveIntegerField()),
                ("experiment", models.CharField(max_length=40)),
                ("term", models.CharField(max_length=40)),
                ("N", models.PositiveIntegerField(blank=True, null=True)),
                ("parameters", models.JSONField(default=dict)),
                ("measured", models.FloatField()),
                ("stderr", models.FloatField(default=0.0)),
                ("predicted", models.FloatField(blank=True, null=True)),
                ("predicted_limit", models.FloatField(blank=True, null=True)),
                ("discrepancy", models.FloatField(blank=True, null=True)),
                ("tolerance", models.FloatField(blank=True, null=True)),
                ("passed", models.BooleanField(blank=True, null=True)),
                ("wall_time", models.FloatField(default=0.0)),
                ("seed", models.CharField(max_length=20)),
                ("code_version", models.CharField(max_length=40)),
                (
                    "run",
                    models.ForeignKey(
                        on_delete=django.db.models.deletion.CASCADE,
                        related_name="records",
                        to="harness.experimentrun",
                    ),
                ),
            ],
            options={
                "db_table": "result_records",
                "ordering": ["run", "index"],
                "unique_together": {("run", "index")},
            },
        ),
        migrations.AddConstraint(
            model_name="resultrecord",
            constraint=models.CheckConstraint(check=models.Q(("stderr__gte", 0)), name="stderr_non_negative"),
        ),
    ]
