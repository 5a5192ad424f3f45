from django.db import models


class ExperimentRun(models.Model):
    class Kind(models.TextChoices):
        TWOBODY = "twobody"
        VMC = "vmc"
        CSS = "css"
        NLL = "nll"
        GAMMASTAR = "gammastar"
        CONVERGENCE = "convergence"
        G_SCAN = "g-scan"
        OMEGA_SCAN = "omega-scan"
        NLL_SUITE = "nll-suite"
        GAMMASTAR_SCAN = "gammastar-scan"

    class Status(models.TextChoices):
        RUNNING = "running"
        COMPLETED = "completed"
        FAILED = "failed"

    kind = models.CharField(max_length=20, choices=Kind.choices)
    config = models.JSONField()
    # u64 seeds do not fit a signed 64-bit integer column
    seed = models.CharField(max_length=20)
    code_version = models.CharField(max_length=40)
    output_dir = models.CharField(max_length=500)
    status = models.CharField(max_length=10, choices=Status.choices, default=Status.RUNNING)
    checks_passed = models.BooleanField(null=True, blank=True)
    verdicts = models.JSONField(default=dict, blank=True)
    error = models.TextField(blank=True, default="")
    created_at = models.DateTimeField(auto_now_add=True)
    finished_at = models.DateTimeField(null=True, blank=True)
    wall_time = models.FloatField(default=0.0)

    def __str__(self):
        return f"{self.kind} #{self.pk}"

    class Meta:
        db_table = "experiment_runs"
        ordering = ["-created_at", "-id"]


class ResultRecord(models.Model):
    run = models.ForeignKey(ExperimentRun, models.CASCADE, related_name="records")
    index = models.PositiveIntegerField()
    experiment = models.CharField(max_length=40)
    term = models.CharField(max_length=40)
    N = models.PositiveIntegerField(null=True, blank=True)
    parameters = models.JSONField(default=dict)
    measured = models.FloatField()
    stderr = models.FloatField(default=0.0)
    predicted = models.FloatField(null=True, blank=True)
    predicted_limit = models.FloatField(null=True, blank=True)
    discrepancy = models.FloatField(null=True, blank=True)
    tolerance = models.FloatField(null=True, blank=True)
    passed = models.BooleanField(null=True, blank=True)
    wall_time = models.FloatField(default=0.0)
    seed = models.CharField(max_length=20)
    code_version = models.CharField(max_length=40)

    def __str__(self):
        return f"{self.experiment}:{self.term} (run {self.run_id})"

    class Meta:
        db_table = "result_records"
        ordering = ["run", "index"]
        unique_together = (("run", "index"),)
        constraints = [
            models.CheckConstraint(check=models.Q(stderr__gte=0), name="stderr_non_negative"),
        ]
