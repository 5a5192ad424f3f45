from rest_framework import serializers

from harness.models import ExperimentRun, ResultRecord


class ExperimentRunSerializer(serializers.ModelSerializer):
    """Experiment run with its verdicts"""

    record_count = serializers.IntegerField(source="records.count", read_only=True)

    class Meta:
        model = ExperimentRun
        fields = (
            "id",
            "kind",
            "status",
            "checks_passed",
            "verdicts",
            "seed",
            "code_version",
            "output_dir",
            "config",
            "error",
            "created_at",
            "finished_at",
            "wall_time",
            "record_count",
        )


class ResultRecordSerializer(serializers.ModelSerializer):
    """Measured value, prediction and error bar of one term"""

    class Meta:
        model = ResultRecord
        fields = "__all__"
