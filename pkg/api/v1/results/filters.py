import django_filters

from harness.models import ResultRecord


class ResultRecordFilter(django_filters.FilterSet):
    term = django_filters.CharFilter(field_name="term")
    experiment = django_filters.CharFilter(field_name="experiment")
    run = django_filters.NumberFilter(field_name="run_id")
    passed = django_filters.BooleanFilter(field_name="passed")

    class Meta:
        model = ResultRecord
        fields = ("term", "experiment", "run", "N", "passed")
