from drf_spectacular.types import OpenApiTypes
from drf_spectacular.utils import OpenApiParameter, extend_schema, extend_schema_view
from rest_framework import viewsets
from rest_framework.decorators import action
from rest_framework.response import Response

from harness.models import ExperimentRun, ResultRecord

from .filters import ResultRecordFilter
from .serializers import ExperimentRunSerializer, ResultRecordSerializer


@extend_schema_view(
    list=extend_schema(
        operation_id="list_runs",
        tags=["Runs"],
        summary="List experiment runs",
        description="Retrieve a paginated list of experiment runs, newest first.",
    ),
    retrieve=extend_schema(
        operation_id="get_run",
        tags=["Runs"],
        summary="Get an experiment run",
        description="Retrieve one run with its config, status and check verdicts.",
    ),
)
class ExperimentRunViewSet(viewsets.ReadOnlyModelViewSet):
    queryset = ExperimentRun.objects.all()
    serializer_class = ExperimentRunSerializer
    filterset_fields = ("kind", "status", "checks_passed")

    @extend_schema(
        operation_id="get_run_records",
        tags=["Runs"],
        summary="Get the records of a run",
        description="Retrieve the result records of one run in emission order.",
        parameters=[
            OpenApiParameter(
                name="id",
                type=OpenApiTypes.INT,
                location=OpenApiParameter.PATH,
                description="The experiment run identifier",
                required=True,
            ),
        ],
        responses={200: ResultRecordSerializer(many=True)},
    )
    @action(detail=True, methods=["get"], url_path="records", url_name="records")
    def records(self, request, **kwargs):
        run = self.get_object()
        records = run.records.order_by("index")

        page = self.paginate_queryset(records)
        if page is not None:
            serializer = ResultRecordSerializer(page, many=True)
            return self.get_paginated_response(serializer.data)

        serializer = ResultRecordSerializer(records, many=True)
        return Response(serializer.data)


@extend_schema_view(
    list=extend_schema(
        operation_id="list_records",
        tags=["Records"],
        summary="List result records",
        description="Retrieve a paginated list of result records, filterable by run and term.",
    ),
    retrieve=extend_schema(
        operation_id="get_record",
        tags=["Records"],
        summary="Get a result record",
        description="Retrieve one measured value with its prediction and error bar.",
    ),
)
class ResultRecordViewSet(viewsets.ReadOnlyModelViewSet):
    queryset = ResultRecord.objects.select_related("run")
    serializer_class = ResultRecordSerializer
    filterset_class = ResultRecordFilter
