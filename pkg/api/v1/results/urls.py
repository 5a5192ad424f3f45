from django.urls import include, path
from rest_framework.routers import DefaultRouter

from .views import ExperimentRunViewSet, ResultRecordViewSet


class OptionalSlashRouter(DefaultRouter):
    """Router that accepts URLs with or without trailing slashes."""

    def __init__(self, *args, **kwargs):
        super().__init__(*args, **kwargs)
        self.trailing_slash = "/?"


router = OptionalSlashRouter()
router.register(r"runs", ExperimentRunViewSet, basename="run")
router.register(r"records", ResultRecordViewSet, basename="record")

urlpatterns = [
    path("", include(router.urls)),
]
