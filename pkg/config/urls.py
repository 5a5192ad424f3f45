from django.contrib import admin
from django.urls import include, path
from drf_spectacular.views import (
    SpectacularAPIView,
    SpectacularRedocView,
    SpectacularSwaggerView,
)

# All URLs are served under /anyonlab base path
urlpatterns = [
    path("anyonlab/admin/", admin.site.urls),
    path("anyonlab/api/v1/", include("api.v1.urls")),
    # OpenAPI schema and docs
    path("anyonlab/api/schema/", SpectacularAPIView.as_view(), name="schema"),
    path(
        "anyonlab/api/docs/",
        SpectacularSwaggerView.as_view(url_name="schema"),
        name="swagger-ui",
    ),
    path(
        "anyonlab/api/redoc/",
        SpectacularRedocView.as_view(url_name="schema"),
        name="redoc",
    ),
]
