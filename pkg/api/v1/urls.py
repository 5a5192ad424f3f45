from django.urls import include, path

from .results.urls import urlpatterns as results_urls

urlpatterns = [
    path(
        "",
        include((results_urls, "results"), namespace="results"),
    ),
]
