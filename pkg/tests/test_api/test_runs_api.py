"""
Tests for the experiment run API endpoints.
"""

import pytest
from django.urls import reverse
from rest_framework import status

from tests.factories import ExperimentRunFactory


class TestRunsAPI:
    """Test cases for the run endpoints."""

    @pytest.mark.django_db
    def test_list_runs(self, api_client, completed_run):
        """Test listing runs."""
        url = reverse("results:run-list")
        response = api_client.get(url)

        assert response.status_code == status.HTTP_200_OK
        assert response.data["count"] == 1
        assert response.data["results"][0]["id"] == completed_run.pk
        assert response.data["results"][0]["record_count"] == 3

    @pytest.mark.django_db
    def test_list_runs_newest_first(self, api_client):
        """Test that runs are listed newest first."""
        older = ExperimentRunFactory()
        newer = ExperimentRunFactory()
        response = api_client.get(reverse("results:run-list"))

        ids = [run["id"] for run in response.data["results"]]
        assert ids.index(newer.pk) < ids.index(older.pk)

    @pytest.mark.django_db
    def test_filter_runs_by_kind(self, api_client):
        """Test filtering runs by kind."""
        ExperimentRunFactory(kind="css")
        ExperimentRunFactory(kind="vmc")
        response = api_client.get(reverse("results:run-list"), {"kind": "css"})

        assert response.status_code == status.HTTP_200_OK
        assert [run["kind"] for run in response.data["results"]] == ["css"]

    @pytest.mark.django_db
    def test_retrieve_run(self, api_client, completed_run):
        """Test retrieving a run with its config and verdicts."""
        url = reverse("results:run-detail", kwargs={"pk": completed_run.pk})
        response = api_client.get(url)

        assert response.status_code == status.HTTP_200_OK
        assert response.data["kind"] == "vmc"
        assert response.data["checks_passed"] is False
        assert response.data["config"] == completed_run.config
        assert response.data["seed"] == completed_run.seed

    @pytest.mark.django_db
    def test_retrieve_nonexistent_run(self, api_client):
        """Test retrieving a run that doesn't exist."""
        url = reverse("results:run-detail", kwargs={"pk": 999999})
        response = api_client.get(url)

        assert response.status_code == status.HTTP_404_NOT_FOUND

    @pytest.mark.django_db
    def test_run_records(self, api_client, completed_run):
        """Test retrieving the records of a run in emission order."""
        url = reverse("results:run-records", kwargs={"pk": completed_run.pk})
        response = api_client.get(url)

        assert response.status_code == status.HTTP_200_OK
        assert [r["term"] for r in response.data["results"]] == ["K", "Sdiag", "total"]
        assert [r["index"] for r in response.data["results"]] == [0, 1, 2]

    @pytest.mark.django_db
    def test_run_records_nonexistent_run(self, api_client):
        """Test the records of a run that doesn't exist."""
        url = reverse("results:run-records", kwargs={"pk": 999999})
        response = api_client.get(url)

        assert response.status_code == status.HTTP_404_NOT_FOUND

    @pytest.mark.django_db
    def test_runs_are_read_only(self, api_client, completed_run):
        """Test that runs cannot be created or deleted over the API."""
        list_url = reverse("results:run-list")
        detail_url = reverse("results:run-detail", kwargs={"pk": completed_run.pk})

        assert api_client.post(list_url, {"kind": "vmc"}).status_code == status.HTTP_405_METHOD_NOT_ALLOWED
        assert api_client.delete(detail_url).status_code == status.HTTP_405_METHOD_NOT_ALLOWED
