"""
Tests for the result record API endpoints.
"""

import pytest
from django.urls import reverse
from rest_framework import status

from tests.factories import ResultRecordFactory


class TestRecordsAPI:
    """Test cases for the record endpoints."""

    @pytest.mark.django_db
    def test_list_records(self, api_client, completed_run):
        """Test listing records."""
        response = api_client.get(reverse("results:record-list"))

        assert response.status_code == status.HTTP_200_OK
        assert response.data["count"] == 3

    @pytest.mark.django_db
    def test_retrieve_record(self, api_client):
        """Test retrieving one record with its prediction and error bar."""
        record = ResultRecordFactory(measured=1.5, predicted=1.25)
        url = reverse("results:record-detail", kwargs={"pk": record.pk})
        response = api_client.get(url)

        assert response.status_code == status.HTTP_200_OK
        assert response.data["run"] == record.run_id
        assert response.data["measured"] == 1.5
        assert response.data["discrepancy"] == 0.25
        assert response.data["parameters"] == {"beta": 0.5, "g": 1.0}

    @pytest.mark.django_db
    def test_retrieve_nonexistent_record(self, api_client):
        """Test retrieving a record that doesn't exist."""
        url = reverse("results:record-detail", kwargs={"pk": 999999})
        response = api_client.get(url)

        assert response.status_code == status.HTTP_404_NOT_FOUND

    @pytest.mark.django_db
    def test_filter_by_term(self, api_client, completed_run):
        """Test filtering records by term."""
        response = api_client.get(reverse("results:record-list"), {"term": "Sdiag"})

        assert response.data["count"] == 1
        assert response.data["results"][0]["term"] == "Sdiag"

    @pytest.mark.django_db
    def test_filter_by_passed(self, api_client, completed_run):
        """Test filtering records by verdict."""
        response = api_client.get(reverse("results:record-list"), {"passed": "false"})

        assert [r["term"] for r in response.data["results"]] == ["Sdiag"]

    @pytest.mark.django_db
    def test_filter_by_run(self, api_client, completed_run):
        """Test filtering records by run."""
        ResultRecordFactory()
        response = api_client.get(reverse("results:record-list"), {"run": completed_run.pk})

        assert response.data["count"] == 3
        assert {r["run"] for r in response.data["results"]} == {completed_run.pk}

    @pytest.mark.django_db
    def test_filter_by_particle_number(self, api_client):
        """Test filtering records by N."""
        ResultRecordFactory(N=4)
        ResultRecordFactory(N=16)
        response = api_client.get(reverse("results:record-list"), {"N": 16})

        assert [r["N"] for r in response.data["results"]] == [16]
