"""
Basic tests to verify pytest setup works.
"""

import pytest
from rest_framework import status
from rest_framework.test import APIClient


class TestBasicSetup:
    """Test basic setup without numerical work."""

    @pytest.mark.django_db
    def test_django_setup(self):
        """Test that Django is properly configured."""
        from django.conf import settings

        assert "harness" in settings.INSTALLED_APPS
        assert settings.ANYONLAB["CONFIG_SCHEMA_VERSION"] == 1

    @pytest.mark.django_db
    def test_runs_endpoint_responds(self):
        """Test that the runs list is served under the versioned API prefix."""
        response = APIClient().get("/anyonlab/api/v1/runs/")
        assert response.status_code == status.HTTP_200_OK

    def test_imports_work(self):
        """Test that the numerical packages import without Django."""
        from manybody import estimate_energy
        from meanfield import css_energy
        from twobody import coupling_G

        assert callable(estimate_energy)
        assert callable(css_energy)
        assert callable(coupling_G)
