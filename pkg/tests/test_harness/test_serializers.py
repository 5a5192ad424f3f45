"""
Tests for config validation.
"""

import pytest

from harness.serializers import (
    COMMAND_SERIALIZERS,
    U64_MAX,
    CSSConfigSerializer,
    ExperimentConfigSerializer,
    NLLConfigSerializer,
    TwoBodyConfigSerializer,
    VMCConfigSerializer,
)

VMC = {"schemaVersion": 1, "N": 3, "R": 0.01, "b": 0.2, "g": 1.0}
SCHEDULE = {"N": [4, 8], "beta": 0.5, "omega": [1.0], "g": [1.0]}


def errors(serializer_class, data):
    serializer = serializer_class(data=data)
    assert not serializer.is_valid()
    return serializer.errors


class TestStrictSerializer:
    """Test cases for unknown-key rejection and defaults."""

    def test_unknown_top_level_key(self):
        """Test that misspelled keys are reported by name."""
        data = {"alphas": [0.1], "rOverB": [0.1], "g": [0.0], "meshpoints": 100}
        assert errors(TwoBodyConfigSerializer, data) == {"meshpoints": ["Unknown key."]}

    def test_unknown_nested_key(self):
        """Test that nested sections reject unknown keys too."""
        data = {**VMC, "alpha": 0.1, "sampler": {"walker": 8}}
        assert "walker" in errors(VMCConfigSerializer, data)["sampler"]

    def test_absent_sections_get_defaults(self):
        """Test that missing nested sections are filled with their field defaults."""
        serializer = VMCConfigSerializer(data={**VMC, "alpha": 0.1})
        assert serializer.is_valid(), serializer.errors
        data = serializer.validated_data
        assert data["condensate"]["kind"] == "truncated-gaussian"
        assert data["condensate"]["support_radius"] == 1.0
        assert data["potential"]["kind"] == "zero"
        assert data["sampler"]["sweeps"] == 2000
        assert "walkers" not in data["sampler"]

    def test_schema_version(self):
        """Test that only the current schema version is accepted."""
        data = {"alphas": [0.1], "rOverB": [0.1], "g": [0.0], "schemaVersion": 2}
        assert "schemaVersion" in errors(TwoBodyConfigSerializer, data)

    @pytest.mark.parametrize("seed", [-1, U64_MAX + 1])
    def test_seed_range(self, seed):
        """Test that seeds must be unsigned 64-bit integers."""
        data = {"alphas": [0.1], "rOverB": [0.1], "g": [0.0], "seed": seed}
        assert "seed" in errors(TwoBodyConfigSerializer, data)

    def test_largest_seed(self):
        """Test that 2^64 - 1 is a valid seed."""
        serializer = TwoBodyConfigSerializer(data={"alphas": [0.1], "rOverB": [0.1], "g": [0.0], "seed": U64_MAX})
        assert serializer.is_valid(), serializer.errors
        assert serializer.validated_data["seed"] == U64_MAX

    def test_every_command_has_a_serializer(self):
        """Test the command to serializer map."""
        assert set(COMMAND_SERIALIZERS) == {"twobody", "vmc", "css", "nll", "gammastar", "convergence"}


class TestVMCConfig:
    """Test cases for the vmc config."""

    def test_beta_becomes_alpha(self):
        """Test alpha = beta / (N - 1)."""
        serializer = VMCConfigSerializer(data={**VMC, "beta": 1.0})
        assert serializer.is_valid(), serializer.errors
        assert serializer.validated_data["alpha"] == 0.5
        assert "beta" not in serializer.validated_data

    def test_alpha_xor_beta(self):
        """Test that exactly one of alpha and beta is given."""
        assert "non_field_errors" in errors(VMCConfigSerializer, {**VMC, "alpha": 0.1, "beta": 0.2})
        assert "non_field_errors" in errors(VMCConfigSerializer, VMC)

    def test_quadrature_defaults_to_pairs(self):
        """Test that the quadrature oracle is on exactly when N = 2."""
        pair = VMCConfigSerializer(data={**VMC, "N": 2, "alpha": 0.1})
        many = VMCConfigSerializer(data={**VMC, "alpha": 0.1})
        assert pair.is_valid() and many.is_valid()
        assert pair.validated_data["quadrature"] is True
        assert many.validated_data["quadrature"] is False

    def test_quadrature_needs_pairs(self):
        """Test that the oracle is rejected for N > 2."""
        assert "quadrature" in errors(VMCConfigSerializer, {**VMC, "alpha": 0.1, "quadrature": True})

    def test_grid_condensate_needs_field(self):
        """Test that the grid-interpolated condensate requires a field path."""
        data = {**VMC, "alpha": 0.1, "condensate": {"kind": "grid-interpolated"}}
        assert "field" in errors(VMCConfigSerializer, data)["condensate"]

    def test_harmonic_exponent(self):
        """Test that a harmonic potential keeps exponent 2."""
        data = {**VMC, "alpha": 0.1, "potential": {"kind": "harmonic", "exponent": 4.0}}
        assert "exponent" in errors(VMCConfigSerializer, data)["potential"]


class TestMeanFieldConfigs:
    """Test cases for css and nll configs."""

    def test_grid_size(self):
        """Test that grid sizes are powers of two of at least 8."""
        data = {"grid": {"L": 20.0, "n": 12}, "beta": 0.0, "gamma": 0.0}
        assert "n" in errors(CSSConfigSerializer, data)["grid"]

    def test_css_defaults(self):
        """Test the css defaults."""
        serializer = CSSConfigSerializer(data={"grid": {"L": 20.0}, "beta": 1.0, "gamma": -1.0})
        assert serializer.is_valid(), serializer.errors
        data = serializer.validated_data
        assert data["grid"]["n"] is None
        assert data["init"]["kind"] == "random"
        assert data["energy_floor"] == -1.0
        assert "padding_tolerance" not in data

    def test_nll_betas_are_even(self):
        """Test that odd beta values are rejected."""
        assert "betas" in errors(NLLConfigSerializer, {"grid": {"L": 64.0}, "betas": [2, 3]})

    def test_nll_defaults(self):
        """Test that pair screening and the mass check default to acceptance values."""
        serializer = NLLConfigSerializer(data={"grid": {"L": 96.0}, "betas": [2]})
        assert serializer.is_valid(), serializer.errors
        data = serializer.validated_data
        assert data["feature_width"] is None
        assert data["max_ratio"] == 4.0
        assert data["mass_tolerance"] == 1e-6
        assert data["resolution_tolerance"] == 1e-6
        assert data["tolerance"] == 1e-5


class TestExperimentConfig:
    """Test cases for the convergence command config."""

    def test_convergence(self):
        """Test a plain convergence study."""
        serializer = ExperimentConfigSerializer(data={"schedule": SCHEDULE})
        assert serializer.is_valid(), serializer.errors
        assert serializer.validated_data["kind"] == "convergence"
        assert serializer.validated_data["schedule"]["b_exponent"] == 2.5

    def test_schedule_required(self):
        """Test that scans need a schedule."""
        assert "schedule" in errors(ExperimentConfigSerializer, {"kind": "omega-scan"})

    def test_g_scan_needs_two_values(self):
        """Test that a g-scan needs at least two g values."""
        assert "schedule" in errors(ExperimentConfigSerializer, {"kind": "g-scan", "schedule": SCHEDULE})

    def test_nll_suite_needs_section(self):
        """Test that an nll-suite needs its nll section."""
        assert "nll" in errors(ExperimentConfigSerializer, {"kind": "nll-suite"})

    def test_nll_suite(self):
        """Test a valid nll-suite."""
        data = {"kind": "nll-suite", "nll": {"grid": {"L": 64.0, "n": 256}, "betas": [2, 4]}}
        serializer = ExperimentConfigSerializer(data=data)
        assert serializer.is_valid(), serializer.errors
        assert serializer.validated_data["nll"]["pairs_per_beta"] == 3
