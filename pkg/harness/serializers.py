"""
Validation of experiment config files.

Config files are JSON with camelCase keys; ``validated_data`` carries the
snake_case names the drivers use. Unknown keys are rejected at every level.
"""

from django.conf import settings
from rest_framework import serializers

from meanfield.potential import POTENTIAL_KINDS

U64_MAX = 2**64 - 1


def schema_version() -> int:
    return settings.ANYONLAB["CONFIG_SCHEMA_VERSION"]


class StrictSerializer(serializers.Serializer):
    """Serializer that rejects keys it does not declare."""

    def to_internal_value(self, data):
        if isinstance(data, dict):
            unknown = sorted(set(data) - set(self.fields))
            if unknown:
                raise serializers.ValidationError({key: ["Unknown key."] for key in unknown})
            # absent sections still get their own field defaults
            data = dict(data)
            for name, field in self.fields.items():
                if isinstance(field, serializers.BaseSerializer) and field.default is dict:
                    data.setdefault(name, {})
        return super().to_internal_value(data)


class SeedField(serializers.IntegerField):
    def __init__(self, **kwargs):
        kwargs.setdefault("min_value", 0)
        kwargs.setdefault("max_value", U64_MAX)
        super().__init__(**kwargs)


class ExperimentSerializer(StrictSerializer):
    """Top-level fields shared by every config file."""

    schemaVersion = serializers.IntegerField(source="schema_version", required=False)
    seed = SeedField(required=False, default=0)
    out = serializers.CharField(required=False, allow_blank=False)

    def validate_schemaVersion(self, value):
        if value != schema_version():
            raise serializers.ValidationError(
                f"Unsupported schema version {value}; expected {schema_version()}."
            )
        return value


class GridSerializer(StrictSerializer):
    L = serializers.FloatField(min_value=0.0)
    n = serializers.IntegerField(required=False, allow_null=True, default=None)

    def validate_L(self, value):
        if value <= 0:
            raise serializers.ValidationError("Box size must be positive.")
        return value

    def validate_n(self, value):
        if value is not None and (value < 8 or value & (value - 1)):
            raise serializers.ValidationError("Grid size must be a power of two >= 8.")
        return value


class PotentialSerializer(StrictSerializer):
    kind = serializers.ChoiceField(choices=POTENTIAL_KINDS, default="zero")
    coefficient = serializers.FloatField(min_value=0.0, default=1.0)
    exponent = serializers.FloatField(default=2.0)

    def validate(self, attrs):
        if attrs["kind"] == "harmonic" and attrs["exponent"] != 2.0:
            raise serializers.ValidationError({"exponent": "Harmonic potential has exponent 2."})
        if attrs["exponent"] <= 0:
            raise serializers.ValidationError({"exponent": "Exponent must be positive."})
        return attrs


class CondensateSerializer(StrictSerializer):
    kind = serializers.ChoiceField(
        choices=("truncated-gaussian", "grid-interpolated"), default="truncated-gaussian"
    )
    supportRadius = serializers.FloatField(source="support_radius", default=1.0)
    width = serializers.FloatField(required=False, allow_null=True, default=None)
    field = serializers.CharField(required=False, allow_null=True, default=None)

    def validate(self, attrs):
        if attrs["support_radius"] <= 0:
            raise serializers.ValidationError({"supportRadius": "Support radius must be positive."})
        if attrs["kind"] == "grid-interpolated" and not attrs["field"]:
            raise serializers.ValidationError({"field": "A grid-interpolated condensate needs a field file."})
        return attrs


class SamplerSerializer(StrictSerializer):
    """Sampler knobs; missing values fall back to the ANYONLAB settings."""

    walkers = serializers.IntegerField(min_value=1, required=False)
    burnIn = serializers.IntegerField(source="burn_in", min_value=50, required=False)
    sweeps = serializers.IntegerField(min_value=1, default=2000)
    measureEvery = serializers.IntegerField(source="measure_every", min_value=1, default=1)
    chains = serializers.IntegerField(min_value=1, required=False)
    step = serializers.FloatField(required=False, allow_null=True, default=None)


class TwoBodyConfigSerializer(ExperimentSerializer):
    alphas = serializers.ListField(child=serializers.FloatField(), allow_empty=False)
    rOverB = serializers.ListField(source="r_over_b", child=serializers.FloatField(), allow_empty=False)
    g = serializers.ListField(child=serializers.FloatField(min_value=0.0), allow_empty=False)
    b = serializers.FloatField(default=1.0)
    meshPoints = serializers.IntegerField(source="mesh_points", min_value=16, default=400)
    strict = serializers.BooleanField(default=False)
    couplingChecks = serializers.BooleanField(source="coupling_checks", default=True)


class VMCConfigSerializer(ExperimentSerializer):
    N = serializers.IntegerField(min_value=2)
    alpha = serializers.FloatField(required=False)
    beta = serializers.FloatField(required=False)
    R = serializers.FloatField(min_value=0.0)
    b = serializers.FloatField()
    g = serializers.FloatField(min_value=0.0, default=0.0)
    condensate = CondensateSerializer(default=dict)
    potential = PotentialSerializer(default=dict)
    sampler = SamplerSerializer(default=dict)
    raoBlackwell = serializers.BooleanField(source="rao_blackwell", default=False)
    quadrature = serializers.BooleanField(required=False)
    densityBins = serializers.IntegerField(source="density_bins", min_value=4, default=32)
    normSamples = serializers.IntegerField(source="norm_samples", min_value=100, default=100_000)

    def validate(self, attrs):
        if ("alpha" in attrs) == ("beta" in attrs):
            raise serializers.ValidationError("Give exactly one of alpha and beta.")
        if "beta" in attrs:
            attrs["alpha"] = attrs.pop("beta") / (attrs["N"] - 1)
        attrs.setdefault("quadrature", attrs["N"] == 2)
        if attrs["quadrature"] and attrs["N"] != 2:
            raise serializers.ValidationError({"quadrature": "The quadrature oracle needs N = 2."})
        return attrs


class InitSerializer(StrictSerializer):
    kind = serializers.ChoiceField(choices=("random", "nll", "file"), default="random")
    width = serializers.FloatField(required=False, allow_null=True, default=None)
    degree = serializers.IntegerField(min_value=1, default=1)
    scale = serializers.FloatField(default=1.0)
    perturbation = serializers.FloatField(min_value=0.0, default=0.0)
    path = serializers.CharField(required=False, allow_null=True, default=None)

    def validate(self, attrs):
        if attrs["kind"] == "file" and not attrs["path"]:
            raise serializers.ValidationError({"path": "A file start needs a path."})
        return attrs


class CSSConfigSerializer(ExperimentSerializer):
    grid = GridSerializer()
    beta = serializers.FloatField()
    gamma = serializers.FloatField()
    potential = PotentialSerializer(default=dict)
    init = InitSerializer(default=dict)
    tol = serializers.FloatField(min_value=0.0, default=1e-6)
    maxIter = serializers.IntegerField(source="max_iter", min_value=1, default=2000)
    energyFloor = serializers.FloatField(source="energy_floor", default=-1.0)
    paddingTolerance = serializers.FloatField(source="padding_tolerance", required=False)
    hardy = serializers.BooleanField(default=True)
    saveField = serializers.BooleanField(source="save_field", default=True)


class NLLConfigSerializer(ExperimentSerializer):
    grid = GridSerializer()
    betas = serializers.ListField(child=serializers.IntegerField(min_value=2), allow_empty=False)
    pairsPerBeta = serializers.IntegerField(source="pairs_per_beta", min_value=1, default=3)
    spread = serializers.FloatField(min_value=0.0, default=1.0)
    featureWidth = serializers.FloatField(source="feature_width", min_value=0.0, allow_null=True, default=None)
    maxExtentRatio = serializers.FloatField(source="max_ratio", min_value=1.0, default=4.0)
    maxDraws = serializers.IntegerField(source="max_draws", min_value=1, default=100)
    tolerance = serializers.FloatField(default=1e-5)
    analyticTolerance = serializers.FloatField(source="analytic_tolerance", default=1e-6)
    massTolerance = serializers.FloatField(source="mass_tolerance", default=1e-6)
    tailTolerance = serializers.FloatField(source="tail_tolerance", default=1e-2)
    resolutionTolerance = serializers.FloatField(source="resolution_tolerance", default=1e-6)
    paddingTolerance = serializers.FloatField(source="padding_tolerance", default=1e-2)
    analytic = serializers.BooleanField(default=True)
    hardy = serializers.BooleanField(default=True)

    def validate_betas(self, value):
        odd = [beta for beta in value if beta % 2]
        if odd:
            raise serializers.ValidationError(f"NLL states exist for even beta only, got {odd}.")
        return value


class GammaStarConfigSerializer(ExperimentSerializer):
    grid = GridSerializer()
    betas = serializers.ListField(child=serializers.FloatField(min_value=0.0), allow_empty=False)
    restarts = serializers.IntegerField(min_value=0, default=8)
    tol = serializers.FloatField(default=1e-6)
    maxIter = serializers.IntegerField(source="max_iter", min_value=1, default=1500)
    width = serializers.FloatField(required=False, allow_null=True, default=None)
    paddingTolerance = serializers.FloatField(source="padding_tolerance", default=1e-2)
    relativeWindow = serializers.FloatField(source="relative_window", default=0.02)


class ScheduleSerializer(StrictSerializer):
    N = serializers.ListField(child=serializers.IntegerField(min_value=2), allow_empty=False)
    beta = serializers.FloatField(min_value=0.0)
    omega = serializers.ListField(child=serializers.FloatField(min_value=0.0), allow_empty=False)
    g = serializers.ListField(child=serializers.FloatField(min_value=0.0), allow_empty=False)
    bExponent = serializers.FloatField(source="b_exponent", default=2.5)
    b = serializers.FloatField(required=False, allow_null=True, default=None)


EXPERIMENT_KINDS = ("convergence", "g-scan", "omega-scan", "nll-suite", "gammastar-scan")


class ExperimentConfigSerializer(ExperimentSerializer):
    """Config of the ``convergence`` command; ``kind`` selects the study."""

    kind = serializers.ChoiceField(choices=EXPERIMENT_KINDS, default="convergence")
    schedule = ScheduleSerializer(required=False)
    condensate = CondensateSerializer(default=dict)
    potential = PotentialSerializer(default=dict)
    sampler = SamplerSerializer(default=dict)
    grid = GridSerializer(required=False)
    raoBlackwell = serializers.BooleanField(source="rao_blackwell", default=False)
    density = serializers.BooleanField(default=False)
    densityBins = serializers.IntegerField(source="density_bins", min_value=4, default=32)
    nll = NLLConfigSerializer(required=False)
    gammastar = GammaStarConfigSerializer(required=False)

    def validate(self, attrs):
        kind = attrs["kind"]
        if kind in ("convergence", "g-scan", "omega-scan") and "schedule" not in attrs:
            raise serializers.ValidationError({"schedule": f"A {kind} study needs a schedule."})
        if kind == "g-scan" and len(attrs["schedule"]["g"]) < 2:
            raise serializers.ValidationError({"schedule": "A g-scan needs at least two g values."})
        if kind == "omega-scan" and len(attrs["schedule"]["omega"]) < 2:
            raise serializers.ValidationError({"schedule": "An omega-scan needs at least two omega values."})
        if kind == "nll-suite" and "nll" not in attrs:
            raise serializers.ValidationError({"nll": "An nll-suite needs an nll section."})
        if kind == "gammastar-scan" and "gammastar" not in attrs:
            raise serializers.ValidationError({"gammastar": "A gammastar-scan needs a gammastar section."})
        return attrs


COMMAND_SERIALIZERS = {
    "twobody": TwoBodyConfigSerializer,
    "vmc": VMCConfigSerializer,
    "css": CSSConfigSerializer,
    "nll": NLLConfigSerializer,
    "gammastar": GammaStarConfigSerializer,
    "convergence": ExperimentConfigSerializer,
}
