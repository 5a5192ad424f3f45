import os
from pathlib import Path

from decouple import config

BASE_DIR = Path(__file__).resolve().parents[2]


def get_version():
    """Get code version from environment variable or default."""
    return config("ANYONLAB_VERSION", default="1.0.0")


SECRET_KEY = config("SECRET_KEY", default="dev-secret-key")
DEBUG = config("DEBUG", default=False, cast=bool)
ALLOWED_HOSTS = config("ALLOWED_HOSTS", default="*").split(",")

# All URLs are served under the /anyonlab base path
APPEND_SLASH = True

INSTALLED_APPS = [
    "django.contrib.admin",
    "django.contrib.auth",
    "django.contrib.contenttypes",
    "django.contrib.sessions",
    "django.contrib.messages",
    "django.contrib.staticfiles",
    "rest_framework",
    "django_filters",
    "drf_spectacular",
    # Project apps
    "harness",
]

MIDDLEWARE = [
    "django.middleware.security.SecurityMiddleware",
    "django.contrib.sessions.middleware.SessionMiddleware",
    "django.middleware.common.CommonMiddleware",
    "django.middleware.csrf.CsrfViewMiddleware",
    "django.contrib.auth.middleware.AuthenticationMiddleware",
    "django.contrib.messages.middleware.MessageMiddleware",
    "django.middleware.clickjacking.XFrameOptionsMiddleware",
]

ROOT_URLCONF = "config.urls"

TEMPLATES = [
    {
        "BACKEND": "django.template.backends.django.DjangoTemplates",
        "DIRS": [],
        "APP_DIRS": True,
        "OPTIONS": {
            "context_processors": [
                "django.template.context_processors.debug",
                "django.template.context_processors.request",
                "django.contrib.auth.context_processors.auth",
                "django.contrib.messages.context_processors.messages",
            ],
        },
    }
]

WSGI_APPLICATION = "config.wsgi.application"
ASGI_APPLICATION = "config.asgi.application"

REST_FRAMEWORK = {
    "DEFAULT_SCHEMA_CLASS": "drf_spectacular.openapi.AutoSchema",
    # Results are local laboratory data
    "DEFAULT_AUTHENTICATION_CLASSES": [],
    "DEFAULT_PERMISSION_CLASSES": [
        "rest_framework.permissions.AllowAny",
    ],
    "DEFAULT_FILTER_BACKENDS": [
        "django_filters.rest_framework.DjangoFilterBackend",
    ],
    "DEFAULT_PAGINATION_CLASS": "rest_framework.pagination.PageNumberPagination",
    "PAGE_SIZE": 50,
}

SPECTACULAR_SETTINGS = {
    "TITLE": "Anyon Lab Results API",
    "DESCRIPTION": (
        "Read-only access to experiment runs and result records produced by the "
        "anyon laboratory management commands.\n\n"
        "## Base Path\n\n"
        "All endpoints are served at `/anyonlab` base path.\n\n"
        "## Resources\n\n"
        "- Experiment runs (`/anyonlab/api/v1/runs/`)\n"
        "- Result records (`/anyonlab/api/v1/records/`), filterable by `run` and `term`"
    ),
    "VERSION": get_version(),
    "SERVE_INCLUDE_SCHEMA": False,
    "COMPONENT_SPLIT_REQUEST": True,
    "SORT_OPERATIONS": False,
    "SCHEMA_PATH_PREFIX": "/anyonlab/api/",
    "SWAGGER_UI_SETTINGS": {
        "deepLinking": True,
        "displayOperationId": False,
        "docExpansion": "list",
        "filter": True,
    },
    "TAGS": [
        {"name": "Runs", "description": "Experiment runs and their verdicts"},
        {"name": "Records", "description": "Measured and predicted values"},
    ],
}

DATABASES = {
    "default": {
        "ENGINE": "django.db.backends.sqlite3",
        "NAME": config("ANYONLAB_DATABASE", default=str(BASE_DIR / "anyonlab.sqlite3")),
    }
}

LANGUAGE_CODE = "en-us"
TIME_ZONE = "UTC"
USE_I18N = True
USE_TZ = True

STATIC_URL = "static/"
DEFAULT_AUTO_FIELD = "django.db.models.BigAutoField"

# Laboratory knobs injected at the harness boundary
ANYONLAB = {
    "CONFIG_SCHEMA_VERSION": 1,
    "GRID_SIZE": config("ANYONLAB_GRID_SIZE", default=256, cast=int),
    "ACCEPTANCE_GRID_SIZE": config("ANYONLAB_ACCEPTANCE_GRID_SIZE", default=512, cast=int),
    "BURN_IN_SWEEPS": config("ANYONLAB_BURN_IN_SWEEPS", default=10000, cast=int),
    "WALKERS": config("ANYONLAB_WALKERS", default=256, cast=int),
    "CHAINS": config("ANYONLAB_CHAINS", default=4, cast=int),
    "WORKERS": config("ANYONLAB_WORKERS", default=os.cpu_count() or 1, cast=int),
    "RELATIVE_ERROR_CEILING": config(
        "ANYONLAB_RELATIVE_ERROR_CEILING", default=0.25, cast=float
    ),
    "PADDING_TOLERANCE": config("ANYONLAB_PADDING_TOLERANCE", default=1e-8, cast=float),
    "OUTPUT_DIR": config("ANYONLAB_OUTPUT_DIR", default=str(BASE_DIR / "results")),
    "CODE_VERSION": get_version(),
}

LOG_LEVEL = config("ANYONLAB_LOG_LEVEL", default="INFO")

LOGGING = {
    "version": 1,
    "disable_existing_loggers": False,
    "formatters": {
        "simple": {
            "format": "{asctime} {levelname} {name}: {message}",
            "style": "{",
        },
    },
    "handlers": {
        "console": {
            "class": "logging.StreamHandler",
            "formatter": "simple",
        },
    },
    "root": {
        "handlers": ["console"],
        "level": "WARNING",
    },
    "loggers": {
        name: {"handlers": ["console"], "level": LOG_LEVEL, "propagate": False}
        for name in ("twobody", "manybody", "meanfield", "harness")
    },
}
