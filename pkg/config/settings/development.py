from .base import *  # noqa

# Development-specific settings
DEBUG = True
