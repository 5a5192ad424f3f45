from django.contrib import admin

from . import models


@admin.register(models.ExperimentRun)
class ExperimentRunAdmin(admin.ModelAdmin):
    list_display = ("id", "kind", "status", "checks_passed", "seed", "created_at")
    list_filter = ("kind", "status", "checks_passed")


@admin.register(models.ResultRecord)
class ResultRecordAdmin(admin.ModelAdmin):
    list_display = ("run", "index", "experiment", "term", "N", "measured", "predicted", "passed")
    list_filter = ("experiment", "term", "passed")
    search_fields = ("experiment", "term")
