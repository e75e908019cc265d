from __future__ import annotations

from uuid import uuid4

from django.db import models


RUN_STATUS = (
    ("OK", "Completed"),
    ("INPUT_ERROR", "Rejected input"),
    ("VERIFICATION_FAILED", "Invariant violated"),
)


class TimeStampedModel(models.Model):
    created_at = models.DateTimeField(auto_now_add=True)
    updated_at = models.DateTimeField(auto_now=True)

    class Meta:
        abstract = True


class ExperimentRun(TimeStampedModel):
    """One recorded workbench command with its parameters and canonical result."""

    id = models.UUIDField(primary_key=True, default=uuid4, editable=False)
    command = models.CharField(max_length=50)
    parameters = models.JSONField(default=dict)
    status = models.CharField(max_length=32, choices=RUN_STATUS)
    exit_code = models.PositiveSmallIntegerField(default=0)
    result = models.JSONField(null=True, blank=True)
    result_digest = models.CharField(max_length=64, blank=True, default="")
    summary = models.TextField(blank=True, default="")

    class Meta:
        indexes = [
            models.Index(fields=("command",), name="run_command_idx"),
            models.Index(fields=("command", "created_at"), name="run_command_created_idx"),
        ]
        ordering = ["-created_at"]
