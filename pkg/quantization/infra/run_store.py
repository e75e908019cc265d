"""
Repository for recorded experiment runs.
"""
from __future__ import annotations

import hashlib
import logging
from uuid import UUID

from django.db import transaction

from quantization.infra.models import ExperimentRun
from quantization.infra.serialization import canonical_json

logger = logging.getLogger(__name__)

STATUS_BY_EXIT_CODE = {0: "OK", 1: "INPUT_ERROR", 2: "VERIFICATION_FAILED"}


def result_digest(result) -> str:
    """sha256 of the canonical JSON rendering."""
    return hashlib.sha256(canonical_json(result).encode("utf-8")).hexdigest()


class ExperimentRunRepository:
    """Repository for ExperimentRun records."""

    @transaction.atomic
    def record(self, command: str, parameters: dict, exit_code: int, result=None, summary: str = "") -> UUID:
        run = ExperimentRun.objects.create(
            command=command,
            parameters=parameters,
            status=STATUS_BY_EXIT_CODE.get(exit_code, "INPUT_ERROR"),
            exit_code=exit_code,
            result=result,
            result_digest=result_digest(result) if result is not None else "",
            summary=summary,
        )
        logger.info(
            "Experiment run recorded",
            extra={"operation": "record_run", "command": command, "status": run.status},
        )
        return run.id

    def get_by_id(self, run_id: UUID | str) -> ExperimentRun | None:
        return ExperimentRun.objects.filter(id=run_id).first()

    def latest_for(self, command: str) -> ExperimentRun | None:
        return ExperimentRun.objects.filter(command=command).order_by("-created_at").first()

    def list_for(self, command: str, limit: int = 50, offset: int = 0) -> list[ExperimentRun]:
        return list(ExperimentRun.objects.filter(command=command).order_by("-created_at")[offset:offset + limit])
