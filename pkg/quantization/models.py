"""
Expose ORM models for Django's auto-discovery while keeping real definitions
under the infrastructure module.
"""

from quantization.infra.models import ExperimentRun, TimeStampedModel  # noqa: F401
