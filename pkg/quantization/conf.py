"""
Access to the STAR_WORKBENCH settings dict with built-in defaults.
"""
from __future__ import annotations

from typing import Any

from django.conf import settings

DEFAULTS: dict[str, Any] = {
    "NUMERIC_POLE_TOLERANCE": 1e-12,
    "EXTENDED_PRECISION_DIGITS": 50,
    "POLE_SEARCH_CAP": 64,
    "BCH_DEFAULT_DEGREE": 8,
    "BCH_MAX_DEGREE": 12,
    "CONTOUR_RADIUS": 0.3,
    "CONTOUR_START_GRID": 8,
    "CONTOUR_TOLERANCE": 1e-8,
    "CONTOUR_MAX_DOUBLINGS": 16,
    "DISC_POLE_DEGREE_CAP": 4,
    "AE_RANDOM_BRACKETINGS": 100,
    "AE_EXHAUSTIVE_MAX_N": 4,
    "AE_RANDOM_MAX_N": 6,
    "DEMO_TAIL_TOLERANCE": 1e-6,
    "RECORD_RUNS": False,
}


def workbench_setting(name: str) -> Any:
    if name not in DEFAULTS:
        raise KeyError(f"Unknown workbench setting: {name}")
    overrides = getattr(settings, "STAR_WORKBENCH", {}) or {}
    return overrides.get(name, DEFAULTS[name])
