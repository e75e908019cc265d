"""
Pytest configuration for Django tests.
"""
import os

import django
from hypothesis import HealthCheck, settings

# Set the Django settings module
os.environ.setdefault('DJANGO_SETTINGS_MODULE', 'star_workbench.settings')

# Configure Django
django.setup()

settings.register_profile(
    'default',
    max_examples=15,
    deadline=None,
    suppress_health_check=[HealthCheck.too_slow],
)
settings.register_profile(
    'thorough',
    max_examples=200,
    deadline=None,
    suppress_health_check=[HealthCheck.too_slow],
)
settings.load_profile(os.environ.get('HYPOTHESIS_PROFILE', 'default'))
