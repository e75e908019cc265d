"""
Django settings for the star_workbench project.

The project has no URL surface; it hosts the `workbench` management command and
the experiment-run store.
"""

import os
from pathlib import Path

# Build paths inside the project like this: BASE_DIR / 'subdir'.
BASE_DIR = Path(__file__).resolve().parent.parent


# SECURITY WARNING: keep the secret key used in production secret!
SECRET_KEY = os.environ.get('STAR_WORKBENCH_SECRET_KEY', 'django-insecure-star-workbench-local-only')

DEBUG = False

ALLOWED_HOSTS = []


# Application definition

INSTALLED_APPS = [
    'django.contrib.contenttypes',
    'quantization',
]

MIDDLEWARE = []


# Database
# https://docs.djangoproject.com/en/5.2/ref/settings/#databases

DATABASES = {
    'default': {
        'ENGINE': 'django.db.backends.sqlite3',
        'NAME': os.environ.get('STAR_WORKBENCH_DB', str(BASE_DIR / 'db.sqlite3')),
    }
}


# Internationalization
# https://docs.djangoproject.com/en/5.2/topics/i18n/

LANGUAGE_CODE = 'en-us'

TIME_ZONE = 'UTC'

USE_I18N = False

USE_TZ = True


# Default primary key field type
# https://docs.djangoproject.com/en/5.2/ref/settings/#default-auto-field

DEFAULT_AUTO_FIELD = 'django.db.models.BigAutoField'


# Engine tunables, read through quantization.conf.workbench_setting

STAR_WORKBENCH = {
    'NUMERIC_POLE_TOLERANCE': 1e-12,
    'EXTENDED_PRECISION_DIGITS': 50,
    'POLE_SEARCH_CAP': 64,
    'BCH_DEFAULT_DEGREE': 8,
    'BCH_MAX_DEGREE': 12,
    'CONTOUR_RADIUS': 0.3,
    'CONTOUR_START_GRID': 8,
    'CONTOUR_TOLERANCE': 1e-8,
    'CONTOUR_MAX_DOUBLINGS': 16,
    'DISC_POLE_DEGREE_CAP': 4,
    'AE_RANDOM_BRACKETINGS': 100,
    'AE_EXHAUSTIVE_MAX_N': 4,
    'AE_RANDOM_MAX_N': 6,
    'DEMO_TAIL_TOLERANCE': 1e-6,
    'RECORD_RUNS': os.environ.get('STAR_WORKBENCH_RECORD_RUNS', '') == '1',
}


# Logging

LOGGING = {
    'version': 1,
    'disable_existing_loggers': False,
    'formatters': {
        'json': {
            '()': 'quantization.utils.logging.JsonFormatter',
        },
        'verbose': {
            'format': '{levelname} {asctime} {module} {message}',
            'style': '{',
        },
    },
    'handlers': {
        'console': {
            'class': 'logging.StreamHandler',
            'formatter': 'json',
        },
    },
    'root': {
        'handlers': ['console'],
        'level': 'WARNING',
    },
    'loggers': {
        'quantization': {
            'handlers': ['console'],
            'level': os.environ.get('STAR_WORKBENCH_LOG_LEVEL', 'INFO'),
            'propagate': False,
        },
        'django': {
            'handlers': ['console'],
            'level': 'WARNING',
            'propagate': False,
        },
    },
}
