"""
Pytest wiring that mirrors ``DJANGO_SETTINGS_MODULE=settings python -m
hakenkit test``: configure Django and create the test database.
"""

import os

import django

os.environ.setdefault('DJANGO_SETTINGS_MODULE', 'settings')
django.setup()


def pytest_sessionstart(session):
    """Set up the Django test environment and test databases."""
    from django.test.utils import setup_databases, setup_test_environment

    setup_test_environment()
    session.config._hakenkit_db = setup_databases(
        verbosity=0, interactive=False
    )


def pytest_sessionfinish(session, exitstatus):
    """Tear down the Django test databases and environment."""
    from django.test.utils import (
        teardown_databases,
        teardown_test_environment,
    )

    old_config = getattr(session.config, '_hakenkit_db', None)
    if old_config is not None:
        teardown_databases(old_config, verbosity=0)
        teardown_test_environment()
