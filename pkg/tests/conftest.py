"""Shared fixtures for the test suite."""

import pytest

import koopid


@pytest.fixture
def grid():
    return koopid.Grid1D(-1.0, 1.0, 64)
