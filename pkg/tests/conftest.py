"""Shared fixtures: the default code design is expensive enough to build once."""

import pytest

from plhsim import DefaultDesign, default_design


@pytest.fixture(scope="session")
def design() -> DefaultDesign:
    return default_design()
