import os

import hypothesis
import pytest

from hecke_identity.algebra.cyclotomic import exact_ceiling, set_exact_ceiling

hypothesis.settings.register_profile("fast", max_examples=25, deadline=None)
hypothesis.settings.register_profile("thorough", max_examples=500, deadline=None)
hypothesis.settings.register_profile("debugger", report_multiple_bugs=False)
hypothesis.settings.load_profile(os.environ.get("HYPOTHESIS_PROFILE", "fast"))


@pytest.fixture
def restore_ceiling():
    """Put the cyclotomic ceiling back after a test lowers it"""
    saved = exact_ceiling()
    yield
    set_exact_ceiling(saved)
