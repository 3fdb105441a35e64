import os
from fractions import Fraction

import numpy as np
import pytest
from hypothesis import HealthCheck, settings, strategies as st

settings.register_profile("default", max_examples=60, deadline=None,
                          suppress_health_check=[HealthCheck.too_slow])
settings.register_profile("ci", max_examples=200, deadline=None,
                          suppress_health_check=[HealthCheck.too_slow])
settings.load_profile(os.environ.get("HYPOTHESIS_PROFILE", "default"))


def rational_alphas(lo=Fraction(1, 5), hi=Fraction(3)):
    """Rationals in [lo, hi] whose squares keep denominators small."""
    return st.builds(Fraction, st.integers(1, 60), st.integers(1, 20)).filter(
        lambda x: lo <= x <= hi)


float_alphas = st.floats(0.25, 3.0, allow_nan=False, allow_infinity=False)
class_strings = st.builds(lambda a, j: f"{a}{j:+d}", st.sampled_from(["L", "dD4", "R"]),
                          st.integers(-50, 50))


@pytest.fixture
def rng():
    return np.random.default_rng(20241019)


def pytest_terminal_summary(terminalreporter):
    import sys
    mod = sys.modules.get("test_acceptance")
    lines = getattr(mod, "RESULTS", None)
    if lines:
        terminalreporter.section("acceptance criteria")
        for line in sorted(lines, key=lambda l: int(l.split("criterion")[1].split(":")[0])):
            terminalreporter.write_line(line)
