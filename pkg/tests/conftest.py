import numpy as np
import pytest
from hypothesis import HealthCheck, settings

from jdcvi.core import MembershipMatrix

settings.register_profile(
    "default", max_examples=60, deadline=None, suppress_health_check=[HealthCheck.too_slow]
)
settings.load_profile("default")


def random_membership(rng, k, n, d=2):
    u = rng.random((k, n)) ** 3 + 1e-12
    u /= u.sum(axis=0)
    return MembershipMatrix(u, rng.normal(size=(k, d)))


@pytest.fixture
def rng():
    return np.random.default_rng(12345)


def pytest_terminal_summary(terminalreporter):
    lines = []
    for key in ("passed", "failed", "error"):
        for report in terminalreporter.stats.get(key, []):
            if report.when != "call":
                continue
            lines.extend(v for k, v in getattr(report, "user_properties", []) if k == "acceptance")
    if lines:
        terminalreporter.section("acceptance criteria")
        for line in sorted(lines, key=lambda s: int(s.split()[1].lstrip("C").rstrip(":"))):
            terminalreporter.write_line(line)
