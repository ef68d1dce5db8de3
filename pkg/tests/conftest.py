import math
import sys
from pathlib import Path

import numpy as np
import pytest

sys.path.insert(0, str(Path(__file__).parent))

from l2plan import kernels  # noqa: E402
from l2plan.core import Query  # noqa: E402


@pytest.fixture(scope="session", autouse=True)
def _compiled():
    kernels.warmup()


def disk(rng, r):
    """Uniform sample from the disk of radius r."""
    while True:
        x = rng.uniform(-r, r, 2)
        if x @ x <= r * r:
            return x


def random_query(rng, mode, radius_p=2.0, radius_v=1.0, a_m=1.0, v_m=1.0):
    vG = disk(rng, radius_v) * v_m if mode == "vector" else mode
    return Query.make(disk(rng, radius_p), disk(rng, radius_v) * v_m, disk(rng, radius_p), vG, a_m, v_m)


def rel(a, b):
    return abs(a - b) / max(1.0, abs(b))


def rotate(v, ang):
    c, s = math.cos(ang), math.sin(ang)
    v = np.asarray(v, float)
    return np.array([c * v[0] - s * v[1], s * v[0] + c * v[1]])


def pytest_terminal_summary(terminalreporter):
    mod = sys.modules.get("test_acceptance")
    if mod is None or not mod.RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for k in sorted(mod.RESULTS):
        terminalreporter.write_line(mod.RESULTS[k])
