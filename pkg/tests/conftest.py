import re

import numpy as np
import pytest

from fregier.conic import rank_classify
from fregier.errors import FregierError
from fregier.metric import normal_line

_CRITERION = re.compile(r"test_acceptance\.py::test_criterion_(\d+)_(\w+)")
_results: dict[int, tuple[str, str]] = {}


def pytest_runtest_logreport(report):
    m = _CRITERION.search(report.nodeid)
    if not m:
        return
    n, name = int(m.group(1)), m.group(2).replace("_", " ")
    if report.when == "call" or report.outcome != "passed":
        prev = _results.get(n, (None, "PASS"))[1]
        status = "PASS" if report.outcome == "passed" and prev == "PASS" else "FAIL"
        _results[n] = (name, status)


def pytest_terminal_summary(terminalreporter):
    if not _results:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(_results):
        name, status = _results[n]
        terminalreporter.write_line(f"criterion {n:2d} {status}  {name}")


def random_conic_through(rng, g, p=None):
    """A well-conditioned regular conic through a random finite point."""
    while True:
        q = np.array([1.0, *rng.uniform(-1, 1, 2)]) if p is None else np.asarray(p, float)
        a = rng.normal(size=(3, 3))
        m = a + a.T
        m = m - (q @ m @ q) / (q @ q) ** 2 * np.outer(q, q)
        s = np.linalg.svd(m, compute_uv=False)
        if rank_classify(m).rank < 3 or s[-1] < 1e-2 * s[0]:
            continue
        try:
            normal_line(g, m, q)
        except FregierError:
            continue
        return m, q


@pytest.fixture
def rng():
    return np.random.default_rng(12345)
