import math
from collections import OrderedDict

import numpy as np
import pytest

from cuspgauge.lattice import CuspLattice, maximality_failures

SQRT3 = math.sqrt(3.0)

_criteria: "OrderedDict[int, dict]" = OrderedDict()


def random_admissible_lattice(rng: np.random.Generator, max_area: float = 12.0, unreduce: bool = True) -> CuspLattice:
    """A lattice with shortest vector >= 1 and area >= sqrt(3), optionally in a skewed basis."""
    while True:
        theta = rng.uniform(0, 2 * math.pi)
        r1 = rng.uniform(1.0, 2.5)
        v1 = np.array([r1 * math.cos(theta), r1 * math.sin(theta)])
        area = rng.uniform(SQRT3, max_area)
        shift = rng.uniform(-0.5, 0.5) * r1
        height = area / r1
        u = v1 / r1
        n = np.array([-u[1], u[0]])
        v2 = shift * u + height * n
        if unreduce:
            a, b = rng.integers(-3, 4, size=2)
            v1, v2 = v1, v2 + int(a) * v1
            v1, v2 = v1 + int(b) * v2, v2
        lat = CuspLattice.from_lists(tuple(v1), tuple(v2), False)
        if not maximality_failures(lat):
            return CuspLattice.from_lists(tuple(v1), tuple(v2), True)


@pytest.fixture
def rng():
    return np.random.default_rng(20240611)


def pytest_configure(config):
    config.addinivalue_line("markers", "criterion(number, title): acceptance criterion covered by this test")


def pytest_collection_modifyitems(items):
    for item in items:
        mark = item.get_closest_marker("criterion")
        if mark is not None:
            number, title = mark.args
            _criteria.setdefault(number, {"title": title, "outcomes": []})
            item.user_properties.append(("criterion", number))


def pytest_runtest_logreport(report):
    numbers = [v for k, v in report.user_properties if k == "criterion"]
    if not numbers:
        return
    if report.when == "call" or report.outcome != "passed":
        for n in numbers:
            _criteria[n]["outcomes"].append(report.outcome)


def pytest_terminal_summary(terminalreporter):
    if not _criteria:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(_criteria):
        entry = _criteria[number]
        outcomes = entry["outcomes"]
        ok = bool(outcomes) and all(o == "passed" for o in outcomes)
        status = "PASS" if ok else ("NOT RUN" if not outcomes else "FAIL")
        terminalreporter.write_line(f"{status:7s} criterion {number:2d}: {entry['title']}")
