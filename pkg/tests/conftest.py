import random
import sys
from collections import OrderedDict
from pathlib import Path

import pytest
from hypothesis import settings

from fuzzy_transport.document import example_path, load_problem

sys.path.insert(0, str(Path(__file__).parent))

settings.register_profile("default", deadline=None)
settings.load_profile("default")


@pytest.fixture(scope="session")
def example():
    problem, _ = load_problem(example_path())
    return problem


@pytest.fixture
def rng():
    return random.Random(20240611)


# -- acceptance summary -------------------------------------------------------
# Tests in test_acceptance.py tag themselves with a "criterion" property; the
# summary folds their outcomes into one line per criterion.

_acceptance: "OrderedDict[str, list[tuple[str, bool]]]" = OrderedDict()


def pytest_runtest_logreport(report):
    if report.when != "call" and not (report.when == "setup" and report.failed):
        return
    props = dict(report.user_properties)
    if "criterion" not in props:
        return
    _acceptance.setdefault(props["criterion"], []).append((props.get("check", report.nodeid), report.passed))


def pytest_terminal_summary(terminalreporter):
    if not _acceptance:
        return
    tr = terminalreporter
    tr.section("acceptance criteria")
    for criterion in sorted(_acceptance, key=lambda c: int(c.split(".")[0])):
        checks = _acceptance[criterion]
        failed = [name for name, ok in checks if not ok]
        status = "FAIL" if failed else "PASS"
        line = f"{status}  {criterion}  ({len(checks) - len(failed)}/{len(checks)} checks)"
        if failed:
            line += "  failing: " + ", ".join(failed)
        tr.write_line(line)
