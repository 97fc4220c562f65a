import os
import sys

import pytest
from hypothesis import settings

sys.path.insert(0, os.path.dirname(__file__))

settings.register_profile("default", max_examples=60, deadline=None)
settings.load_profile("default")

THEORIES = os.path.join(os.path.dirname(__file__), "..", "theories")

CRITERIA = {
    1: "functor laws",
    2: "projection compatibility",
    3: "joint monicity",
    4: "C-system axioms A1-A8",
    5: "round trip",
    6: "homomorphism compatibility",
    7: "model oracle",
    8: "generated subsystem",
    9: "mutation sensitivity",
}

_outcomes: dict[int, list[str]] = {}


def theory_path(name):
    return os.path.join(THEORIES, name)


@pytest.fixture(scope="session")
def magma():
    from lawvere_cs import parse_theory

    with open(theory_path("magma.th")) as fh:
        return parse_theory(fh.read())


@pytest.fixture(scope="session")
def monoid():
    from lawvere_cs import parse_theory

    with open(theory_path("monoid.th")) as fh:
        return parse_theory(fh.read())


def pytest_runtest_makereport(item, call):
    marker = item.get_closest_marker("criterion")
    if marker is None or call.when != "call":
        return
    n = marker.args[0]
    _outcomes.setdefault(n, []).append("fail" if call.excinfo is not None else "pass")


def pytest_terminal_summary(terminalreporter):
    if not _outcomes:
        return
    terminalreporter.section("acceptance criteria")
    for n, title in CRITERIA.items():
        results = _outcomes.get(n)
        if not results:
            status = "NOT RUN"
        else:
            status = "PASS" if all(r == "pass" for r in results) else "FAIL"
        terminalreporter.write_line(f"criterion {n} ({title}): {status}")
