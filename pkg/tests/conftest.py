import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from bicomplex import iwasawa, point, projective_space, torus


@pytest.fixture(scope="session")
def iwasawa_model():
    return iwasawa()


@pytest.fixture(scope="session")
def torus1():
    return torus(1)


@pytest.fixture(scope="session")
def torus2():
    return torus(2)


@pytest.fixture(scope="session")
def torus3():
    return torus(3)


@pytest.fixture(scope="session")
def presets(iwasawa_model, torus1, torus2, torus3):
    return {
        "point": point(),
        "torus1": torus1,
        "torus2": torus2,
        "torus3": torus3,
        "iwasawa": iwasawa_model,
        "p1": projective_space(1),
        "p2": projective_space(2),
        "p3": projective_space(3),
    }


def pytest_runtest_logreport(report):
    """One visible pass/fail line per acceptance criterion."""
    if report.when != "call" or "test_acceptance" not in report.nodeid:
        return
    name = report.nodeid.split("::")[-1]
    outcome = "PASS" if report.passed else ("SKIP" if report.skipped else "FAIL")
    print(f"\n[acceptance] {name}: {outcome}", flush=True)
