import numpy as np
import pytest

from smoothtract.funcspace import registry

EPS_GRID = [2.0**-j for j in range(2, 7)]


def certified(d, kind, tag, c_max=None):
    """Registry members carrying a ``tag`` certificate (optionally with growth ``<= c_max``)."""
    out = []
    for f in registry(d, kind):
        cert = f.certificate(tag)
        if cert is not None and (c_max is None or cert.c <= c_max):
            out.append(f)
    return out


@pytest.fixture
def rng():
    return np.random.default_rng(20240611)


# one (number, title, passed, detail) entry per acceptance criterion, in run order
ACCEPTANCE = []


def record_acceptance(number, title, passed, detail=""):
    line = f"ACCEPTANCE {number:>2} {'PASS' if passed else 'FAIL'}  {title}" + (f"  [{detail}]" if detail else "")
    ACCEPTANCE.append((number, line))
    print(line)
    return passed


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE:
        terminalreporter.section("acceptance criteria")
        for _, line in sorted(ACCEPTANCE):
            terminalreporter.write_line(line)
