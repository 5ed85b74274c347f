import re

import pytest

from ppcodes import fixtures, hilbert, kernels, toric
from ppcodes.field import field_build

BACKENDS = ["numpy"] + (["numba"] if kernels.HAVE_NUMBA else [])


@pytest.fixture(params=BACKENDS)
def backend(request):
    return request.param


class Example:
    def __init__(self, name):
        self.name = name
        self.ref = fixtures.REFERENCE[name]
        self.code = fixtures.load_example(name)
        self.A = self.code.matrix
        self.F = field_build(self.code.q)
        self.B = toric.reduce_matrix(self.A, self.F)
        self._X = None
        self._profile = None

    @property
    def X(self):
        if self._X is None:
            self._X = toric.enumerate_X(self.A, self.F)
        return self._X

    @property
    def profile(self):
        if self._profile is None:
            self._profile = hilbert.hilbert_profile(self.X, len(self.ref["H_X"]))
        return self._profile


@pytest.fixture(scope="session")
def examples():
    return {name: Example(name) for name in fixtures.REFERENCE}


def pytest_terminal_summary(terminalreporter):
    """One line per acceptance criterion, in criterion order."""
    lines = {}
    for outcome in ("passed", "failed", "error"):
        for rep in terminalreporter.stats.get(outcome, []):
            m = re.search(r"test_acceptance\.py::test_criterion_(\d+)_(\w+)", rep.nodeid)
            if m and rep.when in ("call", "setup"):
                status = "PASS" if outcome == "passed" else "FAIL"
                if lines.get(int(m.group(1)), ("PASS",))[0] == "PASS":
                    lines[int(m.group(1))] = (status, m.group(2).replace("_", " "))
    if lines:
        terminalreporter.section("acceptance criteria")
        for k in sorted(lines):
            status, name = lines[k]
            terminalreporter.write_line(f"criterion {k} ({name}): {status}")
