import importlib
import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from rlsheaf import _pykernels  # noqa: E402

FIXTURES = Path(__file__).parent / "fixtures"


def _backends():
    out = [pytest.param(_pykernels, id="python")]
    try:
        out.append(pytest.param(importlib.import_module("rlsheaf._ckernels"), id="cython"))
    except ImportError:
        out.append(pytest.param(None, id="cython", marks=pytest.mark.skip("extension not built")))
    return out


BACKENDS = _backends()


@pytest.fixture(params=BACKENDS)
def backend(request):
    return request.param


@pytest.fixture
def fixtures():
    return FIXTURES


def small_lattices(max_n=5):
    """Every generated lattice of size 2..max_n, used as a sample space for property tests."""
    from rlsheaf.explorer import enumerate_lattices

    return [g.lattice for n in range(2, max_n + 1) for g in enumerate_lattices(n)]


# criterion label -> (passed, detail); filled by test_acceptance.py
ACCEPTANCE: dict = {}


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for label in sorted(ACCEPTANCE):
        passed, detail = ACCEPTANCE[label]
        terminalreporter.write_line(f"{'PASS' if passed else 'FAIL'}  {label}: {detail}")
