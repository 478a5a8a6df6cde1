import importlib
from pathlib import Path

import pytest

from sysbath.specfun import core

DATA = Path(__file__).parent / "data"

# acceptance summary lines, keyed by (criterion, variant)
ACCEPTANCE: dict = {}


def _backends():
    out = [pytest.param("python", id="python")]
    try:
        importlib.import_module("sysbath.specfun._ckernels")
    except ImportError:
        out.append(pytest.param("cython", id="cython",
                                marks=pytest.mark.skip(reason="compiled kernel not built")))
    else:
        out.append(pytest.param("cython", id="cython"))
    return out


@pytest.fixture(params=_backends())
def backend(request, monkeypatch):
    """Route the public special-function API through one kernel implementation."""
    name = "sysbath.specfun._pykernels" if request.param == "python" else "sysbath.specfun._ckernels"
    monkeypatch.setattr(core, "_kern", importlib.import_module(name))
    return request.param


def load_oracle_grid():
    rows = []
    for line in (DATA / "specfun_oracle.txt").read_text().splitlines():
        if not line.strip() or line.startswith("#"):
            continue
        kind, m, zr, zi, vr, vi = line.split()
        rows.append((kind, int(m), complex(float(zr), float(zi)), complex(float(vr), float(vi))))
    return rows


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for key in sorted(ACCEPTANCE):
        terminalreporter.write_line(ACCEPTANCE[key])
