import numpy as np
import pytest

from parendist import _kernels

_VERDICTS: list[str] = []


@pytest.fixture
def verdict():
    """Record one pass/fail line for an acceptance criterion."""

    def record(number: int, title: str, ok: bool, detail: str = ""):
        line = f"ACCEPTANCE {number:>2} {'PASS' if ok else 'FAIL'}  {title}"
        if detail:
            line += f"  ({detail})"
        print(line)
        _VERDICTS.append(line)
        return ok

    return record


def pytest_terminal_summary(terminalreporter):
    if _VERDICTS:
        terminalreporter.section("acceptance criteria")
        for line in sorted(_VERDICTS):
            terminalreporter.write_line(line)


@pytest.fixture(params=[m.BACKEND for m in _kernels.backends()])
def backend(request):
    mod = {m.BACKEND: m for m in _kernels.backends()}[request.param]
    saved = _kernels.active
    _kernels.active = mod
    yield mod
    _kernels.active = saved


@pytest.fixture
def rng():
    return np.random.default_rng(20240611)
