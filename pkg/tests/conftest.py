import pytest

from defsieve.newform import builtin_newform
from defsieve.qseries import LEVEL_ONE_WEIGHTS


@pytest.fixture(autouse=True)
def _isolated_cache(tmp_path, monkeypatch):
    monkeypatch.setenv("DEFSIEVE_CACHE_DIR", str(tmp_path / "qcache"))


_FORMS = {}


def builtin(k, bound=2000):
    key = (k, bound)
    if key not in _FORMS:
        _FORMS[key] = builtin_newform(k, bound)
    return _FORMS[key]


@pytest.fixture(scope="session")
def delta_data():
    return builtin(12)


@pytest.fixture(scope="session", params=LEVEL_ONE_WEIGHTS)
def level_one(request):
    return builtin(request.param)


ACCEPTANCE_RESULTS = []


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE_RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for line in sorted(ACCEPTANCE_RESULTS):
        terminalreporter.write_line(line)
