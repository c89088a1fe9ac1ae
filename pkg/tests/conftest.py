from __future__ import annotations

from pathlib import Path

import pytest

from skewmorita.instance import load_instance_file
from skewmorita.morita import build_qg
from skewmorita.selftest import fixture_dir

FIXTURES = sorted(p.stem for p in fixture_dir().glob("*.json"))
DATA = Path(__file__).parent / "data"

_cache: dict = {}


def load(name):
    """(instance, reduced quiver) for a bundled fixture, built once per session."""
    if name not in _cache:
        inst = load_instance_file(fixture_dir() / f"{name}.json")
        _cache[name] = (inst, build_qg(inst))
    return _cache[name]


@pytest.fixture(params=FIXTURES)
def fixture_pair(request):
    return load(request.param)


@pytest.fixture
def d10():
    return load("d10")


# -- acceptance summary ----------------------------------------------------

ACCEPTANCE: dict = {}


def record(criterion: int, ok: bool, detail: str = "") -> None:
    ACCEPTANCE[criterion] = (ok, detail)
    print(f"criterion {criterion}: {'PASS' if ok else 'FAIL'} {detail}".rstrip())


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for k in sorted(ACCEPTANCE):
        ok, detail = ACCEPTANCE[k]
        terminalreporter.write_line(f"criterion {k}: {'PASS' if ok else 'FAIL'} {detail}".rstrip())
