from functools import lru_cache

import pytest

from loggas import spectral


@lru_cache(maxsize=None)
def spectrum(s, n_nodes="auto"):
    return spectral.build_spectrum(s, n_nodes)


def oracle(s, v=None, gamma=None):
    return spectral.oracle_logdet(spectrum(s), gamma=gamma, v=v).log_det


@pytest.fixture
def rel():
    def _rel(x, y):
        return abs(x - y) / max(abs(y), 1e-300)

    return _rel


# one summary line per acceptance criterion, filled in by test_acceptance.py
ACCEPTANCE: dict[str, tuple[bool, str]] = {}


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for key in sorted(ACCEPTANCE, key=lambda k: int(k[1:])):
        ok, detail = ACCEPTANCE[key]
        terminalreporter.write_line(f"{key:<4}{'PASS' if ok else 'FAIL'}  {detail}")
