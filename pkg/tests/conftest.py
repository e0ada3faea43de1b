import pytest

from quotapower import embedded_imf_dataset, run_sweep
from quotapower.sweep import quota_range

_CRITERIA = []


def record_criterion(number, ok, detail):
    _CRITERIA.append((number, ok, detail))


def pytest_terminal_summary(terminalreporter):
    if not _CRITERIA:
        return
    terminalreporter.section("acceptance criteria")
    for number, ok, detail in sorted(_CRITERIA, key=lambda c: c[0]):
        terminalreporter.write_line(f"[{'PASS' if ok else 'FAIL'}] criterion {number}: {detail}")


@pytest.fixture(scope="session")
def imf_table():
    return embedded_imf_dataset()


@pytest.fixture(scope="session")
def imf_body(imf_table):
    return imf_table.to_body()


@pytest.fixture(scope="session")
def imf_counts(imf_body):
    from quotapower import build_count_vector

    return build_count_vector(imf_body)


@pytest.fixture(scope="session")
def imf_sweep(imf_body, imf_counts):
    """Rows for quotas 50..87 with per-member profiles, keyed by integer quota."""
    rows = run_sweep(imf_body, quota_range(50, 87), include_profiles=True, counts=imf_counts)
    return {int(r.quota_percent): r for r in rows}
