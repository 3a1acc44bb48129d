import pytest
from hypothesis import HealthCheck, settings

from divsets.lengths import ClassifyOptions, classify
from divsets.qbase import DivisibilityParams

settings.register_profile("default", deadline=None, suppress_health_check=[HealthCheck.too_slow])
settings.load_profile("default")

# acceptance lines, printed once at the end of the run
ACCEPTANCE: dict[str, list[tuple[bool, str]]] = {}


def record(criterion: str, ok: bool, detail: str = ""):
    ACCEPTANCE.setdefault(criterion, []).append((ok, detail))


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for crit in sorted(ACCEPTANCE, key=lambda c: int(c.split()[0])):
        rows = ACCEPTANCE[crit]
        ok = all(r[0] for r in rows)
        fails = [d for good, d in rows if not good]
        line = f"criterion {crit}: {'PASS' if ok else 'FAIL'}"
        if fails:
            line += " (" + "; ".join(fails) + ")"
        terminalreporter.write_line(line)


SMALL_CASES = [(2, 1), (2, 2), (2, 3), (3, 1), (4, 1), (5, 1), (3, 2), (7, 1)]


@pytest.fixture(scope="session")
def small_ledgers():
    return {qr: classify(DivisibilityParams(*qr)) for qr in SMALL_CASES}


@pytest.fixture(scope="session")
def reference_options():
    # Reference interval lists come from the computational criteria alone
    return ClassifyOptions(use_external=False)
