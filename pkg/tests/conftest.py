import pytest

# criterion number -> list of (clause, ok, detail), filled by test_acceptance
ACCEPTANCE = {}


def record(criterion: int, clause: str, ok: bool, detail: str = ''):
    ACCEPTANCE.setdefault(criterion, []).append((clause, bool(ok), detail))
    status = 'PASS' if ok else 'FAIL'
    print(f'criterion {criterion} [{clause}]: {status} {detail}'.rstrip())


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    tr = terminalreporter
    tr.section('acceptance criteria')
    for k in sorted(ACCEPTANCE):
        clauses = ACCEPTANCE[k]
        ok = all(c[1] for c in clauses)
        tr.write_line(f'criterion {k:2d}: {"PASS" if ok else "FAIL"}')
        for clause, c_ok, detail in clauses:
            if not c_ok or len(clauses) > 1:
                tr.write_line(f'    {"ok  " if c_ok else "FAIL"} {clause} {detail}'.rstrip())


@pytest.fixture
def rec():
    return record
