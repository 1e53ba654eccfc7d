import os

import pytest
from hypothesis import settings

settings.register_profile("default", max_examples=60, deadline=None)
settings.load_profile(os.environ.get("HYPOTHESIS_PROFILE", "default"))

RANK2 = ("A2", "C2", "G2")
ALL_GROUPS = ("A2", "C2", "G2", "A3")


@pytest.fixture(params=RANK2)
def rank2(request):
    from cyclic_higgs import load
    return load(request.param)


def all_pass(entries):
    bad = [e for e in entries if e["status"] != "pass"]
    assert not bad, bad
    return True


# -- acceptance summary lines --------------------------------------------------

ACCEPTANCE: dict[int, tuple[str, str]] = {}


def record(criterion: int, ok: bool, detail: str) -> None:
    prev = ACCEPTANCE.get(criterion)
    if prev is not None:
        ok = ok and prev[0] == "PASS"
        detail = prev[1] + "; " + detail
    ACCEPTANCE[criterion] = ("PASS" if ok else "FAIL", detail)


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for k in sorted(ACCEPTANCE):
        status, detail = ACCEPTANCE[k]
        terminalreporter.write_line(f"criterion {k:2d}: {status}  {detail}")
