import sys

import pytest


@pytest.fixture(scope="session")
def model43():
    from mirroralg.matfact import minimal_model
    return minimal_model(4, 3, r_max=1, arity=4)


@pytest.fixture(scope="session")
def type_check43(model43):
    from mirroralg.matfact import type_check_and_disk_potential
    return type_check_and_disk_potential(4, 3, model=model43)


def pytest_terminal_summary(terminalreporter):
    mod = sys.modules.get("test_acceptance") or sys.modules.get("tests.test_acceptance")
    if mod is None or not mod.RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for k in sorted(mod.RESULTS):
        terminalreporter.write_line(mod.RESULTS[k])
