from __future__ import annotations

from collections import OrderedDict

import pytest

from dessins.golden import load_set
from dessins.perm import parse_cycles


def pytest_configure(config):
    config.addinivalue_line("markers", "criterion(n, title): acceptance criterion n")
    config._criteria = OrderedDict()


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    rep = outcome.get_result()
    m = item.get_closest_marker("criterion")
    if m is None or rep.when != "call" and not (rep.when == "setup" and rep.failed):
        return
    n, title = m.args
    entry = item.config._criteria.setdefault(n, {"title": title, "failed": [], "passed": []})
    (entry["failed"] if rep.failed else entry["passed"]).append(item.name)


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    crit = getattr(config, "_criteria", None)
    if not crit:
        return
    tr = terminalreporter
    tr.section("acceptance criteria")
    for n in sorted(crit):
        e = crit[n]
        status = "FAIL" if e["failed"] else "PASS"
        line = f"criterion {n:2d} {status}  {e['title']}"
        if e["failed"]:
            line += f"  [failing: {', '.join(e['failed'])}]"
        tr.write_line(line)


@pytest.fixture(scope="session")
def klein():
    """The six reference Klein trees M1..M6, keyed by label."""
    return {d.label: d for d in load_set("klein11")}


@pytest.fixture(scope="session")
def m11_gens():
    return [parse_cycles("(1,2,3,4,5,6,7,8,9,10,11)", 11), parse_cycles("(3,7,11,8)(4,10,5,6)", 11)]
