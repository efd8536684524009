import os
import sys
from collections import OrderedDict

from hypothesis import HealthCheck, settings

sys.path.insert(0, os.path.dirname(__file__))

settings.register_profile(
    "bhj",
    max_examples=200,
    deadline=None,
    suppress_health_check=[HealthCheck.too_slow, HealthCheck.filter_too_much],
)
settings.load_profile("bhj")

_CRITERIA: "OrderedDict[int, dict]" = OrderedDict()


def pytest_configure(config):
    config.addinivalue_line("markers", "criterion(n, title): acceptance criterion n")


def pytest_collection_modifyitems(session, config, items):
    for item in items:
        mark = item.get_closest_marker("criterion")
        if mark is not None:
            n, title = mark.args
            entry = _CRITERIA.setdefault(n, {"title": title, "failed": [], "ran": 0})
            entry["title"] = title


def pytest_runtest_logreport(report):
    if report.when != "call" and not (report.when == "setup" and report.outcome != "passed"):
        return
    for n, entry in _CRITERIA.items():
        if f"criterion_{n}_" in report.nodeid:
            entry["ran"] += 1
            if report.outcome != "passed":
                entry["failed"].append(report.nodeid.split("::")[-1])


def pytest_terminal_summary(terminalreporter):
    if not _CRITERIA:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(_CRITERIA):
        entry = _CRITERIA[n]
        if entry["ran"] == 0:
            status = "NOT RUN"
        elif entry["failed"]:
            status = "FAIL"
        else:
            status = "PASS"
        line = f"criterion {n}: {status}  {entry['title']}"
        if entry["failed"]:
            line += f"  ({', '.join(entry['failed'])})"
        terminalreporter.write_line(line)
