import os
from contextlib import contextmanager

import pytest

EXTENDED = os.environ.get("GTORIC_EXTENDED") == "1"

# (criterion, status, detail) lines reported at the end of the run
CRITERIA: list[tuple[str, str, str]] = []


@contextmanager
def criterion(label: str, title: str):
    """Record PASS/FAIL/SKIP for one acceptance criterion around a block."""
    detail = {"text": ""}
    try:
        yield detail
    except pytest.skip.Exception as e:
        CRITERIA.append((label, "SKIP", "%s: %s" % (title, e.msg)))
        raise
    except BaseException as e:
        CRITERIA.append((label, "FAIL", "%s: %s" % (title, str(e).splitlines()[0] if str(e) else type(e).__name__)))
        raise
    else:
        CRITERIA.append((label, "PASS", "%s%s" % (title, " (%s)" % detail["text"] if detail["text"] else "")))


def pytest_collection_modifyitems(config, items):
    if EXTENDED:
        return
    skip = pytest.mark.skip(reason="extended run; set GTORIC_EXTENDED=1")
    for item in items:
        if "extended" in item.keywords:
            item.add_marker(skip)


@pytest.hookimpl(tryfirst=True)
def pytest_runtest_setup(item):
    mark = item.get_closest_marker("criterion")
    if mark and "extended" in item.keywords and not EXTENDED:
        CRITERIA.append((mark.args[0], "SKIP", mark.args[1] + ": extended run; set GTORIC_EXTENDED=1"))


def pytest_terminal_summary(terminalreporter):
    if not CRITERIA:
        return
    terminalreporter.section("acceptance criteria")
    for label, status, detail in sorted(CRITERIA, key=lambda c: (int(c[0].rstrip("ab")), c[0])):
        terminalreporter.write_line("%-4s %s  %s" % (status, label, detail))
