"""Per-criterion pass/fail summary for the acceptance suite."""
from collections import defaultdict

_titles: dict[int, str] = {}
_by_node: dict[str, int] = {}
_failed: dict[int, list[str]] = defaultdict(list)
_seen: dict[int, int] = defaultdict(int)


def pytest_collection_modifyitems(items):
    for item in items:
        mark = item.get_closest_marker("criterion")
        if mark is not None:
            number, title = mark.args
            _titles[number] = title
            _by_node[item.nodeid] = number


def pytest_runtest_logreport(report):
    number = _by_node.get(report.nodeid)
    if number is None:
        return
    if report.when == "call" or report.failed:
        _seen[number] += 1
    if report.failed:
        _failed[number].append(report.nodeid.split("::")[-1])


def pytest_terminal_summary(terminalreporter):
    if not _titles:
        return
    tr = terminalreporter
    tr.section("acceptance criteria")
    for number in sorted(_titles):
        if not _seen[number]:
            status = "NOT RUN"
        elif _failed[number]:
            status = "FAIL"
        else:
            status = "PASS"
        line = f"criterion {number:>2}  {status:<7}  {_titles[number]}"
        if _failed[number]:
            line += f"  [failed: {', '.join(_failed[number])}]"
        tr.write_line(line)
