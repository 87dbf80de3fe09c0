CRITERIA = {
    1: "quadrature golden values",
    2: "metric axioms on the catalog",
    3: "scaled-pair identity",
    4: "affine majorant and diameter bound",
    5: "density-level classification and ideal property",
    6: "power-root sequence convergence",
    7: "hierarchy sequence convergence",
    8: "fixed-point uniqueness",
    9: "positive-slope three-way equivalence",
    10: "L^p sandwich bounds",
    11: "tail and norm identities",
    12: "order counterexample regression",
}

_outcomes: dict[int, list[bool]] = {}


def pytest_configure(config):
    config.addinivalue_line("markers", "criterion(n): acceptance criterion number")


def pytest_collection_modifyitems(items):
    for item in items:
        m = item.get_closest_marker("criterion")
        if m is not None:
            item.user_properties.append(("criterion", m.args[0]))


def pytest_runtest_logreport(report):
    crit = dict(report.user_properties).get("criterion")
    if crit is None:
        return
    if report.when == "call" or (report.when == "setup" and report.outcome != "passed"):
        _outcomes.setdefault(crit, []).append(report.outcome == "passed")


def pytest_terminal_summary(terminalreporter):
    if not _outcomes:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(CRITERIA):
        results = _outcomes.get(n)
        if results is None:
            status = "NOT RUN"
        else:
            status = "PASS" if all(results) else "FAIL"
        terminalreporter.write_line(f"criterion {n:2d} {status:7s} {CRITERIA[n]}")
