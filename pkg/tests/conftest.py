import helpers


def pytest_terminal_summary(terminalreporter):
    if not helpers.RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for line in helpers.summary_lines():
        terminalreporter.write_line(line)
