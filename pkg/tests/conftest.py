import pytest


@pytest.fixture
def criterion(request):
    """Collect sub-checks for one acceptance criterion and report a single verdict line."""
    lines = request.config.stash.setdefault(_KEY, {})

    class Criterion:
        def __init__(self):
            self.failures = []

        def check(self, name, ok, detail=""):
            if not ok:
                self.failures.append(f"{name} ({detail})" if detail else name)

        def finish(self, number, title):
            verdict = "PASS" if not self.failures else "FAIL"
            line = f"criterion {number} {verdict}: {title}"
            if self.failures:
                line += " | failed: " + "; ".join(self.failures)
            lines[number] = line
            print(line)
            assert not self.failures, line

    return Criterion()


_KEY = pytest.StashKey[dict]()


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    lines = config.stash.get(_KEY, {})
    if lines:
        terminalreporter.section("acceptance criteria")
        for n in sorted(lines):
            terminalreporter.write_line(lines[n])
