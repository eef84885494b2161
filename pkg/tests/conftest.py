import mpmath
import pytest
from hypothesis import settings

settings.register_profile("default", max_examples=40, deadline=None, derandomize=True)
settings.load_profile("default")

mpmath.mp.dps = 30

ACCEPTANCE = pytest.StashKey[dict]()


def pytest_configure(config):
    config.stash[ACCEPTANCE] = {}


@pytest.fixture
def criterion(request):
    """Record one acceptance line: criterion(n, title, budget_s) returns a recorder."""
    lines = request.config.stash[ACCEPTANCE]

    def start(n, title, budget):
        return _Line(lines, n, title, budget)

    return start


class _Line:
    def __init__(self, lines, n, title, budget):
        import time
        self.lines, self.n, self.title, self.budget = lines, n, title, budget
        self.t0 = time.perf_counter()
        self.worst = 0.0
        self.failures = []
        lines[n] = (title, None, "")

    def check(self, label, residual, tol):
        residual = float(residual)
        self.worst = max(self.worst, residual)
        if not residual <= tol:
            self.failures.append(f"{label}: {residual:.3g} > {tol:.3g}")

    def finish(self):
        import time
        dt = time.perf_counter() - self.t0
        if dt > self.budget:
            self.failures.append(f"runtime {dt:.1f} s > {self.budget} s")
        ok = not self.failures
        detail = f"worst residual {self.worst:.3g}, {dt:.2f} s"
        if self.failures:
            detail += "; " + "; ".join(self.failures)
        self.lines[self.n] = (self.title, ok, detail)
        assert ok, detail


def pytest_terminal_summary(terminalreporter, config):
    lines = config.stash.get(ACCEPTANCE, {})
    if not lines:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(lines):
        title, ok, detail = lines[n]
        tag = "PASS" if ok else ("FAIL" if ok is False else "ERROR")
        terminalreporter.write_line(f"[{tag}] {n:2d}. {title}: {detail}")
