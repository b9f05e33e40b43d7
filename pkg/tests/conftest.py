import pathlib

import pytest

GOLDEN = pathlib.Path(__file__).parent / "golden"

_acceptance_lines = []


def pytest_addoption(parser):
    parser.addoption(
        "--update-golden",
        action="store_true",
        default=False,
        help="rewrite golden files instead of comparing against them",
    )


@pytest.fixture
def update_golden(request):
    return request.config.getoption("--update-golden")


@pytest.fixture
def acceptance_log():
    """Record one PASS/FAIL line per acceptance criterion."""

    def log(criterion, ok, detail=""):
        line = f"[{'PASS' if ok else 'FAIL'}] {criterion}: {detail}"
        _acceptance_lines.append(line)
        print(line)
        return ok

    return log


def pytest_terminal_summary(terminalreporter):
    if _acceptance_lines:
        terminalreporter.section("acceptance criteria")
        for line in _acceptance_lines:
            terminalreporter.write_line(line)


@pytest.fixture
def golden(update_golden):
    """Compare text against ``tests/golden/<name>``, or rewrite it with --update-golden."""

    def check(name, text):
        path = GOLDEN / name
        if update_golden:
            GOLDEN.mkdir(exist_ok=True)
            path.write_text(text, encoding="utf-8", newline="\n")
        assert path.exists(), f"missing golden file {name}; run pytest --update-golden"
        assert path.read_text(encoding="utf-8") == text, f"{name} differs from golden copy"

    return check
