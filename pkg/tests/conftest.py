import re
import sys
from pathlib import Path

import numpy as np
import pytest

sys.path.insert(0, str(Path(__file__).parent))

FIXTURES = Path(__file__).parent / "fixtures"


@pytest.fixture
def rng():
    return np.random.default_rng(20240611)


@pytest.fixture
def fixtures_dir():
    return FIXTURES


def pytest_terminal_summary(terminalreporter):
    lines = []
    for outcome in ("passed", "failed", "skipped"):
        for rep in terminalreporter.stats.get(outcome, []):
            props = dict(getattr(rep, "user_properties", ()))
            m = re.search(r"test_criterion_(\d+)_(\w+)", rep.nodeid)
            if m is None or (rep.when != "call" and outcome != "skipped"):
                continue
            # a skip happens before the test body can tag itself
            name = props.get("criterion", f"{int(m[1])} {m[2].replace('_', ' ')}")
            lines.append((name, outcome))
    if not lines:
        return
    terminalreporter.section("acceptance criteria")
    for name, outcome in sorted(lines, key=lambda t: int(t[0].split()[0])):
        tag = {"passed": "PASS", "failed": "FAIL", "skipped": "SKIP"}[outcome]
        terminalreporter.write_line(f"{tag}  criterion {name}")
