import json
import sys
from fractions import Fraction
from pathlib import Path

import pytest

DATA = Path(__file__).parent / "data"


@pytest.fixture(scope="session")
def oracle_rows():
    """Frozen brute-force values (see tools/freeze_oracle.py)."""
    d = json.loads((DATA / "oracle_mu.json").read_text(encoding="utf-8"))
    return [{**r, "alpha": tuple(r["alpha"]), "mu": Fraction(r["mu"])} for r in d["rows"]]


def pytest_terminal_summary(terminalreporter):
    mod = sys.modules.get("test_acceptance")
    if mod is not None and mod.RESULTS:
        terminalreporter.section("acceptance criteria")
        for line in mod.summary_lines():
            terminalreporter.write_line(line)
