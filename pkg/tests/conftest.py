import re
import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from pamc import corpus  # noqa: E402
from pamc.checker import check, explore_spec, load_formula, load_spec  # noqa: E402

_CRITERIA = {}


class CorpusRun:
    """Every corpus check, computed once per session."""

    def __init__(self):
        self.specs, self.lts, self.results, self.formulas = {}, {}, {}, {}
        for entry in corpus.ENTRIES:
            spec = load_spec(corpus.model_text(entry.model), f"{entry.model}.pmx")
            lts = explore_spec(spec)
            self.specs[entry.model], self.lts[entry.model] = spec, lts
            for exp in entry.checks:
                f = load_formula(corpus.property_text(exp.prop), spec, f"{exp.prop}.mcf",
                                 dict(exp.consts))
                self.formulas[entry.model, exp.name] = f
                self.results[entry.model, exp.name] = check(spec, f, lts=lts)

    def __getitem__(self, key):
        return self.results[key]


@pytest.fixture(scope="session")
def runs():
    return CorpusRun()


def pytest_runtest_logreport(report):
    m = re.search(r"test_acceptance\.py::test_criterion_(\d+)", report.nodeid)
    if not m:
        return
    n = int(m.group(1))
    if report.when == "call" or report.outcome != "passed":
        ok = report.outcome == "passed" and _CRITERIA.get(n, True)
        _CRITERIA[n] = ok


def pytest_terminal_summary(terminalreporter):
    if not _CRITERIA:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(_CRITERIA):
        terminalreporter.write_line(f"criterion {n}: {'PASS' if _CRITERIA[n] else 'FAIL'}")
