"""Bundled models and properties, with the verdicts they are expected to give."""
from __future__ import annotations

from dataclasses import dataclass, field
from importlib import resources


@dataclass(frozen=True)
class Expectation:
    prop: str                     # property file stem
    verdict: str                  # "holds" or "fails"
    evidence: str | None = None   # "trace", "lasso" or None
    consts: tuple = ()            # ((name, value), ...)

    @property
    def name(self) -> str:
        suffix = "".join(f"_{k}{v}" for k, v in self.consts)
        return self.prop + suffix


@dataclass(frozen=True)
class CorpusEntry:
    model: str                    # model file stem
    checks: tuple = field(default=())


_FOUR = ("mutual_exclusion", "always_eventually_request_wish", "eventual_access",
         "eventual_access_fair")

ENTRIES = (
    CorpusEntry("mutex_naive", (
        Expectation("mutual_exclusion", "fails", "trace"),
    )),
    CorpusEntry("mutex_improved", (
        Expectation("mutual_exclusion", "holds"),
        Expectation("always_eventually_request", "fails", "trace"),
    )),
    CorpusEntry("dekker", (
        Expectation("mutual_exclusion", "holds"),
        Expectation("always_eventually_request_wish", "holds"),
        Expectation("eventual_access", "fails", "lasso"),
        Expectation("eventual_access_fair", "fails", "lasso"),
    )),
    CorpusEntry("peterson", tuple(Expectation(p, "holds") for p in _FOUR) + (
        Expectation("bounded_overtaking", "fails", "trace", (("B", 1),)),
        Expectation("bounded_overtaking", "holds", None, (("B", 2),)),
        Expectation("request_without_cooperation", "holds"),
    )),
    CorpusEntry("peterson_bad_init", tuple(Expectation(p, "holds") for p in _FOUR) + (
        Expectation("bounded_overtaking", "holds", None, (("B", 2),)),
        Expectation("request_without_cooperation", "fails", "trace"),
    )),
    CorpusEntry("adder", (
        Expectation("adder_bounded_total", "fails", "trace", (("M", 3),)),
        Expectation("adder_bounded_total", "holds", None, (("M", 4),)),
    )),
)


def _root():
    return resources.files(__name__)


def model_path(name: str):
    return _root() / "models" / f"{name}.pmx"


def property_path(name: str):
    return _root() / "properties" / f"{name}.mcf"


def model_text(name: str) -> str:
    return model_path(name).read_text(encoding="utf-8")


def property_text(name: str) -> str:
    return property_path(name).read_text(encoding="utf-8")


def model_names() -> list[str]:
    return sorted(p.name[:-4] for p in (_root() / "models").iterdir() if p.name.endswith(".pmx"))


def property_names() -> list[str]:
    return sorted(p.name[:-4] for p in (_root() / "properties").iterdir()
                  if p.name.endswith(".mcf"))
