"""End-to-end checking: model + formula -> verdict and evidence."""
from __future__ import annotations

from dataclasses import dataclass, field
from pathlib import Path

from . import ast as A
from .data import QuantConfig
from .errors import NoEvidence
from .evidence import Evidence, extract
from .game import VERIFIER, ParityGame, Solution, solve
from .logic import instantiate, is_existential, normalize
from .lts import Lts, explore
from .parser import parse_formula, parse_spec
from .semantics import Semantics, SemanticsConfig
from .typecheck import typecheck_formula, typecheck_spec
from .unparse import unparse


@dataclass(frozen=True)
class RunConfig:
    quant_bound: int = 1
    state_limit: int = 1_000_000
    instantiation_limit: int = 10_000_000
    unfold_limit: int = 1_000

    def __post_init__(self):
        for name in ("state_limit", "instantiation_limit", "unfold_limit"):
            if getattr(self, name) <= 0:
                raise ValueError(f"{name} must be positive")
        if self.quant_bound < 0:
            raise ValueError("quant_bound must be non-negative")

    @property
    def quant(self) -> QuantConfig:
        return QuantConfig(self.quant_bound)

    @property
    def semantics(self) -> SemanticsConfig:
        return SemanticsConfig(self.quant, self.unfold_limit)


@dataclass
class CheckResult:
    holds: bool
    formula: A.StateFormula           # normalized
    lts: Lts
    game: ParityGame
    solution: Solution
    evidence: Evidence | None = None
    note: str = ""
    extra: dict = field(default_factory=dict)

    @property
    def verdict(self) -> str:
        return "holds" if self.holds else "fails"


def load_spec(text: str, filename: str = "<model>") -> A.Spec:
    return typecheck_spec(parse_spec(text, filename))


def load_formula(text: str, spec: A.Spec, filename: str = "<formula>", consts=None):
    return typecheck_formula(parse_formula(text, filename, consts), spec)


def explore_spec(spec: A.Spec, cfg: RunConfig | None = None) -> Lts:
    cfg = cfg or RunConfig()
    return explore(spec, state_limit=cfg.state_limit,
                   semantics=Semantics(spec, cfg.semantics))


def check(spec: A.Spec, formula: A.StateFormula, cfg: RunConfig | None = None,
          lts: Lts | None = None) -> CheckResult:
    """Decide ``formula`` on the initial state of ``spec``.

    Evidence is produced for failures, and for successes of formulas without
    box modalities or universal quantifiers.
    """
    cfg = cfg or RunConfig()
    if lts is None:
        lts = explore_spec(spec, cfg)
    nf = normalize(formula)
    functions = {f.name: f for f in spec.functions}
    game = instantiate(lts, nf, functions, cfg.quant, cfg.instantiation_limit)
    sol = solve(game)
    holds = sol.winner[game.init] == VERIFIER
    result = CheckResult(holds, nf, lts, game, sol)
    if not holds or is_existential(nf):
        try:
            result.evidence = extract(game, sol, lts, unparse(formula))
        except NoEvidence as e:
            result.evidence = e.evidence
            result.note = e.message
    return result


def check_files(model: str | Path, formula: str | Path, consts=None,
                cfg: RunConfig | None = None) -> CheckResult:
    model, formula = Path(model), Path(formula)
    spec = load_spec(model.read_text(encoding="utf-8"), str(model))
    f = load_formula(formula.read_text(encoding="utf-8"), spec, str(formula), consts)
    return check(spec, f, cfg)
