"""Command-line interface.

Exit status: 0 when the property holds (or all corpus results match),
1 when it fails (or a corpus result differs), 2 on any tool error.  Verdicts
go to standard output, diagnostics to standard error.
"""
from __future__ import annotations

import argparse
import sys
from pathlib import Path

from . import corpus
from .checker import RunConfig, check, check_files, explore_spec, load_formula, load_spec
from .errors import CheckerError
from .evidence import render, render_machine
from .lts import aut_text

EXIT_HOLDS, EXIT_FAILS, EXIT_ERROR = 0, 1, 2


def _const(text):
    name, sep, value = text.partition("=")
    if not sep or not name.isidentifier():
        raise argparse.ArgumentTypeError(f"expected NAME=VALUE, got {text!r}")
    value = value.strip()
    if value in ("true", "false"):
        return name, value == "true"
    try:
        return name, int(value)
    except ValueError:
        raise argparse.ArgumentTypeError(f"constant {name} needs an integer or boolean") from None


def _positive(text):
    n = int(text)
    if n <= 0:
        raise argparse.ArgumentTypeError("must be positive")
    return n


def _natural(text):
    n = int(text)
    if n < 0:
        raise argparse.ArgumentTypeError("must be non-negative")
    return n


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="pamc", description=__doc__.splitlines()[0])
    sub = ap.add_subparsers(dest="command", required=True)

    def limits(p):
        p.add_argument("--quant-bound", type=_natural, default=1, metavar="N",
                       help="Nat quantifiers and sums range over 0..N (default 1)")
        p.add_argument("--state-limit", type=_positive, default=1_000_000, metavar="N")
        p.add_argument("--game-limit", type=_positive, default=10_000_000, metavar="N",
                       help="maximum number of game vertices")

    c = sub.add_parser("check", help="check a formula on a model")
    c.add_argument("model")
    c.add_argument("formula")
    c.add_argument("--const", type=_const, action="append", default=[], metavar="NAME=VAL",
                   help="substitute a constant in the formula (repeatable)")
    c.add_argument("--evidence", metavar="PATH", help="write the evidence to PATH")
    c.add_argument("--machine", action="store_true",
                   help="evidence as JSON lines (src, label, dst, part)")
    c.add_argument("--dump-game", metavar="PATH", help="write the parity game in text form")
    limits(c)

    e = sub.add_parser("explore", help="explore the state space of a model")
    e.add_argument("model")
    e.add_argument("--out", metavar="PATH", help="write the LTS in .aut format")
    limits(e)

    k = sub.add_parser("corpus", help="bundled corpus")
    ksub = k.add_subparsers(dest="corpus_command", required=True)
    r = ksub.add_parser("run", help="check every corpus entry against its expectation")
    r.add_argument("--out", metavar="DIR", help="write .aut files and evidence to DIR")
    return ap


def _config(args) -> RunConfig:
    return RunConfig(quant_bound=args.quant_bound, state_limit=args.state_limit,
                     instantiation_limit=args.game_limit)


def cmd_check(args, out, err) -> int:
    result = check_files(args.model, args.formula, dict(args.const), _config(args))
    out.write(result.verdict + "\n")
    if args.dump_game:
        Path(args.dump_game).write_text(result.game.dump(), encoding="utf-8")
    if result.note:
        err.write(f"note: {result.note}\n")
    ev = result.evidence
    if ev is not None:
        text = render_machine(ev) if args.machine else render(ev)
        if args.evidence:
            Path(args.evidence).write_text(text, encoding="utf-8")
        else:
            out.write(text)
    return EXIT_HOLDS if result.holds else EXIT_FAILS


def cmd_explore(args, out, err) -> int:
    path = Path(args.model)
    spec = load_spec(path.read_text(encoding="utf-8"), str(path))
    lts = explore_spec(spec, _config(args))
    if args.out:
        with open(args.out, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(aut_text(lts))
    out.write(f"states: {lts.state_count}\n")
    out.write(f"transitions: {lts.transition_count}\n")
    out.write(f"deadlocks: {len(lts.deadlocks)}\n")
    return 0


def run_corpus(out_dir=None, cfg: RunConfig | None = None):
    """Check every corpus entry; returns rows ``(model, check, expected, got, ok)``."""
    cfg = cfg or RunConfig()
    rows = []
    for entry in corpus.ENTRIES:
        spec = load_spec(corpus.model_text(entry.model), f"{entry.model}.pmx")
        lts = explore_spec(spec, cfg)
        if out_dir is not None:
            (out_dir / f"{entry.model}.aut").write_text(aut_text(lts), encoding="utf-8")
        for exp in entry.checks:
            f = load_formula(corpus.property_text(exp.prop), spec, f"{exp.prop}.mcf",
                             dict(exp.consts))
            result = check(spec, f, cfg, lts=lts)
            kind = result.evidence.kind if result.evidence is not None else None
            ok = result.verdict == exp.verdict and kind == exp.evidence
            want = exp.verdict + (f" ({exp.evidence})" if exp.evidence else "")
            got = result.verdict + (f" ({kind})" if kind else "")
            rows.append((entry.model, exp.name, want, got, ok))
            if out_dir is not None and result.evidence is not None:
                (out_dir / f"{entry.model}__{exp.name}.evidence").write_text(
                    render(result.evidence), encoding="utf-8")
    return rows


def cmd_corpus(args, out, err) -> int:
    out_dir = None
    if args.out:
        out_dir = Path(args.out)
        out_dir.mkdir(parents=True, exist_ok=True)
    rows = run_corpus(out_dir)
    header = ("model", "property", "expected", "result", "")
    widths = [max(len(str(r[i])) for r in rows + [header]) for i in range(4)]
    lines = []
    for r in [header] + [(m, p, e, g, "ok" if ok else "MISMATCH") for m, p, e, g, ok in rows]:
        lines.append("  ".join(str(x).ljust(w) for x, w in zip(r, widths + [0])).rstrip())
    out.write("\n".join(lines) + "\n")
    bad = [r for r in rows if not r[4]]
    if bad:
        err.write(f"{len(bad)} of {len(rows)} results differ from expectations:\n")
        for m, p, e, g, _ in bad:
            err.write(f"  {m} {p}: expected {e}, got {g}\n")
        return 1
    return 0


def main(argv=None, out=None, err=None) -> int:
    out = out or sys.stdout
    err = err or sys.stderr
    ap = build_parser()
    try:
        args = ap.parse_args(argv)
    except SystemExit as e:
        return EXIT_ERROR if e.code else 0
    handler = {"check": cmd_check, "explore": cmd_explore, "corpus": cmd_corpus}[args.command]
    try:
        return handler(args, out, err)
    except CheckerError as e:
        err.write(f"error: {e}\n")
    except (OSError, RecursionError, ValueError) as e:
        err.write(f"error: {e}\n")
    return EXIT_ERROR


if __name__ == "__main__":
    sys.exit(main())
