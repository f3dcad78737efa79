import argparse
import io
import json
import logging
import os
import sys
from dataclasses import dataclass, field
from typing import Any, Optional, Sequence, Union

# Fix Windows console encoding for emojis
if sys.platform == 'win32':
    sys.stdout = io.TextIOWrapper(sys.stdout.buffer, encoding='utf-8', errors='replace')
    sys.stderr = io.TextIOWrapper(sys.stderr.buffer, encoding='utf-8', errors='replace')

from cm_engine.core import config
from cm_engine.core.errors import CMError, ConfigError, InputError, ValidationError
from cm_engine.corpus import fixture_path
from cm_engine.diagram import EmbeddingCode, parse
from cm_engine.invariants import (
    build_report,
    check_invariance,
    i_split_obstruction,
    index_key,
    is_completely_split,
    lambda_report,
    mu_bar,
)
from cm_engine.invariants.reports import (
    as_text,
    crossing_summary,
    lambda_frame,
    lambda_payload,
    mu_bar_frame,
    mu_bar_payload,
    obstruction_frame,
    obstruction_payload,
    relator_frame,
)
from cm_engine.presentation import (
    DirectPresentation,
    parse_presentation,
    relator_series,
    resolve_meridians,
)
from cm_engine.ring import render, render_monomial

logger = logging.getLogger("cm_engine.cli")

COMMANDS = ("present", "split", "isplit", "lambda", "mu", "check")

Source = Union[EmbeddingCode, DirectPresentation]


@dataclass
class RunConfig:
    command: str
    input: str
    output_format: str = config.OUTPUT_FORMAT
    cap: int = config.CYCLE_CAP
    seed: int = config.CHECK_SEED
    moves: int = config.CHECK_MOVES
    presentation: bool = False
    max_degree: Optional[int] = None
    workers: int = config.WORKERS
    strict: bool = False
    verbosity: int = 0
    color: Optional[int] = None

    def validate(self) -> None:
        if self.command not in COMMANDS:
            raise ConfigError(f"command must be one of: {', '.join(COMMANDS)}")
        if self.output_format not in ("text", "json"):
            raise ConfigError("format must be one of: text, json")
        if self.cap < 1:
            raise ConfigError("cap must be >= 1")
        if self.moves < 0:
            raise ConfigError("moves must be >= 0")
        if self.max_degree is not None and self.max_degree < 1:
            raise ConfigError("max-degree must be >= 1")
        if self.workers < 1:
            raise ConfigError("workers must be >= 1")
        if self.command == "isplit" and self.color is None:
            raise ConfigError("isplit needs a component")


@dataclass
class CommandResult:
    report: dict[str, Any]
    lines: list[str] = field(default_factory=list)
    failed: bool = False


def parse_args(argv: Optional[Sequence[str]] = None) -> RunConfig:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("input", help="Diagram code (.sg) or presentation (.pres) file, or a fixture name.")
    common.add_argument("--format", dest="output_format", choices=["text", "json"], default=config.OUTPUT_FORMAT)
    common.add_argument("--cap", type=int, default=config.CYCLE_CAP, help="Cycle and selection enumeration cap.")
    common.add_argument("--seed", type=int, default=config.CHECK_SEED, help="Seed for random moves (check).")
    common.add_argument("--moves", type=int, default=config.CHECK_MOVES, help="Number of crossing changes (check).")
    common.add_argument("--presentation", action="store_true", help="Read the input as a relator presentation.")
    common.add_argument("--max-degree", type=int, default=None,
                        help="Override the degree bound; results are approximate below the number of components.")
    common.add_argument("--workers", type=int, default=config.WORKERS, help="Threads for constituent links.")
    common.add_argument("--strict", action="store_true", help="Exit 1 on a negative verdict.")
    common.add_argument("-v", "--verbose", dest="verbosity", action="count", default=0)

    p = argparse.ArgumentParser(
        prog="cm",
        description="Component-homotopy invariants of spatial graphs.",
    )
    sub = p.add_subparsers(dest="command", required=True)
    sub.add_parser("present", parents=[common], help="Generators and surface elements.")
    sub.add_parser("split", parents=[common], help="Complete splittability verdict.")
    isplit = sub.add_parser("isplit", parents=[common], help="Obstruction to separating one component.")
    isplit.add_argument("color", type=int, help="Component to separate.")
    sub.add_parser("lambda", parents=[common], help="Lambda of every component, both routes.")
    sub.add_parser("mu", parents=[common], help="Milnor invariants of a link.")
    sub.add_parser("check", parents=[common], help="Invariance under random crossing changes.")

    args = p.parse_args(argv)
    cfg = RunConfig(**{k: v for k, v in vars(args).items()})
    cfg.validate()
    return cfg


def setup_logging(verbosity: int) -> None:
    if verbosity >= 2:
        level = logging.DEBUG
    elif verbosity == 1:
        level = logging.INFO
    else:
        level = getattr(logging, str(config.LOG_LEVEL).upper(), logging.WARNING)
    logging.basicConfig(level=level, stream=sys.stderr, format="%(levelname)s %(name)s: %(message)s")


def load_input(cfg: RunConfig) -> Source:
    path = cfg.input
    if not os.path.exists(path):
        path = str(fixture_path(cfg.input))
    try:
        with open(path, encoding="utf-8") as fh:
            text = fh.read()
    except UnicodeDecodeError as e:
        name = os.path.basename(path)
        raise InputError(f"{name} is not valid UTF-8 text: {e.reason} at byte {e.start}") from None
    if cfg.presentation or path.endswith(".pres"):
        return parse_presentation(text, source=os.path.basename(path))
    return parse(text, source=os.path.basename(path))


def require_code(source: Source, command: str) -> EmbeddingCode:
    if not isinstance(source, EmbeddingCode):
        raise ValidationError(f"{command} needs a diagram code, not a presentation")
    return source


def degree_flags(cfg: RunConfig, degree: int, colors: int) -> dict[str, Any]:
    return {"degree": degree, "approximate": degree < colors, "strict": cfg.strict}


def approximate_line(flags: dict[str, Any]) -> list[str]:
    if flags["approximate"]:
        return [f"⚠️ Degree bound {flags['degree']} is below the number of components; results are approximate."]
    return []


def cmd_present(cfg: RunConfig, source: Source) -> CommandResult:
    if isinstance(source, EmbeddingCode):
        bundle = resolve_meridians(source, cfg.max_degree)
        generators = bundle.generators
        relators = relator_series(bundle)
        flags = degree_flags(cfg, bundle.degree, len(bundle.colors))
    else:
        generators = source.generators
        relators = relator_series(source, cfg.max_degree)
        degree = source.degree if cfg.max_degree is None else cfg.max_degree
        flags = degree_flags(cfg, degree, len(source.colors))

    names = " ".join(v.generator_name for v in generators) or "(none)"
    lines = [f"🚀 Presentation of {cfg.input}", f"Generators: {names}", as_text(relator_frame(relators))]
    lines += approximate_line(flags)
    report = build_report(
        "present",
        cfg.input,
        flags=flags,
        series={r.label: render(r.series) for r in relators},
        verdicts={"generators": [v.generator_name for v in generators]},
    )
    return CommandResult(report, lines)


def cmd_split(cfg: RunConfig, source: Source) -> CommandResult:
    code = require_code(source, "split")
    split = is_completely_split(code, cfg.cap, cfg.workers, cfg.max_degree)
    flags = degree_flags(cfg, cfg.max_degree or len(code.colors), len(code.colors))

    lines = [f"🚀 Checked {split.selections_checked} constituent links of {cfg.input}"]
    witnesses: dict[str, Any] = {}
    mu: dict[str, Any] = {}
    if split.completely_split:
        lines.append("✅ Completely split up to component homotopy.")
    else:
        desc = split.witness.describe()
        lines.append(f"❌ Not split: constituent link {desc} is not link-homotopically trivial.")
        lines.append(as_text(mu_bar_frame(split.witness_report)))
        witnesses["selection"] = desc
        mu[desc] = mu_bar_payload(split.witness_report)
    if split.surface_trivial:
        lines.append("✅ Every surface element is trivial.")
    else:
        lines.append("❌ Some surface element is nontrivial.")
    lines.append(as_text(obstruction_frame(split.obstructions)))
    lines += approximate_line(flags)

    report = build_report(
        "split",
        cfg.input,
        verdicts={
            "completely_split": split.completely_split,
            "surface_trivial": split.surface_trivial,
            "obstructions": {c: obstruction_payload(o) for c, o in split.obstructions.items()},
        },
        witnesses=witnesses,
        mu_bar=mu,
        flags=flags,
    )
    return CommandResult(report, lines, failed=cfg.strict and not split.completely_split)


def cmd_isplit(cfg: RunConfig, source: Source) -> CommandResult:
    if isinstance(source, EmbeddingCode):
        target = resolve_meridians(source, cfg.max_degree)
        flags = degree_flags(cfg, target.degree, len(target.colors))
    else:
        target = source
        flags = degree_flags(cfg, cfg.max_degree or source.degree, len(source.colors))
    ob = i_split_obstruction(target, cfg.color, cfg.max_degree)

    if ob.obstructed:
        lines = [
            f"❌ Component {ob.color}: {ob.verdict}; relator {ob.relator} has "
            f"{ob.coefficient:+d}·{render_monomial(ob.monomial)} in degree {ob.degree}."
        ]
    else:
        lines = [f"⚠️ Component {ob.color}: {ob.verdict}."]
    lines += approximate_line(flags)

    payload = obstruction_payload(ob)
    report = build_report(
        "isplit",
        cfg.input,
        verdicts={str(ob.color): payload["verdict"], "obstructed": ob.obstructed},
        witnesses={"relator": payload["relator"], "monomial": payload["monomial"],
                   "coefficient": payload["coefficient"]} if ob.obstructed else {},
        flags=flags,
    )
    return CommandResult(report, lines, failed=cfg.strict and ob.obstructed)


def cmd_lambda(cfg: RunConfig, source: Source) -> CommandResult:
    report = lambda_report(source, cfg.cap, cfg.workers, cfg.max_degree)
    flags = degree_flags(cfg, report.degree, len(report.rows))
    flags["routes_agree"] = report.agree

    lines = [f"🚀 Lambda per component of {cfg.input} (absent: none up to degree {report.degree})"]
    lines.append(as_text(lambda_frame(report), missing=f"none ≤ {report.degree}"))
    if not report.agree:
        lines.append("⚠️ The relator and link routes disagree.")
    lines += approximate_line(flags)

    payload = build_report("lambda", cfg.input, lambdas=lambda_payload(report), flags=flags)
    return CommandResult(payload, lines, failed=cfg.strict and not report.agree)


def cmd_mu(cfg: RunConfig, source: Source) -> CommandResult:
    code = require_code(source, "mu")
    report = mu_bar(code, cfg.max_degree)
    flags = degree_flags(cfg, report.degree, len(report.colors))

    first = report.first_nonvanishing
    if first is None:
        lines = ["✅ All Milnor invariants vanish: link-homotopically trivial."]
    else:
        values = ", ".join(f"μ̄({index_key(i)}) = {c}" for i, c in first[1])
        lines = [f"❌ First nonvanishing length {first[0]}: {values}"]
    lines.append(as_text(mu_bar_frame(report)))
    counts = crossing_summary(code, report)
    linking = ", ".join(f"lk({k}) = {v}" for k, v in counts["linking_numbers"].items() if v is not None)
    lines.append(f"Writhe {counts['writhe']}" + (f"; {linking}" if linking else ""))
    if not counts["length_two_agrees"]:
        lines.append("⚠️ Length-2 invariants differ from the signed crossing counts.")
    if first is not None and any(report.indeterminate(i) for i in report.coefficients):
        lines.append("⚠️ Entries longer than the first nonvanishing length are subject to indeterminacy.")
    lines += approximate_line(flags)

    payload = build_report(
        "mu",
        cfg.input,
        verdicts={"trivial": report.trivial, "crossings": counts},
        mu_bar={"link": mu_bar_payload(report)},
        flags=flags,
    )
    return CommandResult(payload, lines, failed=cfg.strict and not report.trivial)


def cmd_check(cfg: RunConfig, source: Source) -> CommandResult:
    code = require_code(source, "check")
    result = check_invariance(code, cfg.moves, cfg.seed, cfg.cap, cfg.workers, cfg.max_degree)

    lines = [
        f"🚀 {len(result.applied)} crossing changes applied to {cfg.input} "
        f"(seed {cfg.seed}, {len(result.rejected)} rejected)"
    ]
    if result.passed:
        lines.append("✅ All invariants unchanged.")
    else:
        lines.append(f"❌ Invariants changed after move {result.mismatch_after}.")

    payload = build_report(
        "check",
        cfg.input,
        verdicts={"passed": result.passed, "baseline": result.baseline},
        witnesses={"moves": result.applied, "rejected": result.rejected, "mismatch": result.mismatch},
        flags={"moves": cfg.moves, "seed": cfg.seed},
    )
    return CommandResult(payload, lines, failed=not result.passed)


HANDLERS = {
    "present": cmd_present,
    "split": cmd_split,
    "isplit": cmd_isplit,
    "lambda": cmd_lambda,
    "mu": cmd_mu,
    "check": cmd_check,
}


def emit(cfg: RunConfig, result: CommandResult) -> None:
    if cfg.output_format == "json":
        print(json.dumps(result.report, sort_keys=True, indent=2, ensure_ascii=False))
    else:
        for line in result.lines:
            print(line)


def main(argv: Optional[Sequence[str]] = None) -> int:
    try:
        cfg = parse_args(argv)
    except CMError as e:
        print(f"❌ {e}", file=sys.stderr)
        return e.exit_code
    setup_logging(cfg.verbosity)

    try:
        source = load_input(cfg)
        result = HANDLERS[cfg.command](cfg, source)
    except CMError as e:
        print(f"❌ {e}", file=sys.stderr)
        return e.exit_code
    except OSError as e:
        print(f"❌ Cannot read input: {e}", file=sys.stderr)
        return 2
    except Exception as e:
        logger.exception("internal failure")
        print(f"\n❌ CRITICAL CRASH: {e}", file=sys.stderr)
        return 3

    emit(cfg, result)
    return 1 if result.failed else 0


if __name__ == "__main__":
    sys.exit(main())
