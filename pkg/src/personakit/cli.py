"""Command line: validate | personas | evaluate | report | run.

Exit codes: 0 success, 1 data or validation error, 2 usage error.
"""
from __future__ import annotations

import argparse
import dataclasses
import sys
import warnings
from pathlib import Path
from typing import List, Optional, Sequence

from . import pipeline
from .errors import DataError, PersonaKitError
from .ingest import load_run_config, parse_formats
from .model import Audience, RunConfig, ScoringMode

EXIT_OK, EXIT_DATA, EXIT_USAGE = 0, 1, 2


class UsageError(Exception):
    pass


def _add_common(p: argparse.ArgumentParser, *, config_required: bool = False) -> None:
    p.add_argument("--config", type=Path, required=config_required, help="run configuration (JSON)")
    p.add_argument("--out", type=Path, help="output directory (overrides config output_dir)")
    p.add_argument("--scoring-mode", choices=[m.value for m in ScoringMode])
    p.add_argument("--format", dest="formats", help="comma-separated card formats: markdown,html,json")
    p.add_argument("--allow-missing", action="store_true", help="accept incomplete PPS item sets")
    p.add_argument("--allow-empty-audience", action="store_true", help="tolerate an audience with no responses")


def _add_pps(p: argparse.ArgumentParser) -> None:
    p.add_argument("--pps-users", type=Path)
    p.add_argument("--pps-designers", type=Path)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="personakit", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("validate", help="check every input file and list located diagnostics")
    p.add_argument("--survey", type=Path)
    _add_pps(p)
    _add_common(p, config_required=True)

    p = sub.add_parser("personas", help="score empathy maps, group them and write personas")
    p.add_argument("--survey", type=Path, required=True)
    _add_common(p)

    p = sub.add_parser("evaluate", help="compute PPS statistics for the personas")
    _add_pps(p)
    p.add_argument("--personas", type=Path, help="personas JSON (default: <out>/personas.json)")
    _add_common(p)

    p = sub.add_parser("report", help="render persona cards, figures and data exports")
    p.add_argument("--personas", type=Path, help="personas JSON (default: <out>/personas.json)")
    p.add_argument("--stats", type=Path, help="statistics JSON (default: <out>/stats.json)")
    _add_common(p)

    p = sub.add_parser("run", help="validate, personas, evaluate and report in sequence")
    p.add_argument("--survey", type=Path, required=True)
    _add_pps(p)
    p.add_argument("--dry-run", action="store_true", help="print the plan without writing anything")
    _add_common(p)
    return parser


def _config(args: argparse.Namespace) -> RunConfig:
    config = RunConfig()
    if args.config is not None:
        if not args.config.is_file():
            raise UsageError(f"config file {args.config} does not exist")
        config = load_run_config(args.config.read_text(encoding="utf-8"))
    overrides = {}
    if args.out is not None:
        overrides["output_dir"] = str(args.out)
    if args.scoring_mode:
        overrides["scoring_mode"] = ScoringMode.parse(args.scoring_mode)
    if args.formats:
        overrides["report_formats"] = parse_formats(args.formats.split(","))
    if args.allow_missing:
        overrides["allow_missing_items"] = True
    if args.allow_empty_audience:
        overrides["allow_empty_audience"] = True
    return dataclasses.replace(config, **overrides)


def _state(args: argparse.Namespace, config: RunConfig) -> pipeline.PipelineState:
    inputs = [getattr(args, "survey", None), getattr(args, "pps_users", None), getattr(args, "pps_designers", None)]
    for path in inputs:
        if path is not None and not path.is_file():
            raise UsageError(f"input file {path} does not exist")
    return pipeline.PipelineState(
        out_dir=Path(config.output_dir),
        survey=getattr(args, "survey", None),
        pps={
            Audience.USER: getattr(args, "pps_users", None),
            Audience.DESIGNER: getattr(args, "pps_designers", None),
        },
    )


def _print_diagnostics(errors: Sequence[DataError], notes: Sequence[str]) -> None:
    for note in notes:
        print(f"warning: {note}")
    for e in errors:
        source = f"{e.source}: " if getattr(e, "source", None) else ""
        print(f"error: {source}{e.located()}")
    print(f"{len(errors)} error{'s' if len(errors) != 1 else ''}")


def _print_personas(personas) -> None:
    print(f"{'persona':<24} {'signature':<9} {'size':>6} {'share':>7}")
    for p in personas:
        print(f"{p.name:<24} {str(p.signature):<9} {p.size:>6} {p.percent:>7}")


def _print_stats(doc: dict) -> None:
    for audience, block in doc.items():
        print(f"{audience}s (n={block['n']})")
        for rec in [*block["constructs"], block["overall"]]:
            ci = rec["ci95"]
            ci_text = "n/a" if ci is None else f"[{ci[0]:.2f}, {ci[1]:.2f}]"
            print(f"  {rec['construct']:<14} mean {rec['mean']:.2f}  95% CI {ci_text}")


def _cmd_validate(args, config) -> int:
    state = _state(args, config)
    result = pipeline.validate_inputs(state, config)
    _print_diagnostics(result.errors, result.notes)
    return EXIT_OK if result.ok else EXIT_DATA


def _cmd_personas(args, config) -> int:
    personas = pipeline.run_personas(_state(args, config), config)
    _print_personas(personas)
    return EXIT_OK


def _cmd_evaluate(args, config) -> int:
    doc = pipeline.run_evaluate(_state(args, config), config, args.personas)
    _print_stats(doc)
    return EXIT_OK


def _cmd_report(args, config) -> int:
    files = pipeline.run_report(_state(args, config), config, args.personas, args.stats)
    print(f"wrote {len(files)} files under {config.output_dir}")
    return EXIT_OK


def _cmd_run(args, config) -> int:
    state = _state(args, config)
    if args.dry_run:
        for step in pipeline.planned_outputs(state, config):
            print(step)
        return EXIT_OK
    stage = "validate"
    try:
        checked = pipeline.validate_inputs(state, config)
        if not checked.ok:
            _print_diagnostics(checked.errors, checked.notes)
            print("stage validate: failed", file=sys.stderr)
            return EXIT_DATA
        for note in checked.notes:
            print(f"warning: {note}", file=sys.stderr)
        stage = "personas"
        _print_personas(pipeline.run_personas(state, config, checked))
        stage = "evaluate"
        _print_stats(pipeline.run_evaluate(state, config))
        stage = "report"
        files = pipeline.run_report(state, config)
        print(f"wrote {len(files)} report files under {config.output_dir}")
    except PersonaKitError as exc:
        print(f"stage {stage}: {exc}", file=sys.stderr)
        return EXIT_DATA
    return EXIT_OK


COMMANDS = {
    "validate": _cmd_validate,
    "personas": _cmd_personas,
    "evaluate": _cmd_evaluate,
    "report": _cmd_report,
    "run": _cmd_run,
}


def main(argv: Optional[List[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code else EXIT_OK
    try:
        config = _config(args)
        with warnings.catch_warnings():
            warnings.simplefilter("always")
            warnings.showwarning = _show_warning
            return COMMANDS[args.command](args, config)
    except UsageError as exc:
        print(f"usage error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except PersonaKitError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_DATA


def _show_warning(message, category, filename, lineno, file=None, line=None) -> None:
    print(f"warning: {message}", file=sys.stderr)


if __name__ == "__main__":
    sys.exit(main())
