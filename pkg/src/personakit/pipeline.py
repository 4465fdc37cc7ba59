"""Stage functions behind the command line: each reads files and writes its artifacts."""
from __future__ import annotations

import json
import warnings
from dataclasses import dataclass, field
from pathlib import Path
from typing import Dict, List, Optional, Sequence, Tuple

from . import empathy, pps
from .errors import DataError, EmptyInput, MissingArtifact
from .ingest import parse_personas_json, parse_pps_dataset, parse_survey_dataset
from .model import Audience, RunConfig, SurveyResponse
from .persona import Persona, synthesize
from .report import build_report, write_atomic, write_tree
from .report.bundle import dump_json
from .report.cards import personas_json

MAPS_FILE = "empathy_maps.json"
PERSONAS_FILE = "personas.json"
STATS_FILE = "stats.json"


@dataclass
class PipelineState:
    """Where each stage's inputs and outputs live."""

    out_dir: Path
    survey: Optional[Path] = None
    pps: Dict[Audience, Optional[Path]] = field(default_factory=dict)

    @property
    def maps(self) -> Path:
        return self.out_dir / MAPS_FILE

    @property
    def personas(self) -> Path:
        return self.out_dir / PERSONAS_FILE

    @property
    def stats(self) -> Path:
        return self.out_dir / STATS_FILE


def read_text(path: Path) -> str:
    try:
        return Path(path).read_text(encoding="utf-8")
    except FileNotFoundError:
        raise MissingArtifact(f"{path} does not exist") from None


def build_personas(
    responses: Sequence[SurveyResponse], config: RunConfig
) -> Tuple[List[empathy.EmpathyMap], List[empathy.PersonaGroup], List[Persona]]:
    maps = [empathy.build_map(r, config.scoring_mode) for r in responses]
    groups = empathy.aggregate(maps)
    by_id = {r.respondent_id: r for r in responses}
    return maps, groups, synthesize(groups, by_id, config)


@dataclass
class Validation:
    errors: List[DataError] = field(default_factory=list)
    notes: List[str] = field(default_factory=list)
    responses: Optional[List[SurveyResponse]] = None
    built: Optional[Tuple[list, list, List[Persona]]] = None

    @property
    def ok(self) -> bool:
        return not self.errors


def validate_inputs(state: PipelineState, config: RunConfig) -> Validation:
    """Parse every input in collecting mode.

    User PPS selections are checked against the persona names the survey
    would produce, so a clean result means every later stage can run.
    """
    result = Validation()
    errors = result.errors
    names: Optional[List[str]] = None
    with warnings.catch_warnings(record=True) as caught:
        warnings.simplefilter("always")
        if state.survey is not None:
            survey_errors: List[DataError] = []
            responses = parse_survey_dataset(read_text(state.survey), config.schema, survey_errors)
            errors += [_tag(e, state.survey) for e in survey_errors]
            if not survey_errors:
                if not responses:
                    errors.append(_tag(DataError("survey has no responses"), state.survey))
                else:
                    result.responses = responses
                    result.built = build_personas(responses, config)
                    names = [p.name for p in result.built[2]]
        for audience, path in state.pps.items():
            if path is None:
                continue
            pps_errors: List[DataError] = []
            parse_pps_dataset(
                read_text(path), config.instruments[audience], names, config.allow_missing_items, pps_errors
            )
            errors += [_tag(e, path) for e in pps_errors]
    result.notes += [str(w.message) for w in caught]
    return result


def _tag(error: DataError, path: Path) -> DataError:
    error.source = str(path)
    return error


def run_personas(
    state: PipelineState, config: RunConfig, validated: Optional[Validation] = None
) -> List[Persona]:
    """Score, group and synthesize, reusing a clean validation result when given."""
    if validated is not None and validated.built is not None:
        maps, _, personas = validated.built
    else:
        responses = parse_survey_dataset(read_text(state.survey), config.schema)
        if not responses:
            raise EmptyInput("survey has no responses")
        maps, _, personas = build_personas(responses, config)
    write_atomic(state.maps, empathy.dump_maps_json(maps))
    write_atomic(state.personas, personas_json(personas))
    return personas


def run_evaluate(state: PipelineState, config: RunConfig, personas_path: Optional[Path] = None) -> dict:
    personas = parse_personas_json(read_text(personas_path or state.personas))
    names = [p.name for p in personas]
    responses = {}
    for audience in Audience:
        path = state.pps.get(audience)
        parsed = []
        if path is not None:
            parsed = parse_pps_dataset(
                read_text(path), config.instruments[audience], names, config.allow_missing_items
            )
        if not parsed:
            if not config.allow_empty_audience:
                raise EmptyInput(
                    f"no {audience.value} evaluation responses (pass --allow-empty-audience to skip)"
                )
            warnings.warn(f"no {audience.value} evaluation responses; {audience.value} block omitted")
        responses[audience] = parsed
    if not any(responses.values()):
        raise EmptyInput("no evaluation responses for any audience")
    doc = pps.evaluate(responses, config.instruments, names)
    write_atomic(state.stats, dump_json(doc))
    return doc


def run_report(
    state: PipelineState,
    config: RunConfig,
    personas_path: Optional[Path] = None,
    stats_path: Optional[Path] = None,
) -> Dict[str, str]:
    personas = parse_personas_json(read_text(personas_path or state.personas))
    try:
        stats = json.loads(read_text(stats_path or state.stats))
    except json.JSONDecodeError as exc:
        raise DataError(f"statistics document is not valid JSON: {exc}") from None
    files = build_report(personas, stats, config.instruments, config.report_formats)
    write_tree(state.out_dir, files)
    return files


def planned_outputs(state: PipelineState, config: RunConfig) -> List[str]:
    plan = [
        f"validate  survey={state.survey} "
        + " ".join(f"pps-{a.value}s={p}" for a, p in state.pps.items()),
        f"personas  -> {state.maps}, {state.personas}",
        f"evaluate  -> {state.stats}",
        f"report    -> {state.out_dir}/personas ({', '.join(config.report_formats)}), "
        f"{state.out_dir}/figures, {state.out_dir}/data",
    ]
    return plan

