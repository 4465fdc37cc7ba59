"""Parsing and validation of survey data, PPS evaluations and run configuration.

Parsers raise the first problem they meet. Passing a ``diagnostics`` list
switches them to collecting mode: every located error is appended, bad
records are dropped, and parsing carries on so a whole file can be reported
at once.
"""
from __future__ import annotations

import csv
import io
import itertools
import json
import operator
import warnings
from typing import Callable, Dict, Iterator, List, Mapping, Optional, Sequence, Tuple

from .errors import (
    AudienceMismatch,
    DataError,
    DuplicateItemScore,
    DuplicateRespondentId,
    EmptyNamePool,
    IgnoredFieldWarning,
    IncompleteItemSet,
    InconsistentParticipant,
    MalformedConfig,
    MalformedRow,
    MissingColumn,
    MissingSelectedPersona,
    OutOfRangeScore,
    UnexpectedColumn,
    UnknownDemographicValue,
    UnknownItemId,
    UnknownPersonaName,
)
from .model import (
    ANSWER_COLUMNS,
    DEFAULT_FORMATS,
    DEFAULT_INSTRUMENTS,
    DEFAULT_NAME_POOL,
    DEFAULT_SCHEMA,
    QUADRANTS,
    Audience,
    Construct,
    DemographicAttribute,
    DemographicSchema,
    PPSInstrument,
    PPSItem,
    PPSResponse,
    Polarity,
    RunConfig,
    ScoringMode,
    SurveyResponse,
)
from .persona import DEFAULT_NARRATIVES, Persona, check_narratives, persona_from_json

_LIKERT_CELLS = {str(v): v for v in range(1, 6)}
PPS_COLUMNS = ("participant_id", "audience", "selected_persona", "item_id", "score")
REPORT_FORMATS = ("markdown", "html", "json")


class _Sink:
    """Raise immediately, or record into a caller-supplied list."""

    def __init__(self, diagnostics: Optional[List[DataError]]):
        self.diagnostics = diagnostics

    def __call__(self, error: DataError) -> None:
        if self.diagnostics is None:
            raise error
        self.diagnostics.append(error)


def _rows(raw: str) -> Iterator[Tuple[int, List[str]]]:
    if raw.startswith("﻿"):
        raw = raw[1:]
    reader = csv.reader(io.StringIO(raw, newline=""))
    for row in reader:
        if not row:
            continue
        yield reader.line_num, row


def _tuple_getter(cols: Sequence[int]) -> Callable[[List[str]], Tuple[str, ...]]:
    if len(cols) > 1:
        return operator.itemgetter(*cols)
    return lambda row: tuple(row[c] for c in cols)


class _AllowedDemographics:
    """Membership test for a whole row of demographic values."""

    def __init__(self, value_sets: Sequence[frozenset]):
        self.sets = value_sets
        size = 1
        for values in value_sets:
            size *= len(values)
        # small schemas: one hash lookup per row instead of one per attribute
        self.combos = frozenset(itertools.product(*value_sets)) if size <= 50_000 else None

    def __contains__(self, values: Tuple[str, ...]) -> bool:
        if self.combos is not None:
            return values in self.combos
        return all(v in allowed for v, allowed in zip(values, self.sets))


def _likert(cell: str, row: int, column: str) -> int:
    try:
        return _LIKERT_CELLS[cell]
    except KeyError:
        raise OutOfRangeScore(f"{cell!r} is not an integer score in 1..5", row, column) from None


def _check_header(
    header: List[str], required: Sequence[str], row: int, report: _Sink
) -> Optional[Dict[str, int]]:
    index = {}
    ok = True
    for pos, name in enumerate(header):
        if name in index:
            report(MalformedRow(f"column {name!r} appears twice", row, name))
            ok = False
        index[name] = pos
    for name in required:
        if name not in index:
            report(MissingColumn(f"required column {name!r} is absent", row, name))
            ok = False
    for name in header:
        if name not in required:
            report(UnexpectedColumn(f"column {name!r} is not part of the dataset schema", row, name))
            ok = False
    return index if ok else None


def survey_columns(schema: DemographicSchema) -> Tuple[str, ...]:
    return ("respondent_id", *schema.names, *ANSWER_COLUMNS)


def parse_survey_dataset(
    raw: str,
    schema: DemographicSchema = DEFAULT_SCHEMA,
    diagnostics: Optional[List[DataError]] = None,
) -> List[SurveyResponse]:
    """Parse survey CSV text into responses, preserving file order."""
    report = _Sink(diagnostics)
    rows = _rows(raw)
    try:
        header_line, header = next(rows)
    except StopIteration:
        report(MissingColumn("survey file has no header row", 1, "respondent_id"))
        return []
    columns = survey_columns(schema)
    index = _check_header(header, columns, header_line, report)
    if index is None:
        return []

    id_col = index["respondent_id"]
    demo_cols = [(attr.name, index[attr.name], frozenset(attr.values)) for attr in schema.attributes]
    answer_cols = [(name, index[name]) for name in ANSWER_COLUMNS]
    width = len(header)
    seen: Dict[str, int] = {}
    out = []
    likert_get = _LIKERT_CELLS.get
    demo_names = [name for name, _, _ in demo_cols]
    allowed_demo = _AllowedDemographics([allowed for _, _, allowed in demo_cols])
    answer_cells = _tuple_getter([col for _, col in answer_cols])
    demo_cells = _tuple_getter([col for _, col, _ in demo_cols])
    for line, row in rows:
        if len(row) != width:
            report(MalformedRow(f"expected {width} cells, found {len(row)}", line))
            continue
        rid = row[id_col]
        answers = tuple(map(likert_get, answer_cells(row)))
        values = demo_cells(row)
        if (
            rid
            and rid not in seen
            and None not in answers
            and values in allowed_demo
        ):
            seen[rid] = line
            out.append(SurveyResponse(rid, dict(zip(demo_names, values)), answers))
            continue

        # slow path: locate every problem in the row; the row is always rejected
        if not rid:
            report(MalformedRow("respondent_id is empty", line, "respondent_id"))
        elif rid in seen:
            report(DuplicateRespondentId(f"{rid!r} already used on row {seen[rid]}", line, "respondent_id"))
        else:
            seen[rid] = line
        for name, col, allowed in demo_cols:
            if row[col] not in allowed:
                report(UnknownDemographicValue(f"{row[col]!r} is not a permitted value", line, name))
        for (name, col), score in zip(answer_cols, answers):
            if score is None:
                report(OutOfRangeScore(f"{row[col]!r} is not an integer score in 1..5", line, name))
    return out


def serialize_survey_dataset(responses: Sequence[SurveyResponse], schema: DemographicSchema) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(survey_columns(schema))
    for r in responses:
        writer.writerow([r.respondent_id, *(r.demographics[n] for n in schema.names), *r.answers])
    return buf.getvalue()


def parse_pps_dataset(
    raw: str,
    instrument: PPSInstrument,
    personas: Optional[Sequence[str]] = None,
    allow_missing: bool = False,
    diagnostics: Optional[List[DataError]] = None,
) -> List[PPSResponse]:
    """Parse long-format PPS CSV text for one audience.

    Rows are grouped per participant in order of first appearance. With
    ``personas=None`` selected persona names are not checked against a
    persona set. Designer rows carrying a selected persona are accepted and
    the value dropped with an :class:`IgnoredFieldWarning`.
    """
    report = _Sink(diagnostics)
    rows = _rows(raw)
    try:
        header_line, header = next(rows)
    except StopIteration:
        report(MissingColumn("PPS file has no header row", 1, "participant_id"))
        return []
    index = _check_header(header, PPS_COLUMNS, header_line, report)
    if index is None:
        return []

    item_ids = frozenset(instrument.item_ids)
    known = None if personas is None else frozenset(personas)
    width = len(header)
    first_row: Dict[str, int] = {}
    meta: Dict[str, Tuple[Audience, Optional[str]]] = {}
    scores: Dict[str, Dict[str, int]] = {}
    bad: set = set()
    warned: set = set()
    for line, row in rows:
        if len(row) != width:
            report(MalformedRow(f"expected {width} cells, found {len(row)}", line))
            continue
        pid, audience_cell, selected, item_id, score_cell = (row[index[c]] for c in PPS_COLUMNS)
        before = len(diagnostics) if diagnostics is not None else 0
        if not pid:
            report(MalformedRow("participant_id is empty", line, "participant_id"))
            continue
        try:
            audience = Audience(audience_cell)
        except ValueError:
            report(MalformedRow(f"audience must be 'user' or 'designer', got {audience_cell!r}", line, "audience"))
            audience = None
        if audience is not None and audience is not instrument.audience:
            report(AudienceMismatch(
                f"{audience.value} row in a {instrument.audience.value} dataset", line, "audience"))
        if item_id not in item_ids:
            report(UnknownItemId(f"{item_id!r} is not in the {instrument.audience.value} instrument", line, "item_id"))
        score = _LIKERT_CELLS.get(score_cell)
        if score is None:
            report(OutOfRangeScore(f"{score_cell!r} is not an integer score in 1..5", line, "score"))

        if instrument.audience is Audience.USER:
            if not selected:
                report(MissingSelectedPersona("user rows must name the selected persona", line, "selected_persona"))
            elif known is not None and selected not in known:
                report(UnknownPersonaName(f"{selected!r} is not a known persona", line, "selected_persona"))
        else:
            if selected and pid not in warned:
                warned.add(pid)
                warnings.warn(
                    f"row {line}: designer {pid!r} names a selected persona; value ignored",
                    IgnoredFieldWarning,
                    stacklevel=2,
                )
            selected = None

        if pid in meta:
            if meta[pid] != (audience, selected or None):
                report(InconsistentParticipant(
                    f"participant {pid!r} changes audience or selected persona", line, "selected_persona"))
            elif item_id in scores[pid]:
                report(DuplicateItemScore(f"{pid!r} scores {item_id!r} twice", line, "item_id"))
        else:
            first_row[pid] = line
            meta[pid] = (audience, selected or None)
            scores[pid] = {}
        if diagnostics is not None and len(diagnostics) > before:
            bad.add(pid)
            continue
        scores[pid][item_id] = score

    out = []
    for pid, (audience, selected) in meta.items():
        if pid in bad:
            continue
        missing = [i for i in instrument.item_ids if i not in scores[pid]]
        if missing and not allow_missing:
            report(IncompleteItemSet(
                f"participant {pid!r} has no score for {', '.join(missing)}", first_row[pid], "item_id"))
            continue
        out.append(PPSResponse(pid, audience, scores[pid], selected))
    return out


def serialize_pps_dataset(responses: Sequence[PPSResponse], instrument: PPSInstrument) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(PPS_COLUMNS)
    for r in responses:
        for item_id in instrument.item_ids:
            if item_id in r.scores:
                writer.writerow([r.participant_id, r.audience.value, r.selected_persona or "", item_id, r.scores[item_id]])
    return buf.getvalue()


_CONFIG_KEYS = {
    "demographic_schema",
    "scoring_mode",
    "name_pool",
    "output_dir",
    "report_formats",
    "allow_missing_items",
    "allow_empty_audience",
    "narratives",
    "instruments",
}


def _expect(cond: bool, message: str) -> None:
    if not cond:
        raise MalformedConfig(message)


def _str_list(value, key: str) -> List[str]:
    _expect(isinstance(value, list) and all(isinstance(v, str) for v in value),
            f"{key} must be a list of strings")
    return value


def _parse_schema(value) -> DemographicSchema:
    _expect(isinstance(value, list), "demographic_schema must be a list of {name, values} objects")
    attrs = []
    for entry in value:
        _expect(isinstance(entry, dict) and set(entry) == {"name", "values"},
                "each demographic_schema entry needs exactly 'name' and 'values'")
        _expect(isinstance(entry["name"], str) and entry["name"], "attribute name must be a non-empty string")
        values = _str_list(entry["values"], f"values of {entry['name']!r}")
        attrs.append(DemographicAttribute(entry["name"], tuple(values)))
    try:
        return DemographicSchema(tuple(attrs))
    except ValueError as exc:
        raise MalformedConfig(str(exc)) from None


def _parse_narratives(value):
    _expect(isinstance(value, dict), "narratives must map quadrant -> {positive, negative}")
    table = dict(DEFAULT_NARRATIVES)
    kinds = {k.value: k for k in QUADRANTS}
    for quadrant, cells in value.items():
        _expect(quadrant in kinds, f"unknown quadrant {quadrant!r} in narratives")
        _expect(isinstance(cells, dict), f"narratives.{quadrant} must be an object")
        for pol_name, text in cells.items():
            _expect(pol_name in ("positive", "negative"), f"unknown polarity {pol_name!r}")
            _expect(isinstance(text, str) and text.strip() != "", f"narratives.{quadrant}.{pol_name} must be text")
            table[(kinds[quadrant], Polarity(pol_name))] = text
    check_narratives(table)
    return table


def _parse_instruments(value) -> Dict[Audience, PPSInstrument]:
    _expect(isinstance(value, dict), "instruments must map audience -> item list")
    out = dict(DEFAULT_INSTRUMENTS)
    for audience_name, items in value.items():
        try:
            audience = Audience(audience_name)
        except ValueError:
            raise MalformedConfig(f"unknown audience {audience_name!r} in instruments") from None
        _expect(isinstance(items, list) and items, f"instruments.{audience_name} must be a non-empty list")
        parsed = []
        for item in items:
            _expect(isinstance(item, dict) and set(item) == {"item_id", "construct", "text"},
                    "instrument items need exactly item_id, construct, text")
            try:
                construct = Construct(item["construct"])
            except ValueError:
                raise MalformedConfig(f"unknown construct {item['construct']!r}") from None
            parsed.append(PPSItem(str(item["item_id"]), construct, str(item["text"])))
        try:
            out[audience] = PPSInstrument(audience, tuple(parsed))
        except ValueError as exc:
            raise MalformedConfig(str(exc)) from None
    return out


def load_run_config(raw: str) -> RunConfig:
    """Build a validated :class:`RunConfig` from a JSON document.

    An empty document yields every default.
    """
    if not raw.strip():
        return RunConfig()
    try:
        doc = json.loads(raw)
    except json.JSONDecodeError as exc:
        raise MalformedConfig(f"config is not valid JSON: {exc}") from None
    _expect(isinstance(doc, dict), "config must be a JSON object")
    unknown = sorted(set(doc) - _CONFIG_KEYS)
    _expect(not unknown, f"unknown config keys: {', '.join(unknown)}")

    kwargs = {}
    if "demographic_schema" in doc:
        kwargs["schema"] = _parse_schema(doc["demographic_schema"])
    if "scoring_mode" in doc:
        kwargs["scoring_mode"] = ScoringMode.parse(doc["scoring_mode"])
    if "name_pool" in doc:
        pool = _str_list(doc["name_pool"], "name_pool")
        if not pool:
            raise EmptyNamePool("name_pool must hold at least one name")
        _expect(all(n.strip() for n in pool), "name_pool entries must be non-empty")
        _expect(len(set(pool)) == len(pool), "name_pool repeats a name")
        kwargs["name_pool"] = tuple(pool)
    if "output_dir" in doc:
        _expect(isinstance(doc["output_dir"], str) and doc["output_dir"], "output_dir must be a path string")
        kwargs["output_dir"] = doc["output_dir"]
    if "report_formats" in doc:
        kwargs["report_formats"] = parse_formats(_str_list(doc["report_formats"], "report_formats"))
    for flag in ("allow_missing_items", "allow_empty_audience"):
        if flag in doc:
            _expect(isinstance(doc[flag], bool), f"{flag} must be true or false")
            kwargs[flag] = doc[flag]
    if "narratives" in doc:
        kwargs["narratives"] = _parse_narratives(doc["narratives"])
    if "instruments" in doc:
        kwargs["instruments"] = _parse_instruments(doc["instruments"])
    return RunConfig(**kwargs)


def parse_formats(formats: Sequence[str]) -> Tuple[str, ...]:
    formats = [f.strip().lower() for f in formats]
    bad = [f for f in formats if f not in REPORT_FORMATS]
    _expect(not bad, f"unknown report formats {bad}; choose from {', '.join(REPORT_FORMATS)}")
    _expect(bool(formats), "at least one report format is required")
    return tuple(dict.fromkeys(formats))


def dump_run_config(config: RunConfig) -> str:
    narratives = config.narratives or DEFAULT_NARRATIVES
    doc = {
        "demographic_schema": [{"name": a.name, "values": list(a.values)} for a in config.schema.attributes],
        "scoring_mode": config.scoring_mode.value,
        "name_pool": list(config.name_pool),
        "output_dir": config.output_dir,
        "report_formats": list(config.report_formats),
        "allow_missing_items": config.allow_missing_items,
        "allow_empty_audience": config.allow_empty_audience,
        "narratives": {
            k.value: {p.value: narratives[(k, p)] for p in Polarity} for k in QUADRANTS
        },
        "instruments": {
            aud.value: [
                {"item_id": i.item_id, "construct": i.construct.value, "text": i.text} for i in inst.items
            ]
            for aud, inst in config.instruments.items()
        },
    }
    return json.dumps(doc, indent=2, ensure_ascii=False) + "\n"


def parse_personas_json(raw: str) -> List[Persona]:
    try:
        doc = json.loads(raw)
        if not isinstance(doc, list):
            raise ValueError("personas document must be a JSON array")
        personas = [persona_from_json(rec) for rec in doc]
    except (ValueError, KeyError, TypeError) as exc:
        raise DataError(f"invalid personas document: {exc}") from None
    names = [p.name for p in personas]
    if len(set(names)) != len(names):
        raise DataError("personas document repeats a persona name")
    return personas
