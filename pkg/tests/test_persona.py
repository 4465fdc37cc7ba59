from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from personakit.empathy import PersonaGroup, aggregate, build_map
from personakit.errors import GroupEmpty, UnknownMemberId
from personakit.ingest import parse_personas_json, parse_survey_dataset
from personakit.model import (
    QUADRANTS,
    DemographicSchema,
    MapSignature,
    Polarity,
    QuadrantKind,
    RunConfig,
    SurveyResponse,
)
from personakit.persona import (
    DEFAULT_NARRATIVES,
    format_percent,
    initials,
    modal_demographics,
    quadrant_narrative,
    synthesize,
)
from personakit.report.cards import personas_json

from conftest import answers_for_code, fig2_survey_csv, signature_rows, survey_csv

SCHEMA = DemographicSchema.from_mapping({"gender": ["F", "M"]})
SIG = MapSignature.from_code(15)


def people(genders):
    return {f"r{i}": SurveyResponse(f"r{i}", {"gender": g}, (3,) * 8) for i, g in enumerate(genders)}


def group(responses):
    return PersonaGroup(SIG, tuple(responses), len(responses))


@pytest.mark.parametrize("genders,mode", [(["F", "F", "M"], "F"), (["F", "M"], "F"), (["M", "F"], "F"), (["M", "M", "F"], "M")])
def test_modal_demographics(genders, mode):
    rs = people(genders)
    assert modal_demographics(group(rs), rs, SCHEMA) == {"gender": mode}


def test_mode_tie_follows_schema_order():
    rs = people(["F", "M"])
    schema = DemographicSchema.from_mapping({"gender": ["M", "F"]})
    assert modal_demographics(group(rs), rs, schema) == {"gender": "M"}


def test_modal_demographics_errors():
    rs = people(["F"])
    with pytest.raises(UnknownMemberId):
        modal_demographics(PersonaGroup(SIG, ("ghost",), 1), rs, SCHEMA)
    with pytest.raises(GroupEmpty):
        modal_demographics(type("G", (), {"member_ids": ()})(), rs, SCHEMA)


@pytest.mark.parametrize(
    "kind,pol,text",
    [
        (QuadrantKind.DOES, Polarity.POSITIVE, "Tends to follow the recommendation provided by the software."),
        (QuadrantKind.SAYS, Polarity.NEGATIVE, "It says that explanations should not be obligatorily provided."),
        (QuadrantKind.FEELS, Polarity.POSITIVE, "Feels more comfortable following a well-explained recommendation."),
    ],
)
def test_quadrant_narrative(kind, pol, text):
    assert quadrant_narrative(kind, pol) == text


def personas_from(text, config=None):
    responses = parse_survey_dataset(text)
    groups = aggregate([build_map(r) for r in responses])
    return synthesize(groups, {r.respondent_id: r for r in responses}, config)


def test_fig2_personas():
    personas = personas_from(fig2_survey_csv())
    assert [p.name for p in personas] == [
        "Marcos Assis", "Renata Silva", "Mateus Umbelino", "Rodrigo Rodrigues", "Felipe Rabelo"]
    assert [p.size for p in personas] == [21, 14, 11, 10, 5]
    assert personas[0].fraction == Fraction(21, 61)
    assert personas[0].percent == "34.4%"
    assert [p.avatar for p in personas][:2] == ["MA", "RS"]
    assert sum(p.fraction for p in personas) == 1


def test_name_pool_overflow():
    personas = personas_from(survey_csv(signature_rows([(c, 1) for c in range(16)])))
    generated = [p.name for p in personas if p.name.startswith("Persona ")]
    assert len(generated) == 11
    assert generated == [f"Persona {c}" for c in range(5, 16)]


def test_narratives_follow_signature():
    personas = personas_from(survey_csv(signature_rows([(c, 1) for c in range(16)])))
    for p in personas:
        assert list(p.narratives) == [DEFAULT_NARRATIVES[(k, p.signature[k])] for k in QUADRANTS]


def test_custom_narratives():
    table = dict(DEFAULT_NARRATIVES)
    table[(QuadrantKind.DOES, Polarity.POSITIVE)] = "Segue."
    [p] = personas_from(survey_csv(signature_rows([(15, 2)])), RunConfig(narratives=table))
    assert p.narratives[0] == "Segue."


@pytest.mark.parametrize("frac,text", [(Fraction(21, 61), "34.4%"), (Fraction(14, 61), "23.0%"), (Fraction(10, 61), "16.4%"),
                                       (Fraction(1, 1), "100.0%"), (Fraction(1, 16), "6.3%"), (Fraction(1, 3), "33.3%")])
def test_format_percent(frac, text):
    assert format_percent(frac) == text


def test_initials():
    assert initials("Mateus Umbelino") == "MU"
    assert initials("Persona 12") == "P1"


def test_personas_json_round_trip_is_byte_stable():
    personas = personas_from(fig2_survey_csv())
    text = personas_json(personas)
    assert parse_personas_json(text) == personas
    assert personas_json(parse_personas_json(text)) == text


@given(st.lists(st.integers(0, 15), min_size=1, max_size=30), st.data())
def test_demographics_only_change_demographics(codes, data):
    genders = data.draw(st.lists(st.sampled_from(["F", "M"]), min_size=len(codes), max_size=len(codes)))
    base = [SurveyResponse(f"r{i}", {"gender": "F"}, answers_for_code(c)) for i, c in enumerate(codes)]
    moved = [SurveyResponse(r.respondent_id, {"gender": g}, r.answers) for r, g in zip(base, genders)]
    config = RunConfig(schema=SCHEMA)
    out = []
    for rs in (base, moved):
        groups = aggregate([build_map(r) for r in rs])
        out.append(synthesize(groups, {r.respondent_id: r for r in rs}, config))
    assert [(p.signature, p.narratives, p.size, p.name) for p in out[0]] == [
        (p.signature, p.narratives, p.size, p.name) for p in out[1]]
