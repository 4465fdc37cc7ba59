import itertools
from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from personakit.empathy import (
    EmpathyMap,
    QuadrantScore,
    aggregate,
    build_map,
    classify,
    maps_from_json,
    maps_to_json,
    raw_score,
    signature,
)
from personakit.errors import EmptyInput
from personakit.model import MapSignature, Polarity, QuadrantKind, ScoringMode, SurveyResponse

from conftest import answers_for_code

D, T, F, S = QuadrantKind
PAIRS = list(itertools.product(range(1, 6), repeat=2))
likert = st.integers(1, 5)
answers8 = st.tuples(*[likert] * 8)


def response(answers, rid="r", demo=None):
    return SurveyResponse(rid, demo or {}, tuple(answers))


def map_for_code(code, rid):
    return build_map(response(answers_for_code(code), rid))


@pytest.mark.parametrize(
    "kind,a1,a2,mode,expected",
    [
        (F, 5, 1, ScoringMode.LITERAL, Fraction(4)),
        (D, 2, 3, ScoringMode.LITERAL, Fraction(5, 2)),
        (T, 1, 5, ScoringMode.LITERAL, Fraction(-4)),
        (S, 5, 1, ScoringMode.REVERSE_CODED, Fraction(5)),
    ],
)
def test_raw_score_examples(kind, a1, a2, mode, expected):
    assert raw_score(kind, a1, a2, mode) == expected


def test_raw_score_accepts_mode_strings():
    assert raw_score(S, 5, 1, "reverse_coded") == 5


@pytest.mark.parametrize("raw,expected", [(Fraction(5, 2), Polarity.POSITIVE), (2.49, Polarity.NEGATIVE), (-4, Polarity.NEGATIVE)])
def test_classify_examples(raw, expected):
    assert classify(raw) is expected


def test_literal_positive_pairs_match_enumeration():
    subtraction = {(a, b) for a, b in PAIRS if a - b >= 2.5}
    averaging = {(a, b) for a, b in PAIRS if (a + b) / 2 >= 2.5}
    assert subtraction == {(4, 1), (5, 1), (5, 2)}
    assert len(averaging) == 19
    for kind in (T, F, S):
        assert {p for p in PAIRS if classify(raw_score(kind, *p)) is Polarity.POSITIVE} == subtraction
        for a, b in PAIRS:
            assert (classify(raw_score(kind, a, b)) is Polarity.POSITIVE) == (a - b >= 3)
    assert {p for p in PAIRS if classify(raw_score(D, *p)) is Polarity.POSITIVE} == averaging


def test_reverse_coded_is_symmetric_around_midpoint():
    for kind in QuadrantKind:
        for a, b in PAIRS:
            assert raw_score(kind, a, b, ScoringMode.REVERSE_CODED) == Fraction(a + 6 - b, 2)


@pytest.mark.parametrize(
    "answers,raws,sig",
    [
        ((5, 1) * 4, (3, 4, 4, 4), "PPPP"),
        ((3,) * 8, (3, 0, 0, 0), "PNNN"),
        ((1,) * 8, (1, 0, 0, 0), "NNNN"),
    ],
)
def test_build_map_examples(answers, raws, sig):
    m = build_map(response(answers))
    assert tuple(s.raw for s in m.scores) == raws
    assert str(signature(m)) == sig


@pytest.mark.parametrize("text,code", [("PPPP", 15), ("NNNN", 0), ("PNNN", 8)])
def test_signature_codes(text, code):
    assert MapSignature.parse(text).code == code
    assert str(MapSignature.from_code(code)) == text


def test_signature_order_is_code_order():
    sigs = [MapSignature.from_code(c) for c in range(16)]
    assert sorted(reversed(sigs)) == sigs


@given(answers8, st.sampled_from(list(ScoringMode)))
def test_map_polarity_agrees_with_classify(answers, mode):
    m = build_map(response(answers), mode)
    for kind, score in zip(QuadrantKind, m.scores):
        a1, a2 = response(answers).pair(kind)
        assert score.raw == raw_score(kind, a1, a2, mode)
        assert score.polarity is classify(score.raw)
        assert signature(m)[kind] is score.polarity
    if mode is ScoringMode.LITERAL:
        assert 1 <= m[D].raw <= 5
        assert all(-4 <= m[k].raw <= 4 for k in (T, F, S))


@given(answers8, st.text(max_size=5), st.text(max_size=5))
def test_demographics_do_not_affect_signature(answers, g1, g2):
    a = build_map(response(answers, demo={"gender": g1}))
    b = build_map(response(answers, demo={"gender": g2}))
    assert signature(a) == signature(b)


def test_aggregate_identical_maps():
    groups = aggregate([map_for_code(15, f"r{i}") for i in range(4)])
    assert len(groups) == 1 and groups[0].size == 4
    assert groups[0].member_ids == ("r0", "r1", "r2", "r3")


def test_aggregate_all_signatures():
    groups = aggregate([map_for_code(c, f"r{c}") for c in range(16)])
    assert len(groups) == 16
    assert [g.signature.code for g in groups] == list(range(16))
    assert all(g.size == 1 for g in groups)


def test_aggregate_fig2_multiplicities():
    maps = []
    for code, count in [(15, 21), (8, 14), (14, 11), (10, 10), (0, 5)]:
        maps += [map_for_code(code, f"{code}-{i}") for i in range(count)]
    groups = aggregate(maps)
    assert [g.size for g in groups] == [21, 14, 11, 10, 5]
    assert sum(g.fraction for g in groups) == 1


def test_aggregate_tie_break_by_signature():
    maps = [map_for_code(9, "a"), map_for_code(3, "b"), map_for_code(3, "c"), map_for_code(9, "d"), map_for_code(1, "e")]
    assert [g.signature.code for g in aggregate(maps)] == [3, 9, 1]


def test_aggregate_empty():
    with pytest.raises(EmptyInput):
        aggregate([])


@given(st.lists(st.integers(0, 15), min_size=1, max_size=40), st.randoms())
def test_aggregate_properties(codes, rnd):
    maps = [map_for_code(c, f"r{i}") for i, c in enumerate(codes)]
    groups = aggregate(maps)
    assert sum(g.size for g in groups) == len(maps)
    assert len(groups) <= min(len(maps), 16)
    assert sum(g.fraction for g in groups) == 1
    for g in groups:
        ids = [m.respondent_id for m in maps if signature(m) == g.signature]
        assert list(g.member_ids) == ids
    shuffled = list(maps)
    rnd.shuffle(shuffled)
    again = aggregate(shuffled)
    assert [(g.signature, g.size) for g in again] == [(g.signature, g.size) for g in groups]
    assert [set(g.member_ids) for g in again] == [set(g.member_ids) for g in groups]


def test_maps_json_round_trip():
    maps = [map_for_code(c, f"r{c}") for c in range(16)]
    doc = maps_to_json(maps)
    assert doc[0]["quadrants"]["thinks"]["raw"] == "-2/2"
    assert doc[15]["signature"] == "PPPP"
    assert maps_from_json(doc) == maps
