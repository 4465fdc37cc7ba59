"""scikit-learn compatible wrappers around the scoring, grouping and PPS stages.

Array layouts:

* survey answers: shape (n_respondents, 8), columns in ``ANSWER_COLUMNS`` order
* PPS scores: shape (n_participants, n_items), columns in instrument item
  order, NaN marking an unanswered item when ``allow_missing=True``
"""
from __future__ import annotations

from typing import Optional, Sequence

import numpy as np
from sklearn.base import BaseEstimator, ClusterMixin, TransformerMixin
from sklearn.utils.validation import check_is_fitted, validate_data

from . import empathy, pps
from .model import (
    ANSWER_COLUMNS,
    DEFAULT_INSTRUMENTS,
    DEFAULT_NAME_POOL,
    QUADRANTS,
    Audience,
    DemographicSchema,
    PPSInstrument,
    PPSResponse,
    RunConfig,
    ScoringMode,
    SurveyResponse,
)
from .persona import synthesize
from .validation import check_likert


def _check_answers(estimator, X, reset: bool) -> np.ndarray:
    X = validate_data(estimator, X, reset=reset, dtype=np.float64, ensure_all_finite=True)
    if X.shape[1] != len(ANSWER_COLUMNS):
        raise ValueError(f"expected {len(ANSWER_COLUMNS)} answer columns, got {X.shape[1]}")
    names = getattr(estimator, "feature_names_in_", None)
    if names is not None and tuple(names) != ANSWER_COLUMNS:
        raise ValueError(f"answer columns must be {', '.join(ANSWER_COLUMNS)} in that order")
    return check_likert(X, columns=ANSWER_COLUMNS)


def _doubled_scores(A: np.ndarray, mode: ScoringMode) -> np.ndarray:
    first, second = A[:, 0::2], A[:, 1::2]
    if mode is ScoringMode.REVERSE_CODED:
        return first + 6 - second
    twice = 2 * (first - second)
    twice[:, 0] = first[:, 0] + second[:, 0]
    return twice


class EmpathyMapTransformer(TransformerMixin, BaseEstimator):
    """Turn eight Likert answers into four empathy-map quadrant values.

    ``output="raw"`` yields the quadrant scores, ``output="polarity"`` yields
    1 for positive and 0 for negative quadrants.
    """

    def __init__(self, scoring_mode: str = "literal", output: str = "raw"):
        self.scoring_mode = scoring_mode
        self.output = output

    def fit(self, X, y=None):
        ScoringMode.parse(self.scoring_mode)
        if self.output not in ("raw", "polarity"):
            raise ValueError(f"output must be 'raw' or 'polarity', got {self.output!r}")
        _check_answers(self, X, reset=True)
        return self

    def transform(self, X):
        check_is_fitted(self, "n_features_in_")
        twice = _doubled_scores(_check_answers(self, X, reset=False), ScoringMode.parse(self.scoring_mode))
        if self.output == "polarity":
            return (twice >= 5).astype(np.int64)
        return twice / 2.0

    def get_feature_names_out(self, input_features=None):
        return np.array([k.value for k in QUADRANTS], dtype=object)


class EmpathyPersonaModel(ClusterMixin, BaseEstimator):
    """Group respondents by empathy-map signature and synthesize one persona per group.

    ``labels_`` indexes ``personas_``. ``predict`` assigns new respondents
    to the persona with their signature, or -1 when no fitted persona has it.
    """

    def __init__(
        self,
        scoring_mode: str = "literal",
        name_pool: Sequence[str] = DEFAULT_NAME_POOL,
        demographic_schema: Optional[DemographicSchema] = None,
        narratives=None,
    ):
        self.scoring_mode = scoring_mode
        self.name_pool = name_pool
        self.demographic_schema = demographic_schema
        self.narratives = narratives

    def fit(self, X, y=None, demographics=None, respondent_ids=None):
        A = _check_answers(self, X, reset=True)
        mode = ScoringMode.parse(self.scoring_mode)
        schema = self.demographic_schema or DemographicSchema()
        n = A.shape[0]
        ids = [str(i) for i in (respondent_ids if respondent_ids is not None else range(n))]
        if len(ids) != n or len(set(ids)) != n:
            raise ValueError("respondent_ids must be unique and match the number of rows")
        rows = _demographic_rows(demographics, schema, n)
        responses = [
            SurveyResponse(rid, demo, tuple(int(v) for v in answers))
            for rid, demo, answers in zip(ids, rows, A)
        ]
        config = RunConfig(
            schema=schema, scoring_mode=mode, name_pool=tuple(self.name_pool), narratives=self.narratives
        )
        self.maps_ = [empathy.build_map(r, mode) for r in responses]
        self.groups_ = empathy.aggregate(self.maps_)
        self.personas_ = synthesize(self.groups_, {r.respondent_id: r for r in responses}, config)
        self._label_of = {g.signature.code: i for i, g in enumerate(self.groups_)}
        self.signatures_ = np.array([empathy.signature(m).code for m in self.maps_], dtype=np.int64)
        self.labels_ = np.array([self._label_of[c] for c in self.signatures_], dtype=np.int64)
        return self

    def predict(self, X):
        check_is_fitted(self, "labels_")
        A = _check_answers(self, X, reset=False)
        bits = _doubled_scores(A, ScoringMode.parse(self.scoring_mode)) >= 5
        codes = bits @ np.array([8, 4, 2, 1])
        return np.array([self._label_of.get(int(c), -1) for c in codes], dtype=np.int64)


def _demographic_rows(demographics, schema: DemographicSchema, n: int):
    if demographics is None:
        if schema.attributes:
            raise ValueError("demographics are required when a demographic schema is set")
        return [{} for _ in range(n)]
    if hasattr(demographics, "columns"):
        frame = demographics
        missing = [a for a in schema.names if a not in frame.columns]
        if missing:
            raise ValueError(f"demographics lack columns {missing}")
        table = frame[list(schema.names)].astype(str).to_numpy()
    else:
        table = np.asarray(demographics, dtype=object)
        if table.ndim != 2 or table.shape[1] != len(schema.attributes):
            raise ValueError("demographics must have one column per schema attribute")
    if table.shape[0] != n:
        raise ValueError("demographics and answers have different row counts")
    rows = []
    for i, row in enumerate(table):
        demo = {}
        for attr, value in zip(schema.attributes, row):
            if value not in attr.values:
                raise ValueError(f"row {i}: {value!r} is not a permitted {attr.name}")
            demo[attr.name] = str(value)
        rows.append(demo)
    return rows


class PerceptionScaleSummarizer(TransformerMixin, BaseEstimator):
    """PPS statistics for one audience.

    ``fit`` stores construct, overall and per-item statistics; ``transform``
    returns each participant's construct means followed by their overall mean.
    ``y`` may carry the persona each user selected.
    """

    def __init__(self, audience: str = "user", instrument: Optional[PPSInstrument] = None, allow_missing: bool = False):
        self.audience = audience
        self.instrument = instrument
        self.allow_missing = allow_missing

    def _instrument(self) -> PPSInstrument:
        return self.instrument or DEFAULT_INSTRUMENTS[Audience(self.audience)]

    def _responses(self, X, reset: bool):
        inst = self._instrument()
        X = validate_data(self, X, reset=reset, dtype=np.float64, ensure_all_finite="allow-nan")
        if X.shape[1] != len(inst.items):
            raise ValueError(f"expected {len(inst.items)} item columns, got {X.shape[1]}")
        X = check_likert(X, allow_nan=self.allow_missing, columns=inst.item_ids)
        out = []
        for i, row in enumerate(X):
            scores = {item: int(v) for item, v in zip(inst.item_ids, row) if not np.isnan(v)}
            out.append(PPSResponse(f"p{i:06d}", inst.audience, scores))
        return inst, out

    def fit(self, X, y=None):
        inst, responses = self._responses(X, reset=True)
        self.construct_stats_ = [pps.construct_stats(responses, c, inst) for c in inst.constructs]
        self.overall_stats_ = pps.overall_stats(responses, inst)
        self.item_stats_ = [pps.item_boxplot(responses, i) for i in inst.item_ids]
        if y is not None:
            selected = [str(v) for v in y]
            if len(selected) != len(responses):
                raise ValueError("y must name one selected persona per participant")
            named = [PPSResponse(r.participant_id, r.audience, r.scores, s) for r, s in zip(responses, selected)]
            self.selections_ = pps.selection_counts(named, sorted(set(selected)))
        return self

    def transform(self, X):
        check_is_fitted(self, "overall_stats_")
        inst, responses = self._responses(X, reset=False)
        return np.array(
            [
                [pps.participant_construct_mean(r, c, inst) for c in inst.constructs]
                + [pps.participant_overall_mean(r, inst)]
                for r in responses
            ]
        )

    def get_feature_names_out(self, input_features=None):
        return np.array([c.value for c in self._instrument().constructs] + [pps.OVERALL], dtype=object)
