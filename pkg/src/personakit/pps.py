"""Persona Perception Scale statistics.

Every construct statistic is a mean of per-participant means: each
participant first gets one value per construct (or one overall value over
all instrument items), and the audience figures summarize those values.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Dict, List, Mapping, Optional, Sequence, Tuple, Union

from .errors import EmptyInput, NoItemsAnswered, UnknownPersonaName
from .model import Audience, Construct, PPSInstrument, PPSResponse
from .stats import five_number, mean, summarize

OVERALL = "overall"


@dataclass(frozen=True)
class ConstructStats:
    """Summary of one construct (or ``OVERALL``) across participants.

    ``ci95`` is stored unclamped; it is None when n == 1.
    """

    construct: Union[Construct, str]
    n: int
    mean: float
    sd: Optional[float]
    ci95: Optional[Tuple[float, float]]

    @property
    def label(self) -> str:
        return "Overall" if self.construct == OVERALL else self.construct.label

    @property
    def key(self) -> str:
        return OVERALL if self.construct == OVERALL else self.construct.value

    @property
    def degenerate(self) -> bool:
        return self.ci95 is None

    def to_json(self) -> dict:
        return {
            "construct": self.key,
            "n": self.n,
            "mean": self.mean,
            "sd": self.sd,
            "ci95": None if self.ci95 is None else list(self.ci95),
            "degenerate": self.degenerate,
        }

    @classmethod
    def from_json(cls, rec: Mapping) -> "ConstructStats":
        key = rec["construct"]
        ci = rec["ci95"]
        return cls(
            construct=OVERALL if key == OVERALL else Construct(key),
            n=int(rec["n"]),
            mean=float(rec["mean"]),
            sd=None if rec["sd"] is None else float(rec["sd"]),
            ci95=None if ci is None else (float(ci[0]), float(ci[1])),
        )


@dataclass(frozen=True)
class BoxplotStats:
    item_id: str
    n: int
    min: float
    q1: float
    median: float
    q3: float
    max: float
    outliers: List[float] = field(default_factory=list)

    @property
    def iqr(self) -> float:
        return self.q3 - self.q1

    def to_json(self) -> dict:
        return {
            "item_id": self.item_id,
            "n": self.n,
            "min": self.min,
            "q1": self.q1,
            "median": self.median,
            "q3": self.q3,
            "max": self.max,
            "outliers": list(self.outliers),
        }

    @classmethod
    def from_json(cls, rec: Mapping) -> "BoxplotStats":
        return cls(
            item_id=rec["item_id"],
            n=int(rec["n"]),
            min=float(rec["min"]),
            q1=float(rec["q1"]),
            median=float(rec["median"]),
            q3=float(rec["q3"]),
            max=float(rec["max"]),
            outliers=[float(v) for v in rec["outliers"]],
        )


def _ordered(responses: Sequence[PPSResponse]) -> List[PPSResponse]:
    return sorted(responses, key=lambda r: r.participant_id)


def participant_construct_mean(
    response: PPSResponse, construct: Construct, instrument: PPSInstrument
) -> float:
    scores = [response.scores[i.item_id] for i in instrument.items_for(construct) if i.item_id in response.scores]
    if not scores:
        raise NoItemsAnswered(
            f"participant {response.participant_id!r} answered no {construct.value} items"
        )
    return mean(scores)


def participant_overall_mean(response: PPSResponse, instrument: PPSInstrument) -> float:
    scores = [response.scores[i] for i in instrument.item_ids if i in response.scores]
    if not scores:
        raise NoItemsAnswered(f"participant {response.participant_id!r} answered no items")
    return mean(scores)


def _check_audience(responses: Sequence[PPSResponse], instrument: PPSInstrument) -> None:
    if not responses:
        raise EmptyInput(f"no {instrument.audience.value} responses to summarize")
    for r in responses:
        if r.audience is not instrument.audience:
            raise ValueError(
                f"participant {r.participant_id!r} is a {r.audience.value}, "
                f"instrument is for {instrument.audience.value}s"
            )


def _stats(key, values: Sequence[float]) -> ConstructStats:
    s = summarize(values)
    return ConstructStats(key, s.n, s.mean, s.sd, s.ci)


def construct_stats(
    responses: Sequence[PPSResponse], construct: Construct, instrument: PPSInstrument
) -> ConstructStats:
    _check_audience(responses, instrument)
    values = [participant_construct_mean(r, construct, instrument) for r in _ordered(responses)]
    return _stats(construct, values)


def overall_stats(responses: Sequence[PPSResponse], instrument: PPSInstrument) -> ConstructStats:
    _check_audience(responses, instrument)
    values = [participant_overall_mean(r, instrument) for r in _ordered(responses)]
    return _stats(OVERALL, values)


def item_boxplot(responses: Sequence[PPSResponse], item_id: str) -> BoxplotStats:
    values = [r.scores[item_id] for r in _ordered(responses) if item_id in r.scores]
    if not values:
        raise EmptyInput(f"no scores for item {item_id!r}")
    f = five_number(values)
    return BoxplotStats(item_id, f.n, f.low, f.q1, f.median, f.q3, f.high, list(f.outliers))


def selection_counts(responses: Sequence[PPSResponse], personas: Sequence[str]) -> Dict[str, int]:
    counts = {name: 0 for name in personas}
    for r in responses:
        if r.audience is not Audience.USER:
            raise ValueError(f"participant {r.participant_id!r} is not a user; selections are user-only")
        if r.selected_persona not in counts:
            raise UnknownPersonaName(f"{r.selected_persona!r} is not among the personas")
        counts[r.selected_persona] += 1
    return counts


def audience_summary(
    responses: Sequence[PPSResponse],
    instrument: PPSInstrument,
    personas: Optional[Sequence[str]] = None,
) -> dict:
    """JSON-ready block for one audience.

    User blocks also carry persona selection counts and, as an extension, a
    per-selected-persona breakdown of the construct statistics.
    """
    block = {
        "audience": instrument.audience.value,
        "n": len(responses),
        "constructs": [construct_stats(responses, c, instrument).to_json() for c in instrument.constructs],
        "overall": overall_stats(responses, instrument).to_json(),
        "items": [item_boxplot(responses, i).to_json() for i in instrument.item_ids],
    }
    if instrument.audience is Audience.USER and personas is not None:
        block["selections"] = selection_counts(responses, personas)
        by_persona = {}
        for name in personas:
            chosen = [r for r in responses if r.selected_persona == name]
            if chosen:
                by_persona[name] = {
                    "constructs": [construct_stats(chosen, c, instrument).to_json() for c in instrument.constructs],
                    "overall": overall_stats(chosen, instrument).to_json(),
                }
        block["by_persona_extension"] = by_persona
    return block


def evaluate(
    responses: Mapping[Audience, Sequence[PPSResponse]],
    instruments: Mapping[Audience, PPSInstrument],
    personas: Optional[Sequence[str]] = None,
) -> dict:
    """Statistics document keyed by audience name, for every audience with data."""
    return {
        audience.value: audience_summary(rs, instruments[audience], personas)
        for audience, rs in responses.items()
        if rs
    }
