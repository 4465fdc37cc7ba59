"""Empathy-map scoring and grouping of identical maps."""
from __future__ import annotations

import functools
import json
from json.encoder import encode_basestring
from collections import Counter
from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, Iterable, List, Mapping, Sequence, Tuple, Union

from .errors import EmptyInput
from .model import QUADRANTS, MapSignature, Polarity, QuadrantKind, ScoringMode, SurveyResponse

POSITIVE_THRESHOLD = Fraction(5, 2)
# scores are held doubled so the 2.5 cut is an integer comparison
_TWICE_THRESHOLD = 5


def _twice_raw(kind: QuadrantKind, a1: int, a2: int, mode: ScoringMode) -> int:
    if mode is ScoringMode.REVERSE_CODED:
        return a1 + 6 - a2
    if kind is QuadrantKind.DOES:
        return a1 + a2
    return 2 * (a1 - a2)


def raw_score(kind: QuadrantKind, a1: int, a2: int, mode: ScoringMode = ScoringMode.LITERAL) -> Fraction:
    """Quadrant score from its two answers.

    Literal mode averages the DOES pair and subtracts the second answer from
    the first for THINKS, FEELS and SAYS. Reverse-coded mode treats the second
    item of every pair as reversed and averages ``a1`` with ``6 - a2``.
    """
    return Fraction(_twice_raw(kind, a1, a2, ScoringMode.parse(mode)), 2)


def classify(raw: Union[Fraction, int, float]) -> Polarity:
    return Polarity.POSITIVE if raw >= POSITIVE_THRESHOLD else Polarity.NEGATIVE


@dataclass(frozen=True)
class QuadrantScore:
    kind: QuadrantKind
    twice: int

    @property
    def raw(self) -> Fraction:
        return Fraction(self.twice, 2)

    @property
    def polarity(self) -> Polarity:
        return Polarity.POSITIVE if self.twice >= _TWICE_THRESHOLD else Polarity.NEGATIVE

    def raw_text(self) -> str:
        """The raw score as an ``n/2`` string, e.g. ``"-8/2"``."""
        return f"{self.twice}/2"


@dataclass(frozen=True)
class EmpathyMap:
    """Four quadrant scores of one respondent, stored doubled in canonical order."""

    respondent_id: str
    twice: Tuple[int, int, int, int]

    @property
    def scores(self) -> Tuple[QuadrantScore, ...]:
        return tuple(QuadrantScore(kind, t) for kind, t in zip(QUADRANTS, self.twice))

    def __getitem__(self, kind: QuadrantKind) -> QuadrantScore:
        i = QUADRANTS.index(kind)
        return QuadrantScore(kind, self.twice[i])

    @property
    def signature(self) -> MapSignature:
        return signature(self)


def build_map(response: SurveyResponse, mode: ScoringMode = ScoringMode.LITERAL) -> EmpathyMap:
    a = response.answers
    if mode is ScoringMode.LITERAL:
        twice = (a[0] + a[1], 2 * (a[2] - a[3]), 2 * (a[4] - a[5]), 2 * (a[6] - a[7]))
    elif mode is ScoringMode.REVERSE_CODED:
        twice = (a[0] + 6 - a[1], a[2] + 6 - a[3], a[4] + 6 - a[5], a[6] + 6 - a[7])
    else:
        return build_map(response, ScoringMode.parse(mode))
    return EmpathyMap(response.respondent_id, twice)


def _code(twice: Tuple[int, int, int, int]) -> int:
    return (
        (twice[0] >= _TWICE_THRESHOLD) << 3
        | (twice[1] >= _TWICE_THRESHOLD) << 2
        | (twice[2] >= _TWICE_THRESHOLD) << 1
        | (twice[3] >= _TWICE_THRESHOLD)
    )


def signature(emap: EmpathyMap) -> MapSignature:
    return MapSignature.from_code(_code(emap.twice))


@dataclass(frozen=True)
class PersonaGroup:
    signature: MapSignature
    member_ids: Tuple[str, ...]
    total: int

    def __post_init__(self) -> None:
        if not self.member_ids:
            raise ValueError("a persona group needs at least one member")
        if self.total < len(self.member_ids):
            raise ValueError("group larger than the respondent total")

    @property
    def size(self) -> int:
        return len(self.member_ids)

    @property
    def fraction(self) -> Fraction:
        return Fraction(self.size, self.total)


def aggregate(maps: Sequence[EmpathyMap]) -> List[PersonaGroup]:
    """Merge maps with identical signatures.

    Groups come out largest first; equal sizes are ordered by signature code.
    Members keep their input order.
    """
    if not maps:
        raise EmptyInput("cannot aggregate an empty list of empathy maps")
    members: Dict[int, List[str]] = {}
    for emap in maps:
        members.setdefault(_code(emap.twice), []).append(emap.respondent_id)
    total = len(maps)
    order = sorted(members, key=lambda code: (-len(members[code]), code))
    return [PersonaGroup(MapSignature.from_code(code), tuple(members[code]), total) for code in order]


def signature_counts(maps: Iterable[EmpathyMap]) -> Mapping[MapSignature, int]:
    return Counter(signature(m) for m in maps)


def map_to_json(m: EmpathyMap) -> dict:
    return {
        "respondent_id": m.respondent_id,
        "quadrants": {
            kind.value: {
                "raw": f"{t}/2",
                "polarity": "positive" if t >= _TWICE_THRESHOLD else "negative",
            }
            for kind, t in zip(QUADRANTS, m.twice)
        },
        "signature": str(signature(m)),
    }


def maps_to_json(maps: Sequence[EmpathyMap]) -> list:
    """Audit dump: one record per respondent with raw scores as ``n/2`` strings."""
    return [map_to_json(m) for m in maps]


_POLARITY_TEXT = ("negative", "positive")


@functools.lru_cache(maxsize=None)
def _record_tail(twice: Tuple[int, int, int, int]) -> str:
    code = _code(twice)
    cells = ", ".join(
        f'"{kind.value}": {{"raw": "{t}/2", "polarity": "{_POLARITY_TEXT[code >> (3 - i) & 1]}"}}'
        for i, (kind, t) in enumerate(zip(QUADRANTS, twice))
    )
    return f', "quadrants": {{{cells}}}, "signature": "{MapSignature.from_code(code)}"}}'


def dump_maps_json(maps: Sequence[EmpathyMap]) -> str:
    """JSON array text with one compact record per line (same records as ``maps_to_json``)."""
    if not maps:
        return "[]\n"
    quote = encode_basestring
    lines = ['{"respondent_id": ' + quote(m.respondent_id) + _record_tail(m.twice) for m in maps]
    return "[\n" + ",\n".join(lines) + "\n]\n"


def maps_from_json(records: Sequence[Mapping]) -> List[EmpathyMap]:
    out = []
    for rec in records:
        twice = []
        for kind in QUADRANTS:
            num, den = rec["quadrants"][kind.value]["raw"].split("/")
            if den != "2":
                raise ValueError(f"raw score must be stored in halves, got {num}/{den}")
            twice.append(int(num))
        out.append(EmpathyMap(rec["respondent_id"], tuple(twice)))
    return out
