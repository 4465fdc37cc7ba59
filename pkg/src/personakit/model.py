"""Core domain types shared across the pipeline stages."""
from __future__ import annotations

import enum
import functools
from dataclasses import dataclass, field
from typing import Dict, Iterator, Mapping, Optional, Sequence, Tuple

LIKERT_MIN = 1
LIKERT_MAX = 5
LIKERT_MIDPOINT = 3


def is_likert(value: object) -> bool:
    return type(value) is int and LIKERT_MIN <= value <= LIKERT_MAX


class QuadrantKind(enum.Enum):
    """Empathy-map quadrants. Declaration order is the canonical order."""

    DOES = "does"
    THINKS = "thinks"
    FEELS = "feels"
    SAYS = "says"

    @property
    def label(self) -> str:
        return self.value.capitalize()


QUADRANTS: Tuple[QuadrantKind, ...] = tuple(QuadrantKind)

# q_<quadrant>_<position>, canonical quadrant order, first question first
ANSWER_COLUMNS: Tuple[str, ...] = tuple(
    f"q_{kind.value}_{pos}" for kind in QUADRANTS for pos in (1, 2)
)


class ScoringMode(enum.Enum):
    LITERAL = "literal"
    REVERSE_CODED = "reverse_coded"

    @classmethod
    def parse(cls, value: "ScoringMode | str") -> "ScoringMode":
        from .errors import UnknownScoringMode

        if isinstance(value, cls):
            return value
        try:
            return cls(str(value).strip().lower())
        except ValueError:
            raise UnknownScoringMode(
                f"unknown scoring mode {value!r}; expected one of "
                f"{', '.join(m.value for m in cls)}"
            ) from None


class Polarity(enum.Enum):
    POSITIVE = "positive"
    NEGATIVE = "negative"

    @property
    def letter(self) -> str:
        return "P" if self is Polarity.POSITIVE else "N"


@functools.total_ordering
@dataclass(frozen=True)
class MapSignature:
    """Polarity 4-tuple in canonical quadrant order.

    Ordered as a big-endian 4-bit integer with POSITIVE=1, so ``PNNN`` is 8.
    """

    bits: Tuple[Polarity, Polarity, Polarity, Polarity]

    def __post_init__(self) -> None:
        if len(self.bits) != len(QUADRANTS) or not all(isinstance(b, Polarity) for b in self.bits):
            raise ValueError(f"signature needs four Polarity values, got {self.bits!r}")

    @property
    def code(self) -> int:
        n = 0
        for bit in self.bits:
            n = (n << 1) | (bit is Polarity.POSITIVE)
        return n

    @classmethod
    def from_code(cls, code: int) -> "MapSignature":
        if not 0 <= code < 16:
            raise ValueError(f"signature code must be in 0..15, got {code}")
        return _SIGNATURES[code]

    @classmethod
    def parse(cls, text: str) -> "MapSignature":
        text = text.strip().upper()
        if len(text) != 4 or set(text) - {"P", "N"}:
            raise ValueError(f"signature must be four P/N letters, got {text!r}")
        return cls.from_code(int(text.replace("P", "1").replace("N", "0"), 2))

    def __getitem__(self, kind: QuadrantKind) -> Polarity:
        return self.bits[QUADRANTS.index(kind)]

    def __iter__(self) -> Iterator[Polarity]:
        return iter(self.bits)

    def __lt__(self, other: "MapSignature") -> bool:
        if not isinstance(other, MapSignature):
            return NotImplemented
        return self.code < other.code

    def __str__(self) -> str:
        return "".join(bit.letter for bit in self.bits)


_SIGNATURES = tuple(
    MapSignature(tuple(Polarity.POSITIVE if code >> (3 - i) & 1 else Polarity.NEGATIVE for i in range(4)))
    for code in range(16)
)


@dataclass(frozen=True)
class DemographicAttribute:
    name: str
    values: Tuple[str, ...]


@dataclass(frozen=True)
class DemographicSchema:
    """Ordered categorical attributes. Value order doubles as the mode tie-break order."""

    attributes: Tuple[DemographicAttribute, ...] = ()

    def __post_init__(self) -> None:
        names = [a.name for a in self.attributes]
        if len(set(names)) != len(names):
            raise ValueError(f"duplicate demographic attribute names in {names}")
        for attr in self.attributes:
            if not attr.values:
                raise ValueError(f"demographic attribute {attr.name!r} has no permitted values")
            if len(set(attr.values)) != len(attr.values):
                raise ValueError(f"demographic attribute {attr.name!r} repeats a value")

    @classmethod
    def from_mapping(cls, spec: Mapping[str, Sequence[str]]) -> "DemographicSchema":
        return cls(tuple(DemographicAttribute(k, tuple(v)) for k, v in spec.items()))

    @property
    def names(self) -> Tuple[str, ...]:
        return tuple(a.name for a in self.attributes)

    def get(self, name: str) -> DemographicAttribute:
        for attr in self.attributes:
            if attr.name == name:
                return attr
        raise KeyError(name)


DEFAULT_SCHEMA = DemographicSchema.from_mapping(
    {
        "age_band": ["18-24", "25-34", "35-44", "45-54", "55+"],
        "gender": ["F", "M", "Other"],
        "schooling": ["HighSchool", "BSc", "MSc", "PhD"],
    }
)


@dataclass(frozen=True)
class SurveyResponse:
    """One respondent: demographics plus eight Likert answers.

    ``answers`` holds the eight scores in ``ANSWER_COLUMNS`` order.
    """

    respondent_id: str
    demographics: Dict[str, str]
    answers: Tuple[int, ...]

    def pair(self, kind: QuadrantKind) -> Tuple[int, int]:
        i = 2 * QUADRANTS.index(kind)
        return self.answers[i], self.answers[i + 1]

    def answer(self, kind: QuadrantKind, position: int) -> int:
        return self.pair(kind)[position - 1]


class Audience(enum.Enum):
    USER = "user"
    DESIGNER = "designer"


class Construct(enum.Enum):
    SIMILARITY = "similarity"
    EMPATHY = "empathy"
    LIKABILITY = "likability"
    CREDIBILITY = "credibility"
    COMPLETENESS = "completeness"
    CLARITY = "clarity"
    # representable, not part of either default instrument
    CONSISTENCY = "consistency"
    WILLINGNESS = "willingness"

    @property
    def label(self) -> str:
        return self.value.capitalize()


@dataclass(frozen=True)
class PPSItem:
    item_id: str
    construct: Construct
    text: str


@dataclass(frozen=True)
class PPSInstrument:
    audience: Audience
    items: Tuple[PPSItem, ...]

    def __post_init__(self) -> None:
        ids = [item.item_id for item in self.items]
        if len(set(ids)) != len(ids):
            raise ValueError(f"duplicate item ids in {self.audience.value} instrument")
        if not ids:
            raise ValueError(f"{self.audience.value} instrument has no items")

    @property
    def item_ids(self) -> Tuple[str, ...]:
        return tuple(item.item_id for item in self.items)

    @property
    def constructs(self) -> Tuple[Construct, ...]:
        seen: Dict[Construct, None] = {}
        for item in self.items:
            seen.setdefault(item.construct, None)
        return tuple(seen)

    def items_for(self, construct: Construct) -> Tuple[PPSItem, ...]:
        return tuple(item for item in self.items if item.construct is construct)

    def item(self, item_id: str) -> PPSItem:
        for item in self.items:
            if item.item_id == item_id:
                return item
        raise KeyError(item_id)


def _instrument(audience: Audience, rows: Sequence[Tuple[str, Construct, str]]) -> PPSInstrument:
    return PPSInstrument(audience, tuple(PPSItem(*row) for row in rows))


USER_INSTRUMENT = _instrument(
    Audience.USER,
    [
        ("sim_1", Construct.SIMILARITY, "This persona feels similar to myself."),
        ("sim_2", Construct.SIMILARITY, "The persona and I think alike."),
        ("sim_3", Construct.SIMILARITY, "The persona and I share similar interests."),
        ("sim_4", Construct.SIMILARITY, "I believe I would agree with this persona on most matters."),
        ("emp_1", Construct.EMPATHY, "I feel like I understand this persona."),
        ("emp_2", Construct.EMPATHY, "I feel strong ties to this persona."),
        ("emp_3", Construct.EMPATHY, "I can imagine a day in the life of this persona."),
        ("lik_1", Construct.LIKABILITY, "I find this persona likable."),
        ("lik_2", Construct.LIKABILITY, "I could be friends with this persona."),
        ("lik_3", Construct.LIKABILITY, "This persona is interesting."),
        ("lik_4", Construct.LIKABILITY, "This persona feels like someone I could spend time with."),
    ],
)

DESIGNER_INSTRUMENT = _instrument(
    Audience.DESIGNER,
    [
        ("cred_1", Construct.CREDIBILITY, "Those personas seem like real people."),
        ("cred_2", Construct.CREDIBILITY, "I have met people like those personas."),
        ("cred_3", Construct.CREDIBILITY, "The picture of those personas looks authentic."),
        ("cred_4", Construct.CREDIBILITY, "Those personas seem to have a personality."),
        ("comp_1", Construct.COMPLETENESS,
         "Those personas profiles are detailed enough to make decisions about the customers they describe."),
        ("comp_2", Construct.COMPLETENESS, "Those personas profiles seem complete."),
        ("comp_3", Construct.COMPLETENESS,
         "Those personas profiles provide enough information to understand the people they describe."),
        ("comp_4", Construct.COMPLETENESS, "Those personas profiles are not missing vital information."),
        ("clar_1", Construct.CLARITY, "The information about the personas is well presented."),
        ("clar_2", Construct.CLARITY, "The text in the persona's profile is clear enough to read."),
        ("clar_3", Construct.CLARITY, "The information in the persona's profile is easy to understand."),
        ("clar_4", Construct.CLARITY, "Those personas are memorable."),
    ],
)

DEFAULT_INSTRUMENTS = {Audience.USER: USER_INSTRUMENT, Audience.DESIGNER: DESIGNER_INSTRUMENT}


@dataclass(frozen=True)
class PPSResponse:
    participant_id: str
    audience: Audience
    scores: Dict[str, int]
    selected_persona: Optional[str] = None


DEFAULT_NAME_POOL: Tuple[str, ...] = (
    "Marcos Assis",
    "Renata Silva",
    "Mateus Umbelino",
    "Rodrigo Rodrigues",
    "Felipe Rabelo",
)

DEFAULT_FORMATS: Tuple[str, ...] = ("markdown", "html", "json")


@dataclass(frozen=True)
class RunConfig:
    schema: DemographicSchema = DEFAULT_SCHEMA
    scoring_mode: ScoringMode = ScoringMode.LITERAL
    name_pool: Tuple[str, ...] = DEFAULT_NAME_POOL
    output_dir: str = "out"
    report_formats: Tuple[str, ...] = DEFAULT_FORMATS
    allow_missing_items: bool = False
    allow_empty_audience: bool = False
    narratives: Optional[Mapping] = None
    instruments: Mapping[Audience, PPSInstrument] = field(
        default_factory=lambda: dict(DEFAULT_INSTRUMENTS)
    )
