"""Persona synthesis from grouped empathy maps."""
from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, List, Mapping, Optional, Sequence, Tuple

from .empathy import PersonaGroup
from .errors import GroupEmpty, UnknownMemberId
from .model import (
    QUADRANTS,
    DemographicSchema,
    MapSignature,
    Polarity,
    QuadrantKind,
    RunConfig,
    SurveyResponse,
)

NarrativeTable = Mapping[Tuple[QuadrantKind, Polarity], str]

DEFAULT_NARRATIVES: Dict[Tuple[QuadrantKind, Polarity], str] = {
    (QuadrantKind.DOES, Polarity.POSITIVE): "Tends to follow the recommendation provided by the software.",
    (QuadrantKind.DOES, Polarity.NEGATIVE): "Tends not to follow the recommendation, makes his decisions alone.",
    (QuadrantKind.THINKS, Polarity.POSITIVE): "Tends to believe that systems should explain its recommendations.",
    (QuadrantKind.THINKS, Polarity.NEGATIVE): "Tends not to care about software explanations of its recommendations.",
    (QuadrantKind.FEELS, Polarity.POSITIVE): "Feels more comfortable following a well-explained recommendation.",
    (QuadrantKind.FEELS, Polarity.NEGATIVE): "A well-explained recommendation does not change his decision to follow it.",
    (QuadrantKind.SAYS, Polarity.POSITIVE): "Says that explanations must be provided to users who are interested.",
    (QuadrantKind.SAYS, Polarity.NEGATIVE): "It says that explanations should not be obligatorily provided.",
}


def check_narratives(table: NarrativeTable) -> None:
    for kind in QUADRANTS:
        for pol in Polarity:
            text = table.get((kind, pol))
            if not isinstance(text, str) or not text.strip():
                raise ValueError(f"narrative table has no text for {kind.value}/{pol.value}")


@dataclass(frozen=True)
class Persona:
    name: str
    demographics: Dict[str, str]
    narratives: Tuple[str, str, str, str]
    signature: MapSignature
    size: int
    fraction: Fraction
    avatar: str

    @property
    def percent(self) -> str:
        return format_percent(self.fraction)


def format_percent(fraction: Fraction) -> str:
    """Percentage with one decimal, rounding half up on the exact value."""
    num, den = fraction.numerator * 1000, fraction.denominator
    tenths = (2 * num + den) // (2 * den)
    return f"{tenths // 10}.{tenths % 10}%"


def initials(name: str) -> str:
    return "".join(word[0].upper() for word in name.split() if word[0].isalnum())


def modal_demographics(
    group: PersonaGroup,
    responses: Mapping[str, SurveyResponse],
    schema: DemographicSchema,
) -> Dict[str, str]:
    """Most frequent value of each attribute among the group's members.

    Ties go to the value declared first in the schema.
    """
    if not group.member_ids:
        raise GroupEmpty("cannot take the mode of an empty group")
    members = []
    for rid in group.member_ids:
        try:
            members.append(responses[rid])
        except KeyError:
            raise UnknownMemberId(f"group member {rid!r} has no survey response") from None
    names = [attr.name for attr in schema.attributes]
    # count whole demographic rows once, then read each attribute's marginal
    joint = Counter(tuple(r.demographics[n] for n in names) for r in members)
    modes = {}
    for i, attr in enumerate(schema.attributes):
        counts: Counter = Counter()
        for combo, k in joint.items():
            counts[combo[i]] += k
        modes[attr.name] = max(attr.values, key=lambda v: (counts[v], -attr.values.index(v)))
    return modes


def quadrant_narrative(
    kind: QuadrantKind, polarity: Polarity, table: Optional[NarrativeTable] = None
) -> str:
    return (table or DEFAULT_NARRATIVES)[(kind, polarity)]


def synthesize(
    groups: Sequence[PersonaGroup],
    responses: Mapping[str, SurveyResponse],
    config: Optional[RunConfig] = None,
) -> List[Persona]:
    """One persona per group, named from the pool in group order.

    Groups beyond the pool are named ``Persona <signature code>``.
    """
    config = config or RunConfig()
    schema, name_pool = config.schema, config.name_pool
    table = config.narratives or DEFAULT_NARRATIVES
    check_narratives(table)
    personas = []
    used = set()
    for i, group in enumerate(groups):
        name = name_pool[i] if i < len(name_pool) else f"Persona {group.signature.code}"
        if name in used:
            raise ValueError(f"persona name {name!r} assigned twice")
        used.add(name)
        personas.append(
            Persona(
                name=name,
                demographics=modal_demographics(group, responses, schema),
                narratives=tuple(quadrant_narrative(k, group.signature[k], table) for k in QUADRANTS),
                signature=group.signature,
                size=group.size,
                fraction=group.fraction,
                avatar=initials(name),
            )
        )
    return personas


def persona_to_json(p: Persona) -> dict:
    return {
        "name": p.name,
        "signature": str(p.signature),
        "size": p.size,
        "fraction_num": p.fraction.numerator,
        "fraction_den": p.fraction.denominator,
        "demographics": dict(p.demographics),
        "narratives": list(p.narratives),
        "avatar": p.avatar,
    }


def persona_from_json(record: Mapping) -> Persona:
    narratives = tuple(record["narratives"])
    if len(narratives) != len(QUADRANTS):
        raise ValueError(f"persona {record.get('name')!r} needs four narratives")
    return Persona(
        name=record["name"],
        demographics=dict(record["demographics"]),
        narratives=narratives,
        signature=MapSignature.parse(record["signature"]),
        size=int(record["size"]),
        fraction=Fraction(int(record["fraction_num"]), int(record["fraction_den"])),
        avatar=record["avatar"],
    )
