from __future__ import annotations

import csv
import io
import json
from pathlib import Path
from typing import Dict, List, Sequence, Tuple

import numpy as np
import pytest

from personakit.model import (
    ANSWER_COLUMNS,
    DEFAULT_NAME_POOL,
    DEFAULT_SCHEMA,
    DESIGNER_INSTRUMENT,
    USER_INSTRUMENT,
    PPSInstrument,
)

# answers producing each polarity, per quadrant (DOES averages, others subtract)
POSITIVE_PAIR = {"does": (4, 3), "other": (5, 2)}
NEGATIVE_PAIR = {"does": (2, 2), "other": (3, 4)}

FIG2_SIGNATURES = [(15, 21), (8, 14), (14, 11), (10, 10), (0, 5)]


def answers_for_code(code: int) -> Tuple[int, ...]:
    out: List[int] = []
    for i, quadrant in enumerate(("does", "thinks", "feels", "says")):
        positive = code >> (3 - i) & 1
        key = "does" if quadrant == "does" else "other"
        out += (POSITIVE_PAIR if positive else NEGATIVE_PAIR)[key]
    return tuple(out)


def demographics_for(i: int) -> Dict[str, str]:
    ages = DEFAULT_SCHEMA.get("age_band").values
    genders = DEFAULT_SCHEMA.get("gender").values
    schools = DEFAULT_SCHEMA.get("schooling").values
    return {
        "age_band": ages[(i * 7) % 3 + 1],
        "gender": genders[0 if i % 5 < 2 else 1],
        "schooling": schools[(i * 3) % 4],
    }


def survey_csv(rows: Sequence[Tuple[str, Dict[str, str], Sequence[int]]], schema=DEFAULT_SCHEMA) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["respondent_id", *schema.names, *ANSWER_COLUMNS])
    for rid, demo, answers in rows:
        w.writerow([rid, *(demo[n] for n in schema.names), *answers])
    return buf.getvalue()


def signature_rows(multiplicities: Sequence[Tuple[int, int]]):
    rows = []
    i = 0
    # interleave so group members are not contiguous in the file
    remaining = {code: count for code, count in multiplicities}
    while any(remaining.values()):
        for code, _ in multiplicities:
            if remaining[code]:
                remaining[code] -= 1
                rows.append((f"r{i:03d}", demographics_for(i), answers_for_code(code)))
                i += 1
    return rows


def fig2_survey_csv() -> str:
    return survey_csv(signature_rows(FIG2_SIGNATURES))


def exhaustive_survey_csv() -> str:
    return survey_csv(signature_rows([(code, 1) for code in range(16)]))


def hit_total(matrix: np.ndarray, target: int, rng: np.random.Generator) -> np.ndarray:
    """Nudge cells by +-1 until the matrix sums to ``target``; stays in 1..5."""
    m = matrix.copy()
    while m.sum() != target:
        step = 1 if m.sum() < target else -1
        r = rng.integers(m.shape[0])
        c = rng.integers(m.shape[1])
        if 1 <= m[r, c] + step <= 5:
            m[r, c] += step
    return m


def pps_matrix(instrument: PPSInstrument, n: int, centres: Dict[str, float], seed: int, target_mean=None):
    rng = np.random.default_rng(seed)
    cols = []
    for item in instrument.items:
        centre = centres[item.construct.value]
        cols.append(np.clip(np.rint(rng.normal(centre, 0.9, n)), 1, 5).astype(int))
    m = np.column_stack(cols)
    if target_mean is not None:
        target = round(target_mean * m.size)
        assert abs(target - target_mean * m.size) < 1e-9
        m = hit_total(m, target, rng)
    return m


USER_CENTRES = {"similarity": 3.6, "empathy": 3.5, "likability": 4.0}
DESIGNER_CENTRES = {"credibility": 3.6, "completeness": 3.0, "clarity": 3.9}


def pps_csv(instrument: PPSInstrument, matrix: np.ndarray, selections=None, prefix="p") -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["participant_id", "audience", "selected_persona", "item_id", "score"])
    for i, row in enumerate(matrix):
        sel = selections[i] if selections is not None else ""
        for item_id, score in zip(instrument.item_ids, row):
            w.writerow([f"{prefix}{i:03d}", instrument.audience.value, sel, item_id, int(score)])
    return buf.getvalue()


def user_selections(n: int) -> List[str]:
    weights = [0.34, 0.23, 0.18, 0.17, 0.08]
    counts = [round(w * n) for w in weights]
    counts[0] += n - sum(counts)
    out = []
    for name, count in zip(DEFAULT_NAME_POOL, counts):
        out += [name] * count
    return out


def user_pps_csv(n: int = 60, target_mean: float = 3.7) -> str:
    m = pps_matrix(USER_INSTRUMENT, n, USER_CENTRES, seed=60, target_mean=target_mean)
    return pps_csv(USER_INSTRUMENT, m, user_selections(n), prefix="u")


def designer_pps_csv(n: int = 38, target_mean: float = 3.5) -> str:
    m = pps_matrix(DESIGNER_INSTRUMENT, n, DESIGNER_CENTRES, seed=38, target_mean=target_mean)
    return pps_csv(DESIGNER_INSTRUMENT, m, prefix="d")


@pytest.fixture
def fixture_tree(tmp_path: Path) -> Dict[str, Path]:
    paths = {
        "survey": tmp_path / "survey.csv",
        "users": tmp_path / "pps_users.csv",
        "designers": tmp_path / "pps_designers.csv",
        "config": tmp_path / "config.json",
    }
    paths["survey"].write_text(fig2_survey_csv())
    paths["users"].write_text(user_pps_csv())
    paths["designers"].write_text(designer_pps_csv())
    paths["config"].write_text(json.dumps({}))
    return paths
