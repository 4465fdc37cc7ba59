"""Figure data and SVG rendering for group sizes, construct means and item boxplots.

Each chart is drawn only from its figure-data dict, and that dict is what
gets exported as JSON, so every number on a chart has one source.
"""
from __future__ import annotations

from fractions import Fraction
from typing import Mapping, Sequence, Union

from ..empathy import PersonaGroup
from ..errors import EmptyInput, MissingItemStats
from ..model import LIKERT_MAX, LIKERT_MIDPOINT, LIKERT_MIN, PPSInstrument
from ..persona import Persona, format_percent
from ..pps import BoxplotStats, ConstructStats
from . import svg as S

SCALE_TICKS = list(range(LIKERT_MIN, LIKERT_MAX + 1))


def _mean_label(value: float) -> str:
    return f"{value:.2f}"


def group_figure(groups: Sequence[Union[Persona, PersonaGroup]]) -> dict:
    if not groups:
        raise EmptyInput("no groups to chart")
    bars = []
    for g in groups:
        name = g.name if isinstance(g, Persona) else str(g.signature)
        fraction = Fraction(g.fraction)
        percent = format_percent(fraction)
        bars.append(
            {
                "name": name,
                "signature": str(g.signature),
                "size": g.size,
                "percent": percent,
                "label": f"{g.size} ({percent})",
            }
        )
    bars.sort(key=lambda b: -b["size"])
    return {
        "figure": "groups",
        "title": "Respondents aggregated into each persona",
        "x_label": "Number of respondents",
        "bars": bars,
    }


def render_group_chart_data(fig: Mapping) -> str:
    bars = fig["bars"]
    doc = S.Svg(fig["title"])
    left = 200
    right = S.WIDTH - 140
    top = S.MARGIN_TOP
    slot = (S.HEIGHT - S.MARGIN_TOP - S.MARGIN_BOTTOM) / len(bars)
    biggest = max(b["size"] for b in bars)
    doc.text(S.WIDTH / 2, 28, fig["title"], text_anchor="middle", font_size=16)
    for i, bar in enumerate(bars):
        y = top + i * slot
        h = slot * 0.7
        w = (right - left) * bar["size"] / biggest
        doc.text(left - 10, y + h / 2 + 4, bar["name"], text_anchor="end")
        doc.rect(left, y, w, h, fill=S.BAR_FILL)
        doc.text(left + w + 8, y + h / 2 + 4, bar["label"])
    doc.line(left, top - 5, left, S.HEIGHT - S.MARGIN_BOTTOM, stroke=S.STROKE)
    doc.text((left + right) / 2, S.HEIGHT - 20, fig["x_label"], text_anchor="middle")
    return doc.render()


def render_group_chart(groups: Sequence[Union[Persona, PersonaGroup]]) -> str:
    return render_group_chart_data(group_figure(groups))


def _clamp(v: float) -> float:
    return min(max(v, LIKERT_MIN), LIKERT_MAX)


def construct_figure(stats: Sequence[ConstructStats], audience: str) -> dict:
    if not any(s.key == "overall" for s in stats):
        raise ValueError("construct chart needs the overall statistics")
    bars = []
    for s in stats:
        if s.ci95 is None:
            shown = None
        else:
            shown = [_clamp(s.ci95[0]), _clamp(s.ci95[1])]
        bars.append(
            {
                "construct": s.key,
                "label": s.label,
                "n": s.n,
                "mean": s.mean,
                "mean_label": _mean_label(s.mean),
                "ci95": None if s.ci95 is None else list(s.ci95),
                "ci95_display": shown,
            }
        )
    # overall always last
    bars.sort(key=lambda b: b["construct"] == "overall")
    return {
        "figure": "constructs",
        "audience": audience,
        "title": f"Average agreement per construct ({audience}s)",
        "y_range": [LIKERT_MIN, LIKERT_MAX],
        "y_ticks": SCALE_TICKS,
        "reference_line": LIKERT_MIDPOINT,
        "bars": bars,
    }


def construct_y(score: float) -> float:
    """Pixel y for a Likert score on the construct chart."""
    top, bottom = S.MARGIN_TOP, S.HEIGHT - S.MARGIN_BOTTOM
    return bottom - (score - LIKERT_MIN) / (LIKERT_MAX - LIKERT_MIN) * (bottom - top)


def render_construct_chart_data(fig: Mapping) -> str:
    doc = S.Svg(fig["title"])
    left, right = S.MARGIN_LEFT, S.WIDTH - S.MARGIN_RIGHT
    doc.text(S.WIDTH / 2, 28, fig["title"], text_anchor="middle", font_size=16)
    for tick in fig["y_ticks"]:
        y = construct_y(tick)
        doc.line(left - 5, y, left, y, stroke=S.STROKE)
        doc.text(left - 10, y + 4, str(tick), text_anchor="end")
    doc.line(left, construct_y(LIKERT_MAX), left, construct_y(LIKERT_MIN), stroke=S.STROKE)
    doc.line(left, construct_y(LIKERT_MIN), right, construct_y(LIKERT_MIN), stroke=S.STROKE)

    slot = (right - left) / len(fig["bars"])
    for i, bar in enumerate(fig["bars"]):
        cx = left + (i + 0.5) * slot
        w = slot * 0.5
        y = construct_y(_clamp(bar["mean"]))
        doc.rect(cx - w / 2, y, w, construct_y(LIKERT_MIN) - y, fill=S.BAR_FILL)
        if bar["ci95_display"] is not None:
            lo, hi = (construct_y(v) for v in bar["ci95_display"])
            doc.line(cx, lo, cx, hi, stroke=S.STROKE, stroke_width=1.5)
            doc.line(cx - 8, lo, cx + 8, lo, stroke=S.STROKE, stroke_width=1.5)
            doc.line(cx - 8, hi, cx + 8, hi, stroke=S.STROKE, stroke_width=1.5)
            label_y = min(y, hi) - 8
        else:
            label_y = y - 8
        doc.text(cx + w / 2 + 4, label_y, bar["mean_label"])
        doc.text(cx, construct_y(LIKERT_MIN) + 20, bar["label"], text_anchor="middle")

    ref = construct_y(fig["reference_line"])
    doc.line(left, ref, right, ref, stroke=S.STROKE, stroke_dasharray="6,4", class_="reference")
    doc.text(20, (S.MARGIN_TOP + S.HEIGHT - S.MARGIN_BOTTOM) / 2, "Average agreement",
             text_anchor="middle", transform=f"rotate(-90 20 {S.num((S.MARGIN_TOP + S.HEIGHT - S.MARGIN_BOTTOM) / 2)})")
    return doc.render()


def render_construct_chart(stats: Sequence[ConstructStats], audience: str) -> str:
    return render_construct_chart_data(construct_figure(stats, audience))


def boxplot_figure(item_stats: Sequence[BoxplotStats], instrument: PPSInstrument) -> dict:
    by_id = {b.item_id: b for b in item_stats}
    missing = [i for i in instrument.item_ids if i not in by_id]
    if missing:
        raise MissingItemStats(f"no boxplot statistics for {', '.join(missing)}")
    rows = []
    for item in instrument.items:
        b = by_id[item.item_id]
        rows.append({"item_id": item.item_id, "construct": item.construct.value, "statement": item.text,
                     **{k: v for k, v in b.to_json().items() if k != "item_id"}})
    return {
        "figure": "items",
        "audience": instrument.audience.value,
        "title": f"Distribution of {instrument.audience.value} responses per item",
        "x_range": [LIKERT_MIN, LIKERT_MAX],
        "x_ticks": SCALE_TICKS,
        "rows": rows,
    }


def boxplot_x(score: float) -> float:
    left, right = S.MARGIN_LEFT, S.WIDTH - S.MARGIN_RIGHT
    return left + (score - LIKERT_MIN) / (LIKERT_MAX - LIKERT_MIN) * (right - left)


def render_boxplot_chart_data(fig: Mapping) -> str:
    doc = S.Svg(fig["title"])
    rows = fig["rows"]
    top, bottom = S.MARGIN_TOP, S.HEIGHT - S.MARGIN_BOTTOM
    slot = (bottom - top) / len(rows)
    doc.text(S.WIDTH / 2, 28, fig["title"], text_anchor="middle", font_size=16)
    for tick in fig["x_ticks"]:
        x = boxplot_x(tick)
        doc.line(x, top, x, bottom, stroke=S.GRID, stroke_width=0.5)
        doc.text(x, bottom + 18, str(tick), text_anchor="middle")
    for i, row in enumerate(rows):
        y0 = top + i * slot
        doc.text(S.MARGIN_LEFT, y0 + S.FONT_SIZE, row["statement"], class_="item-label")
        box_top = y0 + S.FONT_SIZE + 4
        h = max(slot - S.FONT_SIZE - 8, 4)
        mid = box_top + h / 2
        doc.line(boxplot_x(row["min"]), mid, boxplot_x(row["q1"]), mid, stroke=S.STROKE)
        doc.line(boxplot_x(row["q3"]), mid, boxplot_x(row["max"]), mid, stroke=S.STROKE)
        for end in (row["min"], row["max"]):
            doc.line(boxplot_x(end), box_top + h * 0.25, boxplot_x(end), box_top + h * 0.75, stroke=S.STROKE)
        doc.rect(boxplot_x(row["q1"]), box_top, boxplot_x(row["q3"]) - boxplot_x(row["q1"]), h,
                 fill=S.BOX_FILL, stroke=S.STROKE, class_="box")
        doc.line(boxplot_x(row["median"]), box_top, boxplot_x(row["median"]), box_top + h,
                 stroke=S.STROKE, stroke_width=2)
        for value in row["outliers"]:
            doc.circle(boxplot_x(value), mid, 3, fill="none", stroke=S.STROKE, class_="outlier")
    doc.text((S.MARGIN_LEFT + S.WIDTH - S.MARGIN_RIGHT) / 2, S.HEIGHT - 15, "Level of agreement",
             text_anchor="middle")
    return doc.render()


def render_boxplot_chart(item_stats: Sequence[BoxplotStats], instrument: PPSInstrument) -> str:
    return render_boxplot_chart_data(boxplot_figure(item_stats, instrument))
