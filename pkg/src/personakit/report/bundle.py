"""Assemble the full report tree and write it atomically."""
from __future__ import annotations

import hashlib
import json
import os
import tempfile
from pathlib import Path
from typing import Dict, Mapping, Optional, Sequence

from ..model import Audience, PPSInstrument
from ..persona import Persona
from ..pps import BoxplotStats, ConstructStats
from . import charts
from .cards import render_cards

FIGURE_FILES = {
    "groups": "fig2_groups",
    (Audience.USER, "constructs"): "fig3_user_constructs",
    (Audience.DESIGNER, "constructs"): "fig4_designer_constructs",
    (Audience.USER, "items"): "fig5_user_items",
    (Audience.DESIGNER, "items"): "fig6_designer_items",
}


def dump_json(doc) -> str:
    return json.dumps(doc, indent=2, ensure_ascii=False) + "\n"


def build_report(
    personas: Sequence[Persona],
    stats: Optional[Mapping] = None,
    instruments: Optional[Mapping[Audience, PPSInstrument]] = None,
    formats: Sequence[str] = ("markdown", "html", "json"),
) -> Dict[str, str]:
    """Every report file as ``relative path -> text``; nothing touches disk."""
    files: Dict[str, str] = {}
    for fmt in formats:
        for name, text in render_cards(personas, fmt).items():
            files[f"personas/{name}"] = text

    figures = {FIGURE_FILES["groups"]: (charts.group_figure(personas), charts.render_group_chart_data)}
    for audience in Audience:
        block = (stats or {}).get(audience.value)
        if not block:
            continue
        cstats = [ConstructStats.from_json(r) for r in block["constructs"]]
        cstats.append(ConstructStats.from_json(block["overall"]))
        figures[FIGURE_FILES[(audience, "constructs")]] = (
            charts.construct_figure(cstats, audience.value),
            charts.render_construct_chart_data,
        )
        items = [BoxplotStats.from_json(r) for r in block["items"]]
        figures[FIGURE_FILES[(audience, "items")]] = (
            charts.boxplot_figure(items, instruments[audience]),
            charts.render_boxplot_chart_data,
        )
    for stem, (fig, render) in figures.items():
        files[f"figures/{stem}.svg"] = render(fig)
        files[f"data/{stem}.json"] = dump_json(fig)
    return dict(sorted(files.items()))


def write_atomic(path: Path, text: str) -> None:
    path.parent.mkdir(parents=True, exist_ok=True)
    fd, tmp = tempfile.mkstemp(dir=path.parent, prefix=f".{path.name}.", suffix=".tmp")
    try:
        with os.fdopen(fd, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(text)
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


def write_tree(out_dir: Path, files: Mapping[str, str]) -> None:
    for rel, text in files.items():
        write_atomic(Path(out_dir) / rel, text)


def tree_hash(root: Path) -> str:
    """SHA-256 over every file's relative path and bytes, in sorted order."""
    root = Path(root)
    h = hashlib.sha256()
    for path in sorted(p for p in root.rglob("*") if p.is_file()):
        h.update(path.relative_to(root).as_posix().encode())
        h.update(b"\0")
        h.update(path.read_bytes())
        h.update(b"\0")
    return h.hexdigest()
