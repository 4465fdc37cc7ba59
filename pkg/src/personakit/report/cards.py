"""Persona cards in Markdown, HTML and JSON."""
from __future__ import annotations

import json
import re
import unicodedata
from html import escape
from typing import Dict, Sequence

from ..errors import EmptyPersonaSet
from ..model import QUADRANTS
from ..persona import Persona, persona_to_json

CARD_FORMATS = {"markdown": "md", "html": "html", "json": "json"}


def slug(name: str) -> str:
    ascii_name = unicodedata.normalize("NFKD", name).encode("ascii", "ignore").decode()
    return re.sub(r"[^a-z0-9]+", "-", ascii_name.lower()).strip("-") or "persona"


def prevalence(p: Persona) -> str:
    return f"{p.percent} of respondents ({p.size})"


def card_markdown(p: Persona) -> str:
    lines = [f"# {p.name}", "", f"**[{p.avatar}]** · signature `{p.signature}` · {prevalence(p)}", ""]
    if p.demographics:
        lines += ["## Profile", ""]
        lines += [f"- **{attr}**: {value}" for attr, value in p.demographics.items()]
        lines.append("")
    lines += ["## Empathy map", ""]
    lines += [f"- **{kind.label}**: {text}" for kind, text in zip(QUADRANTS, p.narratives)]
    return "\n".join(lines) + "\n"


def _avatar_svg(initials: str) -> str:
    return (
        '<svg class="avatar" xmlns="http://www.w3.org/2000/svg" width="64" height="64" viewBox="0 0 64 64">'
        '<circle cx="32" cy="32" r="32" fill="#4c72b0"/>'
        '<text x="32" y="40" text-anchor="middle" font-family="sans-serif" font-size="22" fill="#ffffff">'
        f"{escape(initials)}</text></svg>"
    )


def _card_html_fragment(p: Persona) -> str:
    parts = [
        '<section class="persona">',
        _avatar_svg(p.avatar),
        f"<h2>{escape(p.name)}</h2>",
        f'<p class="prevalence">{escape(prevalence(p))} &middot; signature <code>{p.signature}</code></p>',
    ]
    if p.demographics:
        parts.append("<dl>")
        for attr, value in p.demographics.items():
            parts.append(f"<dt>{escape(attr)}</dt><dd>{escape(value)}</dd>")
        parts.append("</dl>")
    parts.append("<ul>")
    for kind, text in zip(QUADRANTS, p.narratives):
        parts.append(f"<li><strong>{kind.label}:</strong> {escape(text)}</li>")
    parts += ["</ul>", "</section>"]
    return "\n".join(parts)


_STYLE = (
    "body{font-family:sans-serif;font-size:14px;max-width:760px;margin:2em auto;color:#222}"
    ".persona{border:1px solid #ccc;border-radius:8px;padding:1em;margin-bottom:1.5em}"
    ".avatar{float:right}dt{font-weight:bold}"
)


def _html_page(title: str, body: str) -> str:
    return (
        "<!DOCTYPE html>\n<html lang=\"en\">\n<head>\n<meta charset=\"utf-8\">\n"
        f"<title>{escape(title)}</title>\n<style>{_STYLE}</style>\n</head>\n<body>\n"
        f"{body}\n</body>\n</html>\n"
    )


def card_html(p: Persona) -> str:
    return _html_page(p.name, _card_html_fragment(p))


def card_json(p: Persona) -> str:
    return json.dumps(persona_to_json(p), indent=2, ensure_ascii=False) + "\n"


def personas_json(personas: Sequence[Persona]) -> str:
    return json.dumps([persona_to_json(p) for p in personas], indent=2, ensure_ascii=False) + "\n"


def render_cards(personas: Sequence[Persona], fmt: str = "markdown") -> Dict[str, str]:
    """Card documents keyed by file name, one per persona plus a combined sheet."""
    if not personas:
        raise EmptyPersonaSet("no personas to render")
    if fmt not in CARD_FORMATS:
        raise ValueError(f"unknown card format {fmt!r}")
    ext = CARD_FORMATS[fmt]
    docs = {}
    for p in personas:
        if fmt == "markdown":
            docs[f"{slug(p.name)}.{ext}"] = card_markdown(p)
        elif fmt == "html":
            docs[f"{slug(p.name)}.{ext}"] = card_html(p)
        else:
            docs[f"{slug(p.name)}.{ext}"] = card_json(p)
    if fmt == "markdown":
        docs[f"all_personas.{ext}"] = "\n".join(card_markdown(p) for p in personas)
    elif fmt == "html":
        docs[f"all_personas.{ext}"] = _html_page("Personas", "\n".join(_card_html_fragment(p) for p in personas))
    else:
        docs[f"all_personas.{ext}"] = personas_json(personas)
    if len(docs) != len(personas) + 1:
        raise ValueError("two personas map to the same card file name")
    return docs
