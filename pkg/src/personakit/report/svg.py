"""Minimal deterministic SVG builder and the shared layout constants."""
from __future__ import annotations

from typing import List
from xml.sax.saxutils import escape, quoteattr

WIDTH = 960
HEIGHT = 540
FONT_FAMILY = "sans-serif"
FONT_SIZE = 12
MARGIN_LEFT = 80
MARGIN_RIGHT = 40
MARGIN_TOP = 50
MARGIN_BOTTOM = 60
BAR_FILL = "#4c72b0"
BOX_FILL = "#c6d4ea"
STROKE = "#222222"
GRID = "#bbbbbb"


def num(value: float) -> str:
    """Coordinate formatting: at most two decimals, no trailing zeros."""
    text = f"{value:.2f}".rstrip("0").rstrip(".")
    return "0" if text == "-0" else text


class Svg:
    def __init__(self, title: str, width: int = WIDTH, height: int = HEIGHT):
        self.width = width
        self.height = height
        self.parts: List[str] = []
        self.title = title

    def _attrs(self, **attrs) -> str:
        out = []
        for key, value in attrs.items():
            if value is None:
                continue
            if isinstance(value, float):
                value = num(value)
            out.append(f"{key.rstrip('_').replace('_', '-')}={quoteattr(str(value))}")
        return " ".join(out)

    def rect(self, x, y, w, h, **attrs) -> None:
        self.parts.append(f"<rect {self._attrs(x=float(x), y=float(y), width=float(w), height=float(h), **attrs)}/>")

    def line(self, x1, y1, x2, y2, **attrs) -> None:
        self.parts.append(
            f"<line {self._attrs(x1=float(x1), y1=float(y1), x2=float(x2), y2=float(y2), **attrs)}/>"
        )

    def circle(self, cx, cy, r, **attrs) -> None:
        self.parts.append(f"<circle {self._attrs(cx=float(cx), cy=float(cy), r=float(r), **attrs)}/>")

    def text(self, x, y, content: str, **attrs) -> None:
        self.parts.append(f"<text {self._attrs(x=float(x), y=float(y), **attrs)}>{escape(content)}</text>")

    def render(self) -> str:
        head = (
            f'<svg xmlns="http://www.w3.org/2000/svg" width="{self.width}" height="{self.height}" '
            f'viewBox="0 0 {self.width} {self.height}" '
            f'font-family="{FONT_FAMILY}" font-size="{FONT_SIZE}">'
        )
        body = [
            head,
            f"<title>{escape(self.title)}</title>",
            f'<rect x="0" y="0" width="{self.width}" height="{self.height}" fill="#ffffff"/>',
            *self.parts,
            "</svg>",
        ]
        return "\n".join(body) + "\n"
