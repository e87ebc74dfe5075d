"""Static SVG rendering of a point set and its matching segments."""

from __future__ import annotations

from typing import Sequence

from .geometry import ScaledPoint

_CANVAS = 800.0
_MARGIN = 40.0


def matching_svg(points: Sequence[ScaledPoint],
                 pairs: Sequence[tuple[int, int]]) -> str:
    """One circle per point and one line per matched pair, y-axis flipped."""
    xs = [p.x for p in points]
    ys = [p.y for p in points]
    xmin, xmax = min(xs), max(xs)
    ymin, ymax = min(ys), max(ys)
    span = max(xmax - xmin, ymax - ymin, 1)
    scale = (_CANVAS - 2 * _MARGIN) / span

    def sx(x: int) -> float:
        return _MARGIN + (x - xmin) * scale

    def sy(y: int) -> float:
        return _CANVAS - _MARGIN - (y - ymin) * scale

    radius = max(2.0, min(6.0, 120.0 / max(len(points), 1) ** 0.5))
    out = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{_CANVAS:.0f}" '
        f'height="{_CANVAS:.0f}" viewBox="0 0 {_CANVAS:.0f} {_CANVAS:.0f}">'
    ]
    for a, b in pairs:
        pa, pb = points[a], points[b]
        out.append(
            f'<line x1="{sx(pa.x):.2f}" y1="{sy(pa.y):.2f}" '
            f'x2="{sx(pb.x):.2f}" y2="{sy(pb.y):.2f}" '
            'stroke="#c0392b" stroke-width="1.5"/>'
        )
    for p in points:
        out.append(
            f'<circle cx="{sx(p.x):.2f}" cy="{sy(p.y):.2f}" r="{radius:.2f}" '
            'fill="#2c3e50"/>'
        )
    out.append("</svg>")
    return "\n".join(out) + "\n"
