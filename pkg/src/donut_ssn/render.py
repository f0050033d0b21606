"""Deterministic SVG emission of a donut aggregate.

Anatomy: 8 compass sectors of 45 degrees each, three concentric wedge rings
per sector (near innermost, far outermost), wedge fill shading the count, a
direction label per sector and the in-viewport node count at the center.
North renders at the top of the image; identical inputs yield identical
bytes (fixed element order, 6-decimal coordinates, no timestamps).
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Dict, List, Tuple
from xml.sax.saxutils import escape

from .model import (
    BUCKET_ORDER,
    Direction,
    DIRECTION_ORDER,
    DistanceBucket,
    DonutAggregate,
)

#: Mid-sector angle in data degrees (counterclockwise from East) per direction.
SECTOR_MID_ANGLE: Dict[Direction, float] = {
    Direction.E: 0.0,
    Direction.NE: 45.0,
    Direction.N: 90.0,
    Direction.NW: 135.0,
    Direction.W: 180.0,
    Direction.SW: 225.0,
    Direction.S: 270.0,
    Direction.SE: 315.0,
}


@dataclass(frozen=True)
class DonutStyle:
    """Geometry and color parameters; all radii are fractions of size/2."""

    size: int = 512
    hole_radius_frac: float = 0.20
    near_band: Tuple[float, float] = (0.20, 0.45)
    medium_band: Tuple[float, float] = (0.45, 0.70)
    far_band: Tuple[float, float] = (0.70, 0.95)
    zero_fill: str = "#ffffff"
    zero_stroke: str = "#cccccc"
    ramp_low: str = "#c6dbef"
    ramp_high: str = "#08306b"
    label_font_size: int = 14

    def __post_init__(self) -> None:
        bands = (self.near_band, self.medium_band, self.far_band)
        radii = [self.hole_radius_frac]
        for lo, hi in bands:
            radii.extend((lo, hi))
        if not (
            0.0 < self.hole_radius_frac
            and self.hole_radius_frac == self.near_band[0]
            and self.near_band[1] == self.medium_band[0]
            and self.medium_band[1] == self.far_band[0]
            and self.near_band[0] < self.near_band[1]
            and self.medium_band[0] < self.medium_band[1]
            and self.far_band[0] < self.far_band[1] <= 1.0
        ):
            raise ValueError("ring bands must be contiguous and increasing")

    def band(self, bucket: DistanceBucket) -> Tuple[float, float]:
        return {
            DistanceBucket.NEAR: self.near_band,
            DistanceBucket.MEDIUM: self.medium_band,
            DistanceBucket.FAR: self.far_band,
        }[bucket]


def _parse_hex(color: str) -> Tuple[int, int, int]:
    return int(color[1:3], 16), int(color[3:5], 16), int(color[5:7], 16)


def color_for(count: int, max_count: int, style: DonutStyle = DonutStyle()) -> str:
    """Wedge fill for a count: zero_fill at 0, otherwise a per-channel linear
    ramp between ramp_low and ramp_high at t = count / max_count, channels
    rounded half-up."""
    if count == 0:
        return style.zero_fill
    t = count / max_count
    low = _parse_hex(style.ramp_low)
    high = _parse_hex(style.ramp_high)
    channels = [int(lo + (hi - lo) * t + 0.5) for lo, hi in zip(low, high)]
    return "#{:02x}{:02x}{:02x}".format(*channels)


def _fmt(v: float) -> str:
    return f"{v:.6f}"


def _point(cx: float, cy: float, r: float, angle_deg: float) -> Tuple[float, float]:
    # Data angles are counterclockwise from East with y up; SVG y grows
    # downward, so flip the sine to keep North at the image top.
    a = math.radians(angle_deg)
    return cx + r * math.cos(a), cy - r * math.sin(a)


def _wedge_path(
    cx: float, cy: float, r0: float, r1: float, a0: float, a1: float
) -> str:
    """Annular sector between radii r0 < r1 spanning data angles a0..a1."""
    x0, y0 = _point(cx, cy, r1, a0)
    x1, y1 = _point(cx, cy, r1, a1)
    x2, y2 = _point(cx, cy, r0, a1)
    x3, y3 = _point(cx, cy, r0, a0)
    return (
        f"M {_fmt(x0)} {_fmt(y0)} "
        f"A {_fmt(r1)} {_fmt(r1)} 0 0 0 {_fmt(x1)} {_fmt(y1)} "
        f"L {_fmt(x2)} {_fmt(y2)} "
        f"A {_fmt(r0)} {_fmt(r0)} 0 0 1 {_fmt(x3)} {_fmt(y3)} Z"
    )


def render_donut(aggregate: DonutAggregate, style: DonutStyle = DonutStyle()) -> str:
    """Emit the complete SVG document for one aggregate.

    Exactly 24 wedge paths (zero-count wedges drawn in zero_fill so absence
    reads as signal), 8 direction labels, and the node count centered in the
    hole. Shading scales against the maximum cell in this aggregate.
    """
    size = style.size
    cx = cy = size / 2.0
    radius = size / 2.0
    max_count = max(
        aggregate.counts[d][b] for d in DIRECTION_ORDER for b in BUCKET_ORDER
    )

    parts: List[str] = [
        '<?xml version="1.0" encoding="UTF-8"?>',
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{size}" height="{size}" '
        f'viewBox="0 0 {size} {size}">',
    ]

    for direction in DIRECTION_ORDER:
        mid = SECTOR_MID_ANGLE[direction]
        a0, a1 = mid - 22.5, mid + 22.5
        for bucket in BUCKET_ORDER:
            lo, hi = style.band(bucket)
            count = aggregate.counts[direction][bucket]
            d = _wedge_path(cx, cy, radius * lo, radius * hi, a0, a1)
            if count == 0:
                parts.append(
                    f'<path d="{d}" fill="{style.zero_fill}" '
                    f'stroke="{style.zero_stroke}" stroke-width="1"/>'
                )
            else:
                parts.append(
                    f'<path d="{d}" fill="{color_for(count, max_count, style)}"/>'
                )

    label_r = radius * (style.far_band[1] + (1.0 - style.far_band[1]) / 2.0)
    for direction in DIRECTION_ORDER:
        lx, ly = _point(cx, cy, label_r, SECTOR_MID_ANGLE[direction])
        parts.append(
            f'<text x="{_fmt(lx)}" y="{_fmt(ly)}" font-family="sans-serif" '
            f'font-size="{style.label_font_size}" text-anchor="middle" '
            f'dominant-baseline="central">{escape(direction.value)}</text>'
        )

    parts.append(
        f'<text x="{_fmt(cx)}" y="{_fmt(cy)}" font-family="sans-serif" '
        f'font-size="{style.label_font_size * 2}" text-anchor="middle" '
        f'dominant-baseline="central">{aggregate.node_count}</text>'
    )
    parts.append("</svg>")
    return "\n".join(parts) + "\n"
