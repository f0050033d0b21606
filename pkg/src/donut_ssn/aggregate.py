"""Viewport-scoped donut aggregation.

The pipeline: select counting events for edges whose origin node lies in the
viewport, min-max normalize the raw edge lengths of the selected set, then
bucket each normalized length and tally into an 8x3 (direction x distance)
matrix. All functions are pure; the whole run is deterministic.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, replace
from typing import List, Optional, Sequence, Tuple

from .model import (
    BUCKET_ORDER,
    Direction,
    DIRECTION_ORDER,
    DistanceBucket,
    DonutAggregate,
    LatitudeOutOfRange,
    Node,
    SpatialNetwork,
    Thresholds,
    Viewport,
)

#: Mean Earth radius in meters, used for great-circle lengths.
EARTH_RADIUS_M = 6_371_008.8

# Sectors in counterclockwise angular order starting at East: sector k covers
# angles [45k - 22.5, 45k + 22.5) degrees, half-open on the upper side.
_SECTOR_BY_ANGLE_INDEX: Tuple[Direction, ...] = (
    Direction.E,
    Direction.NE,
    Direction.N,
    Direction.NW,
    Direction.W,
    Direction.SW,
    Direction.S,
    Direction.SE,
)


@dataclass(frozen=True)
class Contribution:
    """One directed counting event: an edge leaving an in-viewport origin.

    normalized_length and bucket are filled by the later pipeline stages and
    stay None until then.
    """

    edge_index: int
    origin: str
    direction: Direction
    length: float
    normalized_length: Optional[float] = None
    bucket: Optional[DistanceBucket] = None


@dataclass(frozen=True)
class AggregationConfig:
    """Knobs for one aggregation run.

    geographic=None means "inherit from the network", which is what every
    built-in caller does; setting it explicitly overrides the length metric.
    """

    thresholds: Thresholds = Thresholds()
    include_self_loops: bool = False
    geographic: Optional[bool] = None


def direction_of(point: Tuple[float, float], center: Tuple[float, float]) -> Direction:
    """Compass sector of `point` as seen from `center`.

    Sector k (E=0, NE=1, ... counterclockwise) covers angles
    [45k - 22.5, 45k + 22.5) degrees, so e.g. exactly 22.5 degrees is NE and
    exactly 337.5 degrees is E. A point equal to the center is E by
    convention.
    """
    dx = point[0] - center[0]
    dy = point[1] - center[1]
    if dx == 0.0 and dy == 0.0:
        return Direction.E
    theta = math.degrees(math.atan2(dy, dx))
    if theta < 0.0:
        theta += 360.0
    if theta >= 360.0:  # +360 of a tiny negative can round up to 360.0
        theta = 0.0
    k = int((theta + 22.5) // 45.0) % 8
    return _SECTOR_BY_ANGLE_INDEX[k]


def edge_length(a: Node, b: Node, geographic: bool) -> float:
    """Length of the edge a-b: Euclidean, or great-circle when geographic.

    Geographic mode reads x as longitude and y as latitude, in degrees, and
    returns meters on a sphere of mean Earth radius.
    """
    if not geographic:
        return math.hypot(a.x - b.x, a.y - b.y)
    for n in (a, b):
        if not -90.0 <= n.y <= 90.0:
            raise LatitudeOutOfRange(n.id, n.y)
    phi1 = math.radians(a.y)
    phi2 = math.radians(b.y)
    dphi = math.radians(b.y - a.y)
    dlam = math.radians(b.x - a.x)
    h = (
        math.sin(dphi / 2.0) ** 2
        + math.cos(phi1) * math.cos(phi2) * math.sin(dlam / 2.0) ** 2
    )
    return 2.0 * EARTH_RADIUS_M * math.asin(min(1.0, math.sqrt(h)))


def nodes_in_viewport(network: SpatialNetwork, viewport: Viewport) -> List[Node]:
    """Nodes inside the closed viewport box, in network order."""
    return [n for n in network.nodes if viewport.contains(n.x, n.y)]


def select_contributions(
    network: SpatialNetwork,
    viewport: Viewport,
    config: AggregationConfig = AggregationConfig(),
) -> List[Contribution]:
    """Counting events for the current viewport.

    A directed edge u->v contributes once iff u is inside the viewport. An
    undirected edge {u, v} contributes once per endpoint that is inside, so
    both inside means two events. The edge length always uses both true
    endpoint positions even when the far endpoint is outside the viewport.
    Self-loops are skipped unless configured in, and then count once in both
    the directed and undirected cases.
    """
    geographic = network.geographic if config.geographic is None else config.geographic
    center = viewport.center
    index = network.node_index
    contributions: List[Contribution] = []

    def origin_event(edge_index: int, origin: Node, length: float) -> None:
        contributions.append(
            Contribution(
                edge_index=edge_index,
                origin=origin.id,
                direction=direction_of((origin.x, origin.y), center),
                length=length,
            )
        )

    for i, edge in enumerate(network.edges):
        u = index[edge.src]
        v = index[edge.dst]
        if edge.src == edge.dst:
            if config.include_self_loops and viewport.contains(u.x, u.y):
                origin_event(i, u, 0.0)
            continue
        length = edge_length(u, v, geographic)
        if viewport.contains(u.x, u.y):
            origin_event(i, u, length)
        if not network.directed and viewport.contains(v.x, v.y):
            origin_event(i, v, length)

    return contributions


def normalize_lengths(contributions: Sequence[Contribution]) -> List[Contribution]:
    """Min-max normalize raw lengths over the given contribution set.

    When all lengths coincide (including a single contribution) everything
    normalizes to 0, i.e. "equally near relative to this selection".
    """
    if not contributions:
        return []
    lengths = [c.length for c in contributions]
    l_min = min(lengths)
    l_max = max(lengths)
    span = l_max - l_min
    if span > 0.0:
        return [
            replace(c, normalized_length=(c.length - l_min) / span)
            for c in contributions
        ]
    return [replace(c, normalized_length=0.0) for c in contributions]


def bucket_of(normalized_length: float, thresholds: Thresholds) -> DistanceBucket:
    """Classify a normalized length: Near (..= near_max],
    Medium (near_max, medium_max], Far above that."""
    if normalized_length <= thresholds.near_max:
        return DistanceBucket.NEAR
    if normalized_length <= thresholds.medium_max:
        return DistanceBucket.MEDIUM
    return DistanceBucket.FAR


def aggregate_donut(
    network: SpatialNetwork,
    viewport: Viewport,
    config: AggregationConfig = AggregationConfig(),
) -> DonutAggregate:
    """Run the full pipeline and tally the 8x3 count matrix."""
    selected = select_contributions(network, viewport, config)
    normalized = normalize_lengths(selected)
    bucketed = [
        replace(c, bucket=bucket_of(c.normalized_length, config.thresholds))
        for c in normalized
    ]

    counts = {d: {b: 0 for b in BUCKET_ORDER} for d in DIRECTION_ORDER}
    for c in bucketed:
        counts[c.direction][c.bucket] += 1

    if bucketed:
        lengths = [c.length for c in bucketed]
        length_min, length_max = min(lengths), max(lengths)
    else:
        length_min = length_max = None

    return DonutAggregate(
        counts=counts,
        node_count=len(nodes_in_viewport(network, viewport)),
        contribution_total=len(bucketed),
        length_min=length_min,
        length_max=length_max,
        thresholds=config.thresholds,
        viewport=viewport,
        directed=network.directed,
    )
