"""Domain types for spatial social networks and their donut summaries.

Everything here is immutable after construction and safe to share across
threads. Coordinates are 64-bit floats throughout: either abstract planar
units or degrees (x = longitude, y = latitude) when a network is geographic.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass
from functools import cached_property
from typing import Iterable, Mapping, Optional, Tuple


class NetworkValidationError(ValueError):
    """Base class for structural problems in a network definition."""


class DuplicateNodeId(NetworkValidationError):
    def __init__(self, node_id: str):
        self.node_id = node_id
        super().__init__(f"duplicate node id: {node_id!r}")


class DanglingEdge(NetworkValidationError):
    def __init__(self, node_id: str, edge_index: int):
        self.node_id = node_id
        self.edge_index = edge_index
        super().__init__(f"edge {edge_index} references unknown node id {node_id!r}")


class NonFiniteCoordinate(NetworkValidationError):
    def __init__(self, node_id: str):
        self.node_id = node_id
        super().__init__(f"node {node_id!r} has a non-finite coordinate")


class EmptyNetwork(NetworkValidationError):
    def __init__(self) -> None:
        super().__init__("network has no nodes")


class LatitudeOutOfRange(NetworkValidationError):
    def __init__(self, node_id: str, latitude: float):
        self.node_id = node_id
        self.latitude = latitude
        super().__init__(f"node {node_id!r} has latitude {latitude} outside [-90, 90]")


@dataclass(frozen=True)
class Node:
    """A geolocated network node. id is an opaque, non-empty string."""

    id: str
    x: float
    y: float


@dataclass(frozen=True)
class Edge:
    """A connection between two node ids; ordered (src -> dst) when the
    owning network is directed, unordered otherwise."""

    src: str
    dst: str


class Direction(enum.Enum):
    """The 8 compass sectors, each covering a 45-degree wedge about a center.

    Members are declared in canonical serialization order (N first, then
    clockwise). The exact angular intervals live in aggregate.direction_of.
    """

    N = "N"
    NE = "NE"
    E = "E"
    SE = "SE"
    S = "S"
    SW = "SW"
    W = "W"
    NW = "NW"


#: Canonical serialization order: N, NE, E, SE, S, SW, W, NW.
DIRECTION_ORDER: Tuple[Direction, ...] = tuple(Direction)

#: Sector opposite each direction (used by reflection symmetry).
OPPOSITE_DIRECTION: Mapping[Direction, Direction] = {
    Direction.N: Direction.S,
    Direction.NE: Direction.SW,
    Direction.E: Direction.W,
    Direction.SE: Direction.NW,
    Direction.S: Direction.N,
    Direction.SW: Direction.NE,
    Direction.W: Direction.E,
    Direction.NW: Direction.SE,
}


class DistanceBucket(enum.Enum):
    """Near/Medium/Far classification of a normalized edge length."""

    NEAR = "near"
    MEDIUM = "medium"
    FAR = "far"


BUCKET_ORDER: Tuple[DistanceBucket, ...] = (
    DistanceBucket.NEAR,
    DistanceBucket.MEDIUM,
    DistanceBucket.FAR,
)


@dataclass(frozen=True)
class Thresholds:
    """Bucket boundaries on the normalized [0, 1] length scale.

    Near covers (..= near_max], Medium (near_max, medium_max], Far the rest.
    """

    near_max: float = 0.35
    medium_max: float = 0.60

    def __post_init__(self) -> None:
        object.__setattr__(self, "near_max", float(self.near_max))
        object.__setattr__(self, "medium_max", float(self.medium_max))
        if not (0.0 <= self.near_max <= self.medium_max <= 1.0):
            raise ValueError(
                "thresholds must satisfy 0 <= near_max <= medium_max <= 1, "
                f"got near_max={self.near_max}, medium_max={self.medium_max}"
            )


@dataclass(frozen=True)
class Viewport:
    """Axis-aligned box in node coordinates; its center anchors the donut."""

    min_x: float
    min_y: float
    max_x: float
    max_y: float

    def __post_init__(self) -> None:
        for name in ("min_x", "min_y", "max_x", "max_y"):
            object.__setattr__(self, name, float(getattr(self, name)))
        for v in (self.min_x, self.min_y, self.max_x, self.max_y):
            if not math.isfinite(v):
                raise ValueError("viewport coordinates must be finite")
        if self.min_x > self.max_x or self.min_y > self.max_y:
            raise ValueError(
                f"viewport must satisfy min <= max, got "
                f"({self.min_x},{self.min_y})..({self.max_x},{self.max_y})"
            )

    @property
    def center(self) -> Tuple[float, float]:
        return ((self.min_x + self.max_x) / 2.0, (self.min_y + self.max_y) / 2.0)

    def contains(self, x: float, y: float) -> bool:
        """Closed-box containment: boundary points count as inside."""
        return self.min_x <= x <= self.max_x and self.min_y <= y <= self.max_y


@dataclass(frozen=True)
class SpatialNetwork:
    """A validated, immutable node-edge graph with spatial node positions."""

    nodes: Tuple[Node, ...]
    edges: Tuple[Edge, ...]
    directed: bool
    geographic: bool

    @cached_property
    def node_index(self) -> Mapping[str, Node]:
        # cached_property writes straight into __dict__, which a frozen
        # dataclass permits; the mapping itself is never mutated.
        return {n.id: n for n in self.nodes}


@dataclass(frozen=True)
class DonutAggregate:
    """The 8x3 directional/distance count matrix for one viewport.

    counts is keyed by Direction then DistanceBucket and always carries all
    24 cells. length_min/length_max are the raw (un-normalized) extremes of
    the contributing edge lengths; both are None exactly when nothing
    contributed.
    """

    counts: Mapping[Direction, Mapping[DistanceBucket, int]]
    node_count: int
    contribution_total: int
    length_min: Optional[float]
    length_max: Optional[float]
    thresholds: Thresholds
    viewport: Viewport
    directed: bool

    def __post_init__(self) -> None:
        total = 0
        for d in DIRECTION_ORDER:
            for b in BUCKET_ORDER:
                v = self.counts[d][b]
                if v < 0:
                    raise ValueError(f"negative count in cell ({d.value}, {b.value})")
                total += v
        if total != self.contribution_total:
            raise ValueError(
                f"cell sum {total} != contribution_total {self.contribution_total}"
            )
        if self.node_count < 0:
            raise ValueError("node_count must be non-negative")
        has_lengths = self.length_min is not None and self.length_max is not None
        if (self.length_min is None) != (self.length_max is None):
            raise ValueError("length_min and length_max must be present together")
        if has_lengths and self.length_min > self.length_max:
            raise ValueError("length_min must not exceed length_max")
        if has_lengths == (self.contribution_total == 0):
            raise ValueError(
                "length bounds are present exactly when contributions exist"
            )

    def cell(self, direction: Direction, bucket: DistanceBucket) -> int:
        return self.counts[direction][bucket]

    def sector_total(self, direction: Direction) -> int:
        return sum(self.counts[direction].values())

    def bucket_total(self, bucket: DistanceBucket) -> int:
        return sum(self.counts[d][bucket] for d in DIRECTION_ORDER)


def validate_network(
    nodes: Iterable[Node | Tuple[str, float, float]],
    edges: Iterable[Edge | Tuple[str, str]],
    directed: bool,
    geographic: bool = False,
) -> SpatialNetwork:
    """Check node/edge structure and assemble an immutable SpatialNetwork.

    Accepts Node/Edge instances or plain (id, x, y) / (src, dst) tuples.
    Coordinates are coerced to float. Duplicate edges are kept (they count
    separately during aggregation); self-loops are legal in storage.
    """
    built_nodes = []
    seen = set()
    for n in nodes:
        if not isinstance(n, Node):
            n = Node(str(n[0]), float(n[1]), float(n[2]))
        else:
            n = Node(n.id, float(n.x), float(n.y))
        if not n.id:
            raise NetworkValidationError("node id must be a non-empty string")
        if n.id in seen:
            raise DuplicateNodeId(n.id)
        if not (math.isfinite(n.x) and math.isfinite(n.y)):
            raise NonFiniteCoordinate(n.id)
        if geographic and not -90.0 <= n.y <= 90.0:
            raise LatitudeOutOfRange(n.id, n.y)
        seen.add(n.id)
        built_nodes.append(n)

    built_edges = []
    for i, e in enumerate(edges):
        if not isinstance(e, Edge):
            e = Edge(str(e[0]), str(e[1]))
        if e.src not in seen:
            raise DanglingEdge(e.src, i)
        if e.dst not in seen:
            raise DanglingEdge(e.dst, i)
        built_edges.append(e)

    return SpatialNetwork(
        nodes=tuple(built_nodes),
        edges=tuple(built_edges),
        directed=directed,
        geographic=geographic,
    )


def extent_of(network: SpatialNetwork) -> Viewport:
    """Tight bounding box over all node coordinates.

    Raises EmptyNetwork when there is nothing to bound. A single node yields
    a degenerate (zero-area) but legal viewport.
    """
    if not network.nodes:
        raise EmptyNetwork()
    xs = [n.x for n in network.nodes]
    ys = [n.y for n in network.nodes]
    return Viewport(min(xs), min(ys), max(xs), max(ys))
