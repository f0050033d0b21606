"""Donut-chart summaries of spatial social networks.

A geolocated node-edge graph is filtered to the current viewport and its
edges are tallied into 8 compass sectors x 3 distance buckets around the
viewport center; the resulting matrix renders as a deterministic SVG donut
and feeds an interactive pan/zoom viewer over HTTP.
"""

from .aggregate import (
    AggregationConfig,
    Contribution,
    aggregate_donut,
    bucket_of,
    direction_of,
    edge_length,
    normalize_lengths,
    nodes_in_viewport,
    select_contributions,
)
from .ingest import (
    parse_aggregate,
    parse_csv_network,
    parse_geojson_network,
    write_aggregate,
    write_csv_network,
    write_geojson_network,
)
from .model import (
    BUCKET_ORDER,
    DIRECTION_ORDER,
    Direction,
    DistanceBucket,
    DonutAggregate,
    Edge,
    Node,
    SpatialNetwork,
    Thresholds,
    Viewport,
    extent_of,
    validate_network,
)
from .render import DonutStyle, color_for, render_donut
from .synth import ClusterSpec, PoissonSpec, generate_clustered, generate_poisson

__all__ = [
    "AggregationConfig",
    "BUCKET_ORDER",
    "ClusterSpec",
    "Contribution",
    "DIRECTION_ORDER",
    "Direction",
    "DistanceBucket",
    "DonutAggregate",
    "DonutStyle",
    "Edge",
    "Node",
    "PoissonSpec",
    "SpatialNetwork",
    "Thresholds",
    "Viewport",
    "aggregate_donut",
    "bucket_of",
    "color_for",
    "direction_of",
    "edge_length",
    "extent_of",
    "generate_clustered",
    "generate_poisson",
    "nodes_in_viewport",
    "normalize_lengths",
    "parse_aggregate",
    "parse_csv_network",
    "parse_geojson_network",
    "render_donut",
    "select_contributions",
    "validate_network",
    "write_aggregate",
    "write_csv_network",
    "write_geojson_network",
]

__version__ = "0.1.0"
