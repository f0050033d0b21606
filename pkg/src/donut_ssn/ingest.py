"""Canonical on-disk formats: CSV node/edge pairs, GeoJSON, aggregate JSON.

All writers are deterministic: identical inputs produce byte-identical text.
Numbers are emitted in shortest round-trip decimal form (Python's float
repr), so parse(write(x)) reproduces x exactly.
"""

from __future__ import annotations

import csv
import io
import json
from typing import List, Optional, Tuple

from .model import (
    BUCKET_ORDER,
    DIRECTION_ORDER,
    DonutAggregate,
    SpatialNetwork,
    Thresholds,
    Viewport,
    validate_network,
)

NODES_HEADER = ["id", "x", "y"]
EDGES_HEADER = ["src", "dst"]


class IngestError(ValueError):
    """Base class for malformed input documents."""


class HeaderMismatch(IngestError):
    def __init__(self, expected: List[str], got: Optional[List[str]]):
        self.expected = expected
        self.got = got
        super().__init__(f"expected header {expected}, got {got}")


class BadNumber(IngestError):
    def __init__(self, line: int, column: str, value: str):
        self.line = line
        self.column = column
        self.value = value
        super().__init__(f"line {line}, column {column}: {value!r} is not a number")


class NotFeatureCollection(IngestError):
    def __init__(self) -> None:
        super().__init__("document is not a GeoJSON FeatureCollection")


class MissingProperty(IngestError):
    def __init__(self, feature_index: int, name: str):
        self.feature_index = feature_index
        self.name = name
        super().__init__(f"feature {feature_index} lacks property {name!r}")


def _read_rows(text: str, header: List[str]) -> List[Tuple[int, List[str]]]:
    reader = csv.reader(io.StringIO(text, newline=""))
    rows = [(i + 1, row) for i, row in enumerate(reader) if row]
    if not rows or rows[0][1] != header:
        raise HeaderMismatch(header, rows[0][1] if rows else None)
    for line, row in rows[1:]:
        if len(row) != len(header):
            raise IngestError(
                f"line {line}: expected {len(header)} fields, got {len(row)}"
            )
    return rows[1:]


def _parse_float(value: str, line: int, column: str) -> float:
    try:
        out = float(value)
    except ValueError:
        raise BadNumber(line, column, value) from None
    return out


def parse_csv_network(
    nodes_text: str,
    edges_text: str,
    directed: bool,
    geographic: bool = False,
) -> SpatialNetwork:
    """Parse the paired CSV form: nodes with header id,x,y and edges with
    header src,dst. RFC-4180 quoting is accepted; \\n and \\r\\n both work."""
    nodes = []
    for line, row in _read_rows(nodes_text, NODES_HEADER):
        nodes.append(
            (
                row[0],
                _parse_float(row[1], line, "x"),
                _parse_float(row[2], line, "y"),
            )
        )
    edges = [(row[0], row[1]) for _, row in _read_rows(edges_text, EDGES_HEADER)]
    return validate_network(nodes, edges, directed=directed, geographic=geographic)


def write_csv_network(network: SpatialNetwork) -> Tuple[str, str]:
    """Inverse of parse_csv_network: (nodes_csv, edges_csv) with the same
    headers and shortest round-trip float formatting."""
    nodes_out = io.StringIO()
    writer = csv.writer(nodes_out, lineterminator="\n")
    writer.writerow(NODES_HEADER)
    for n in network.nodes:
        writer.writerow([n.id, repr(n.x), repr(n.y)])
    edges_out = io.StringIO()
    writer = csv.writer(edges_out, lineterminator="\n")
    writer.writerow(EDGES_HEADER)
    for e in network.edges:
        writer.writerow([e.src, e.dst])
    return nodes_out.getvalue(), edges_out.getvalue()


def parse_geojson_network(text: str, directed: bool) -> SpatialNetwork:
    """Parse a FeatureCollection: Point features (property `id`) are nodes,
    every other feature is an edge (properties `src` and `dst`).

    Edge geometries, when present, are ignored: node coordinates are
    authoritative. The result is always geographic (lon/lat).
    """
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise IngestError(f"invalid JSON: {exc}") from None
    if not isinstance(doc, dict) or doc.get("type") != "FeatureCollection":
        raise NotFeatureCollection()
    features = doc.get("features")
    if not isinstance(features, list):
        raise NotFeatureCollection()

    nodes = []
    edges = []
    for i, feature in enumerate(features):
        geometry = feature.get("geometry") or {}
        properties = feature.get("properties") or {}
        if geometry.get("type") == "Point":
            if "id" not in properties:
                raise MissingProperty(i, "id")
            coords = geometry.get("coordinates")
            if not isinstance(coords, (list, tuple)) or len(coords) < 2:
                raise IngestError(f"feature {i}: Point lacks [x, y] coordinates")
            x, y = coords[0], coords[1]
            if not isinstance(x, (int, float)) or not isinstance(y, (int, float)):
                raise BadNumber(i, "coordinates", repr(coords))
            nodes.append((str(properties["id"]), float(x), float(y)))
        else:
            for name in ("src", "dst"):
                if name not in properties:
                    raise MissingProperty(i, name)
            edges.append((str(properties["src"]), str(properties["dst"])))

    return validate_network(nodes, edges, directed=directed, geographic=True)


def write_geojson_network(network: SpatialNetwork) -> str:
    """Inverse of parse_geojson_network: nodes as Point features followed by
    geometry-less edge features."""
    features = [
        {
            "type": "Feature",
            "geometry": {"type": "Point", "coordinates": [n.x, n.y]},
            "properties": {"id": n.id},
        }
        for n in network.nodes
    ]
    features.extend(
        {
            "type": "Feature",
            "geometry": None,
            "properties": {"src": e.src, "dst": e.dst},
        }
        for e in network.edges
    )
    return json.dumps({"type": "FeatureCollection", "features": features})


def write_aggregate(aggregate: DonutAggregate) -> str:
    """Serialize an aggregate to its canonical JSON text (newline-terminated).

    Key order, direction order (N, NE, E, SE, S, SW, W, NW) and number
    formatting are pinned so reruns are byte-identical.
    """
    vp = aggregate.viewport
    doc = {
        "node_count": aggregate.node_count,
        "contribution_total": aggregate.contribution_total,
        "directed": aggregate.directed,
        "viewport": [vp.min_x, vp.min_y, vp.max_x, vp.max_y],
        "length_min": aggregate.length_min,
        "length_max": aggregate.length_max,
        "thresholds": {
            "near_max": aggregate.thresholds.near_max,
            "medium_max": aggregate.thresholds.medium_max,
        },
        "counts": {
            d.value: {b.value: aggregate.counts[d][b] for b in BUCKET_ORDER}
            for d in DIRECTION_ORDER
        },
    }
    return json.dumps(doc, separators=(",", ":")) + "\n"


def parse_aggregate(text: str) -> DonutAggregate:
    """Inverse of write_aggregate."""
    doc = json.loads(text)
    counts = {
        d: {b: int(doc["counts"][d.value][b.value]) for b in BUCKET_ORDER}
        for d in DIRECTION_ORDER
    }
    vp = doc["viewport"]
    length_min = doc["length_min"]
    length_max = doc["length_max"]
    return DonutAggregate(
        counts=counts,
        node_count=int(doc["node_count"]),
        contribution_total=int(doc["contribution_total"]),
        length_min=None if length_min is None else float(length_min),
        length_max=None if length_max is None else float(length_max),
        thresholds=Thresholds(
            near_max=doc["thresholds"]["near_max"],
            medium_max=doc["thresholds"]["medium_max"],
        ),
        viewport=Viewport(float(vp[0]), float(vp[1]), float(vp[2]), float(vp[3])),
        directed=bool(doc["directed"]),
    )
