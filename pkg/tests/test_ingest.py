import json
import random

import pytest

from donut_ssn import (
    Thresholds,
    Viewport,
    aggregate_donut,
    parse_aggregate,
    parse_csv_network,
    parse_geojson_network,
    validate_network,
    write_aggregate,
    write_csv_network,
    write_geojson_network,
)
from donut_ssn.aggregate import AggregationConfig
from donut_ssn.ingest import (
    BadNumber,
    HeaderMismatch,
    IngestError,
    MissingProperty,
    NotFeatureCollection,
)
from donut_ssn.model import DanglingEdge

from helpers import random_network

NODES_CSV = "id,x,y\nA,0,0\nB,1,0\n"
EDGES_CSV = "src,dst\nA,B\n"


def test_parse_csv_minimal():
    net = parse_csv_network(NODES_CSV, EDGES_CSV, directed=False)
    assert len(net.nodes) == 2 and len(net.edges) == 1
    assert net.node_index["B"].x == 1.0


def test_parse_csv_crlf_and_quoting():
    nodes = 'id,x,y\r\n"A,1",0,0\r\nB,1,0\r\n'
    edges = 'src,dst\r\n"A,1",B\r\n'
    net = parse_csv_network(nodes, edges, directed=False)
    assert net.node_index["A,1"].y == 0.0


def test_parse_csv_header_mismatch():
    with pytest.raises(HeaderMismatch):
        parse_csv_network("id,lon,lat\nA,0,0\n", EDGES_CSV, directed=False)
    with pytest.raises(HeaderMismatch):
        parse_csv_network(NODES_CSV, "from,to\nA,B\n", directed=False)


def test_parse_csv_bad_number():
    with pytest.raises(BadNumber) as exc:
        parse_csv_network("id,x,y\nA,abc,0\n", EDGES_CSV, directed=False)
    assert exc.value.line == 2
    assert exc.value.column == "x"


def test_parse_csv_bad_arity():
    with pytest.raises(IngestError):
        parse_csv_network("id,x,y\nA,0\n", EDGES_CSV, directed=False)


def test_parse_csv_dangling_edge():
    with pytest.raises(DanglingEdge):
        parse_csv_network(NODES_CSV, "src,dst\nA,Z\n", directed=False)


GEOJSON = json.dumps(
    {
        "type": "FeatureCollection",
        "features": [
            {
                "type": "Feature",
                "geometry": {"type": "Point", "coordinates": [0, 0]},
                "properties": {"id": "A"},
            },
            {
                "type": "Feature",
                "geometry": {"type": "Point", "coordinates": [1, 0]},
                "properties": {"id": "B"},
            },
            {
                "type": "Feature",
                "geometry": None,
                "properties": {"src": "A", "dst": "B"},
            },
        ],
    }
)


def test_parse_geojson_minimal():
    net = parse_geojson_network(GEOJSON, directed=False)
    assert len(net.nodes) == 2 and len(net.edges) == 1
    assert net.geographic


def test_parse_geojson_missing_id():
    doc = json.loads(GEOJSON)
    del doc["features"][0]["properties"]["id"]
    with pytest.raises(MissingProperty) as exc:
        parse_geojson_network(json.dumps(doc), directed=False)
    assert exc.value.feature_index == 0 and exc.value.name == "id"


def test_parse_geojson_missing_edge_endpoint():
    doc = json.loads(GEOJSON)
    del doc["features"][2]["properties"]["dst"]
    with pytest.raises(MissingProperty) as exc:
        parse_geojson_network(json.dumps(doc), directed=False)
    assert exc.value.name == "dst"


def test_parse_geojson_not_feature_collection():
    with pytest.raises(NotFeatureCollection):
        parse_geojson_network('{"type": "Feature"}', directed=False)
    with pytest.raises(IngestError):
        parse_geojson_network("not json at all", directed=False)


def test_parse_geojson_edge_geometry_ignored():
    doc = json.loads(GEOJSON)
    # A LineString that disagrees with node coordinates: nodes win.
    doc["features"][2]["geometry"] = {
        "type": "LineString",
        "coordinates": [[50, 50], [60, 60]],
    }
    net = parse_geojson_network(json.dumps(doc), directed=False)
    assert net.node_index["A"].x == 0.0
    assert len(net.edges) == 1


def empty_aggregate():
    net = validate_network([("A", 5, 5)], [], directed=False)
    return aggregate_donut(net, Viewport(0, 0, 1, 1))


def test_write_aggregate_empty():
    text = write_aggregate(empty_aggregate())
    doc = json.loads(text)
    assert doc["node_count"] == 0
    assert doc["length_min"] is None and doc["length_max"] is None
    assert all(v == 0 for row in doc["counts"].values() for v in row.values())
    assert list(doc) == [
        "node_count",
        "contribution_total",
        "directed",
        "viewport",
        "length_min",
        "length_max",
        "thresholds",
        "counts",
    ]
    assert list(doc["counts"]) == ["N", "NE", "E", "SE", "S", "SW", "W", "NW"]
    assert list(doc["counts"]["N"]) == ["near", "medium", "far"]


def test_write_aggregate_two_node_trace():
    net = validate_network([("A", 0, 0), ("B", 1, 0)], [("A", "B")], directed=False)
    text = write_aggregate(aggregate_donut(net, Viewport(-1, -1, 2, 1)))
    doc = json.loads(text)
    assert doc["node_count"] == 2
    assert doc["counts"]["E"] == {"near": 1, "medium": 0, "far": 0}
    assert doc["counts"]["W"] == {"near": 1, "medium": 0, "far": 0}
    assert doc["viewport"] == [-1.0, -1.0, 2.0, 1.0]


def test_write_aggregate_deterministic_bytes():
    a = empty_aggregate()
    assert write_aggregate(a) == write_aggregate(a)


def random_aggregate(seed):
    net, _, _ = random_network(seed)
    rng = random.Random(seed + 99)
    thresholds = Thresholds(near_max=rng.uniform(0, 0.5), medium_max=rng.uniform(0.5, 1))
    vp = Viewport(-0.2, -0.2, rng.uniform(0.3, 1.2), rng.uniform(0.3, 1.2))
    return aggregate_donut(net, vp, AggregationConfig(thresholds=thresholds))


def test_aggregate_round_trip():
    for seed in range(100):
        agg = random_aggregate(seed)
        assert parse_aggregate(write_aggregate(agg)) == agg


def test_parse_aggregate_rejects_inconsistent_totals():
    doc = json.loads(write_aggregate(empty_aggregate()))
    doc["contribution_total"] = 5  # cells still sum to 0
    with pytest.raises(ValueError):
        parse_aggregate(json.dumps(doc))
    doc = json.loads(write_aggregate(empty_aggregate()))
    doc["length_min"] = 1.0  # max still null
    with pytest.raises(ValueError):
        parse_aggregate(json.dumps(doc))


def test_csv_round_trip_quick():
    for seed in range(10):
        net, _, _ = random_network(seed)
        nodes_csv, edges_csv = write_csv_network(net)
        back = parse_csv_network(nodes_csv, edges_csv, directed=net.directed)
        assert back == net


def test_geojson_round_trip_quick():
    for seed in range(10):
        net, nodes, edges = random_network(seed)
        geo = validate_network(nodes, edges, directed=net.directed, geographic=True)
        back = parse_geojson_network(write_geojson_network(geo), directed=geo.directed)
        assert back == geo


def test_format_independence():
    # The same node/edge content through CSV (geographic) and GeoJSON gives
    # cell-for-cell identical aggregates.
    net, nodes, edges = random_network(3)
    geo = validate_network(nodes, edges, directed=net.directed, geographic=True)
    nodes_csv, edges_csv = write_csv_network(geo)
    via_csv = parse_csv_network(
        nodes_csv, edges_csv, directed=geo.directed, geographic=True
    )
    via_geojson = parse_geojson_network(
        write_geojson_network(geo), directed=geo.directed
    )
    vp = Viewport(0, 0, 1, 1)
    assert aggregate_donut(via_csv, vp) == aggregate_donut(via_geojson, vp)
