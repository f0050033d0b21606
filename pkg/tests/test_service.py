import json
import threading

import pytest
from fastapi.testclient import TestClient

from donut_ssn import (
    ClusterSpec,
    Viewport,
    aggregate_donut,
    generate_clustered,
    render_donut,
    write_aggregate,
    write_csv_network,
)
from donut_ssn.service import NetworkStore, create_app

GEOJSON_2NODE = json.dumps(
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


@pytest.fixture()
def client():
    return TestClient(create_app())


def upload_geojson(client, body=GEOJSON_2NODE, **params):
    return client.post(
        "/networks",
        content=body,
        params=params,
        headers={"content-type": "application/json"},
    )


def test_healthz(client):
    resp = client.get("/healthz")
    assert resp.status_code == 200
    assert resp.text == "ok"


def test_upload_geojson(client):
    resp = upload_geojson(client)
    assert resp.status_code == 201
    body = resp.json()
    assert body["node_count"] == 2
    assert body["edge_count"] == 1
    assert body["id"]


def test_upload_malformed_json(client):
    resp = upload_geojson(client, body="{not json")
    assert resp.status_code == 400


def test_upload_duplicate_gets_new_id(client):
    a = upload_geojson(client).json()["id"]
    b = upload_geojson(client).json()["id"]
    assert a != b


def test_upload_multipart_csv(client):
    net = generate_clustered(ClusterSpec(seed=5))
    nodes_csv, edges_csv = write_csv_network(net)
    resp = client.post(
        "/networks",
        files={
            "nodes": ("net.nodes.csv", nodes_csv, "text/csv"),
            "edges": ("net.edges.csv", edges_csv, "text/csv"),
        },
    )
    assert resp.status_code == 201
    assert resp.json()["node_count"] == len(net.nodes)


def test_upload_too_large():
    client = TestClient(create_app(max_upload_bytes=100))
    resp = upload_geojson(client)
    assert resp.status_code == 413


def test_listing(client):
    upload_geojson(client, name="alpha")
    listing = client.get("/networks").json()
    assert len(listing) == 1
    assert listing[0]["name"] == "alpha"
    assert listing[0]["node_count"] == 2


def test_geometry_echo(client):
    network_id = upload_geojson(client).json()["id"]
    resp = client.get(f"/networks/{network_id}/geometry")
    assert resp.status_code == 200
    body = resp.json()
    assert body["nodes"] == [
        {"id": "A", "x": 0.0, "y": 0.0},
        {"id": "B", "x": 1.0, "y": 0.0},
    ]
    assert body["edges"] == [{"src": "A", "dst": "B"}]
    assert body["directed"] is False
    assert body["extent"] == [0.0, 0.0, 1.0, 0.0]


def test_geometry_unknown_id(client):
    assert client.get("/networks/nope/geometry").status_code == 404


def test_donut_json_matches_library_bytes(client):
    net = generate_clustered(ClusterSpec(seed=42))
    nodes_csv, edges_csv = write_csv_network(net)
    network_id = client.post(
        "/networks",
        files={"nodes": ("n.csv", nodes_csv), "edges": ("e.csv", edges_csv)},
    ).json()["id"]
    resp = client.get(f"/networks/{network_id}/donut", params={"bbox": "0,0,1,1"})
    assert resp.status_code == 200
    expected = write_aggregate(aggregate_donut(net, Viewport(0, 0, 1, 1)))
    assert resp.content == expected.encode()
    assert resp.headers["etag"].strip('"')


def test_donut_default_bbox_is_extent(client):
    network_id = upload_geojson(client).json()["id"]
    default = client.get(f"/networks/{network_id}/donut")
    explicit = client.get(f"/networks/{network_id}/donut", params={"bbox": "0,0,1,0"})
    assert default.content == explicit.content


def test_donut_bad_params(client):
    network_id = upload_geojson(client).json()["id"]
    assert (
        client.get(f"/networks/{network_id}/donut", params={"bbox": "0,0,1"}).status_code
        == 400
    )
    assert (
        client.get(f"/networks/{network_id}/donut", params={"bbox": "a,b,c,d"}).status_code
        == 400
    )
    assert (
        client.get(
            f"/networks/{network_id}/donut", params={"near": "0.7", "medium": "0.6"}
        ).status_code
        == 400
    )
    assert (
        client.get(f"/networks/{network_id}/donut", params={"near": "zzz"}).status_code
        == 400
    )
    assert client.get("/networks/ghost/donut").status_code == 404


def test_donut_etag_stable_and_body_identical(client):
    network_id = upload_geojson(client).json()["id"]
    a = client.get(f"/networks/{network_id}/donut")
    b = client.get(f"/networks/{network_id}/donut")
    assert a.content == b.content
    assert a.headers["etag"] == b.headers["etag"]


def test_donut_svg(client):
    net = generate_clustered(ClusterSpec(seed=42))
    nodes_csv, edges_csv = write_csv_network(net)
    network_id = client.post(
        "/networks",
        files={"nodes": ("n.csv", nodes_csv), "edges": ("e.csv", edges_csv)},
    ).json()["id"]
    resp = client.get(f"/networks/{network_id}/donut.svg", params={"bbox": "0,0,1,1"})
    assert resp.status_code == 200
    assert resp.headers["content-type"].startswith("image/svg+xml")
    expected = render_donut(aggregate_donut(net, Viewport(0, 0, 1, 1)))
    assert resp.content == expected.encode()
    assert resp.content.count(b"<path") == 24


def test_donut_svg_unknown_id(client):
    assert client.get("/networks/ghost/donut.svg").status_code == 404


def test_concurrent_donut_requests_identical(client):
    network_id = upload_geojson(client).json()["id"]
    reference = client.get(f"/networks/{network_id}/donut").content
    results = [None] * 8

    def fetch(i):
        results[i] = client.get(f"/networks/{network_id}/donut").content

    threads = [threading.Thread(target=fetch, args=(i,)) for i in range(8)]
    for t in threads:
        t.start()
    for t in threads:
        t.join()
    assert all(r == reference for r in results)


def test_store_write_through_and_reload(tmp_path):
    store = NetworkStore(data_dir=tmp_path)
    client = TestClient(create_app(store=store))
    network_id = upload_geojson(client, name="persisted").json()["id"]
    assert (tmp_path / f"{network_id}.nodes.csv").exists()
    assert (tmp_path / f"{network_id}.edges.csv").exists()
    assert (tmp_path / f"{network_id}.meta.json").exists()

    reloaded = NetworkStore(data_dir=tmp_path)
    client2 = TestClient(create_app(store=reloaded))
    geom = client2.get(f"/networks/{network_id}/geometry")
    assert geom.status_code == 200
    assert len(geom.json()["nodes"]) == 2
    # new uploads do not collide with reloaded ids
    new_id = upload_geojson(client2).json()["id"]
    assert new_id != network_id


def test_placeholder_index(client):
    resp = client.get("/")
    assert resp.status_code == 200
    assert "viewer" in resp.text.lower()


def test_static_dir_served(tmp_path):
    (tmp_path / "index.html").write_text("<html><body>viewer shell</body></html>")
    client = TestClient(create_app(static_dir=tmp_path))
    resp = client.get("/")
    assert resp.status_code == 200
    assert "viewer shell" in resp.text
