"""HTTP API for the interactive viewer.

Endpoints (all JSON unless noted):

  GET  /healthz                      -> "ok"
  GET  /networks                     -> stored network metadata
  POST /networks?directed=&name=     -> upload GeoJSON body, or multipart
                                        fields `nodes` + `edges` (CSV pair)
  GET  /networks/{id}/geometry       -> full node/edge geometry + extent
  GET  /networks/{id}/donut          -> canonical aggregate JSON
  GET  /networks/{id}/donut.svg      -> rendered donut
  GET  /                             -> viewer assets when a static dir is
                                        configured, placeholder page otherwise

Donut responses are produced by the exact same aggregation and serialization
code the CLI uses, so equal parameters give byte-identical bodies; a strong
ETag (SHA-256 of the body) supports client caching during pan/zoom.
"""

from __future__ import annotations

import hashlib
import json
import threading
from dataclasses import dataclass
from datetime import datetime, timezone
from pathlib import Path
from typing import Dict, List, Optional

from fastapi import FastAPI, HTTPException, Request
from fastapi.responses import HTMLResponse, PlainTextResponse, Response
from fastapi.staticfiles import StaticFiles

from .aggregate import AggregationConfig, aggregate_donut
from .ingest import (
    IngestError,
    parse_csv_network,
    parse_geojson_network,
    write_aggregate,
    write_csv_network,
)
from .model import (
    NetworkValidationError,
    SpatialNetwork,
    Thresholds,
    Viewport,
    extent_of,
)
from .render import DonutStyle, render_donut

DEFAULT_MAX_UPLOAD_BYTES = 50 * 1024 * 1024

_PLACEHOLDER_PAGE = """<!doctype html>
<html><head><title>donut-ssn</title></head>
<body><h1>donut-ssn service</h1>
<p>The interactive viewer is not built. The API is live: try
<a href="/networks">/networks</a> or <code>/networks/{id}/donut.svg</code>.</p>
</body></html>
"""


@dataclass(frozen=True)
class StoredNetwork:
    id: str
    name: str
    network: SpatialNetwork
    created_at: str


class NetworkStore:
    """In-memory map of uploaded networks, optionally mirrored to disk.

    Networks are immutable once stored, so lookups need no locking; only id
    assignment is serialized. With a data_dir every upload is written through
    as the canonical CSV pair plus a small metadata file, and existing files
    are loaded back on construction.
    """

    def __init__(self, data_dir: Optional[Path] = None):
        self._networks: Dict[str, StoredNetwork] = {}
        self._lock = threading.Lock()
        self._counter = 0
        self._data_dir = Path(data_dir) if data_dir else None
        if self._data_dir:
            self._data_dir.mkdir(parents=True, exist_ok=True)
            self._load_existing()

    def _load_existing(self) -> None:
        assert self._data_dir is not None
        for meta_path in sorted(self._data_dir.glob("*.meta.json")):
            meta = json.loads(meta_path.read_text(encoding="utf-8"))
            network_id = meta["id"]
            network = parse_csv_network(
                (self._data_dir / f"{network_id}.nodes.csv").read_text(encoding="utf-8"),
                (self._data_dir / f"{network_id}.edges.csv").read_text(encoding="utf-8"),
                directed=meta["directed"],
                geographic=meta["geographic"],
            )
            self._networks[network_id] = StoredNetwork(
                id=network_id,
                name=meta["name"],
                network=network,
                created_at=meta["created_at"],
            )
            suffix = network_id.rsplit("-", 1)[-1]
            if suffix.isdigit():
                self._counter = max(self._counter, int(suffix))

    def add(self, network: SpatialNetwork, name: Optional[str] = None) -> StoredNetwork:
        with self._lock:
            self._counter += 1
            network_id = f"net-{self._counter}"
            stored = StoredNetwork(
                id=network_id,
                name=name or network_id,
                network=network,
                created_at=datetime.now(timezone.utc).isoformat(),
            )
            self._networks[network_id] = stored
        if self._data_dir:
            self._persist(stored)
        return stored

    def _persist(self, stored: StoredNetwork) -> None:
        assert self._data_dir is not None
        nodes_csv, edges_csv = write_csv_network(stored.network)
        (self._data_dir / f"{stored.id}.nodes.csv").write_text(nodes_csv, encoding="utf-8")
        (self._data_dir / f"{stored.id}.edges.csv").write_text(edges_csv, encoding="utf-8")
        (self._data_dir / f"{stored.id}.meta.json").write_text(
            json.dumps(
                {
                    "id": stored.id,
                    "name": stored.name,
                    "directed": stored.network.directed,
                    "geographic": stored.network.geographic,
                    "created_at": stored.created_at,
                }
            ),
            encoding="utf-8",
        )

    def get(self, network_id: str) -> StoredNetwork:
        try:
            return self._networks[network_id]
        except KeyError:
            raise KeyError(network_id) from None

    def list(self) -> List[StoredNetwork]:
        return sorted(self._networks.values(), key=lambda s: s.id)


def _parse_bbox(raw: Optional[str], network: SpatialNetwork) -> Viewport:
    if raw is None:
        return extent_of(network)
    parts = raw.split(",")
    if len(parts) != 4:
        raise ValueError("bbox must be minx,miny,maxx,maxy")
    try:
        values = [float(p) for p in parts]
    except ValueError:
        raise ValueError("bbox must be four numbers") from None
    return Viewport(*values)


def _parse_bool(raw: str, name: str) -> bool:
    lowered = raw.lower()
    if lowered in ("true", "1", "yes"):
        return True
    if lowered in ("false", "0", "no"):
        return False
    raise ValueError(f"{name} must be true or false")


def _strong_etag(body: bytes) -> str:
    return '"' + hashlib.sha256(body).hexdigest() + '"'


def create_app(
    store: Optional[NetworkStore] = None,
    static_dir: Optional[Path] = None,
    max_upload_bytes: int = DEFAULT_MAX_UPLOAD_BYTES,
) -> FastAPI:
    app = FastAPI(title="donut-ssn", docs_url=None, redoc_url=None)
    app.state.store = store if store is not None else NetworkStore()

    def _get_stored(network_id: str) -> StoredNetwork:
        try:
            return app.state.store.get(network_id)
        except KeyError:
            raise HTTPException(status_code=404, detail=f"unknown network id {network_id!r}")

    @app.get("/healthz", response_class=PlainTextResponse)
    def healthz() -> str:
        return "ok"

    @app.get("/networks")
    def list_networks() -> List[dict]:
        return [
            {
                "id": s.id,
                "name": s.name,
                "node_count": len(s.network.nodes),
                "edge_count": len(s.network.edges),
                "directed": s.network.directed,
                "geographic": s.network.geographic,
                "created_at": s.created_at,
            }
            for s in app.state.store.list()
        ]

    @app.post("/networks", status_code=201)
    async def upload_network(
        request: Request, directed: bool = False, name: Optional[str] = None
    ) -> dict:
        content_length = request.headers.get("content-length")
        if content_length and int(content_length) > max_upload_bytes:
            raise HTTPException(status_code=413, detail="upload too large")

        content_type = request.headers.get("content-type", "")
        try:
            if content_type.startswith("multipart/form-data"):
                form = await request.form()
                if "nodes" not in form or "edges" not in form:
                    raise HTTPException(
                        status_code=400,
                        detail="multipart upload needs `nodes` and `edges` files",
                    )
                nodes_csv = (await form["nodes"].read()).decode("utf-8")
                edges_csv = (await form["edges"].read()).decode("utf-8")
                if len(nodes_csv) + len(edges_csv) > max_upload_bytes:
                    raise HTTPException(status_code=413, detail="upload too large")
                network = parse_csv_network(nodes_csv, edges_csv, directed=directed)
            else:
                body = await request.body()
                if len(body) > max_upload_bytes:
                    raise HTTPException(status_code=413, detail="upload too large")
                network = parse_geojson_network(body.decode("utf-8"), directed=directed)
        except (IngestError, NetworkValidationError, UnicodeDecodeError) as exc:
            raise HTTPException(status_code=400, detail=str(exc))

        stored = app.state.store.add(network, name=name)
        return {
            "id": stored.id,
            "node_count": len(network.nodes),
            "edge_count": len(network.edges),
        }

    @app.get("/networks/{network_id}/geometry")
    def geometry(network_id: str) -> dict:
        stored = _get_stored(network_id)
        network = stored.network
        extent = extent_of(network)
        return {
            "nodes": [{"id": n.id, "x": n.x, "y": n.y} for n in network.nodes],
            "edges": [{"src": e.src, "dst": e.dst} for e in network.edges],
            "directed": network.directed,
            "extent": [extent.min_x, extent.min_y, extent.max_x, extent.max_y],
        }

    def _aggregate_for(
        network_id: str,
        bbox: Optional[str],
        near: str,
        medium: str,
        self_loops: str,
    ):
        stored = _get_stored(network_id)
        try:
            viewport = _parse_bbox(bbox, stored.network)
            thresholds = Thresholds(near_max=float(near), medium_max=float(medium))
            include_self_loops = _parse_bool(self_loops, "self_loops")
        except ValueError as exc:
            raise HTTPException(status_code=400, detail=str(exc))
        config = AggregationConfig(
            thresholds=thresholds, include_self_loops=include_self_loops
        )
        return aggregate_donut(stored.network, viewport, config)

    @app.get("/networks/{network_id}/donut")
    def donut_json(
        network_id: str,
        bbox: Optional[str] = None,
        near: str = "0.35",
        medium: str = "0.60",
        self_loops: str = "false",
    ) -> Response:
        aggregate = _aggregate_for(network_id, bbox, near, medium, self_loops)
        body = write_aggregate(aggregate).encode("utf-8")
        return Response(
            content=body,
            media_type="application/json",
            headers={"ETag": _strong_etag(body)},
        )

    @app.get("/networks/{network_id}/donut.svg")
    def donut_svg(
        network_id: str,
        bbox: Optional[str] = None,
        near: str = "0.35",
        medium: str = "0.60",
        self_loops: str = "false",
    ) -> Response:
        aggregate = _aggregate_for(network_id, bbox, near, medium, self_loops)
        body = render_donut(aggregate, DonutStyle()).encode("utf-8")
        return Response(
            content=body,
            media_type="image/svg+xml",
            headers={"ETag": _strong_etag(body)},
        )

    if static_dir is not None and Path(static_dir).is_dir():
        app.mount("/", StaticFiles(directory=static_dir, html=True), name="viewer")
    else:

        @app.get("/", response_class=HTMLResponse)
        def index() -> str:
            return _PLACEHOLDER_PAGE

    return app
