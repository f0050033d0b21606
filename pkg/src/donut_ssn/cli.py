"""Command line entry point.

Subcommands: `generate` (synthetic networks to CSV), `donut` (aggregate a
network file into JSON and/or SVG), `serve` (HTTP API + viewer assets).
Exit codes: 0 success, 1 runtime error, 2 usage error. Data goes to stdout,
diagnostics to stderr.
"""

from __future__ import annotations

import argparse
import os
import sys
from pathlib import Path
from typing import List, Optional, Tuple

from .aggregate import AggregationConfig, aggregate_donut
from .ingest import (
    IngestError,
    parse_csv_network,
    parse_geojson_network,
    write_aggregate,
    write_csv_network,
)
from .model import (
    EmptyNetwork,
    NetworkValidationError,
    Thresholds,
    Viewport,
    extent_of,
)
from .render import DonutStyle, render_donut
from .synth import ClusterSpec, PoissonSpec, generate_clustered, generate_poisson

DATA_DIR_ENV = "DONUT_SSN_DATA_DIR"


def _parse_centers(raw: str) -> Tuple[Tuple[float, float], ...]:
    """Parse `x,y;x,y;...` cluster center lists."""
    centers = []
    for chunk in raw.split(";"):
        parts = chunk.split(",")
        if len(parts) != 2:
            raise argparse.ArgumentTypeError(
                f"bad center {chunk!r}: expected x,y"
            )
        try:
            centers.append((float(parts[0]), float(parts[1])))
        except ValueError:
            raise argparse.ArgumentTypeError(f"bad center {chunk!r}: not numbers")
    return tuple(centers)


def _parse_bbox_flag(raw: str) -> Tuple[float, float, float, float]:
    parts = raw.split(",")
    if len(parts) != 4:
        raise argparse.ArgumentTypeError("bbox must be minx,miny,maxx,maxy")
    try:
        return tuple(float(p) for p in parts)  # type: ignore[return-value]
    except ValueError:
        raise argparse.ArgumentTypeError("bbox must be four numbers")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="donut-ssn",
        description="Directional distance summaries of spatial social networks.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    gen = sub.add_parser("generate", help="write a synthetic network as CSV")
    gen_sub = gen.add_subparsers(dest="family", required=True)

    poisson = gen_sub.add_parser("poisson", help="uniform scatter, decaying links")
    poisson.add_argument("--intensity", type=float, default=100.0)
    poisson.add_argument("--decay-scale", type=float, default=0.15)
    poisson.add_argument("--base-prob", type=float, default=0.9)
    poisson.add_argument("--seed", type=int, default=0)
    poisson.add_argument("--out", required=True, help="output path prefix")

    clustered = gen_sub.add_parser("clustered", help="Gaussian clusters, decaying links")
    clustered.add_argument(
        "--centers",
        type=_parse_centers,
        default=None,
        help="cluster centers as x,y;x,y;... (default three clusters)",
    )
    clustered.add_argument("--per-cluster-mean", type=float, default=15.0)
    clustered.add_argument("--spread", type=float, default=0.05)
    clustered.add_argument("--decay-scale", type=float, default=0.10)
    clustered.add_argument("--base-prob", type=float, default=0.9)
    clustered.add_argument("--seed", type=int, default=0)
    clustered.add_argument("--out", required=True, help="output path prefix")

    donut = sub.add_parser("donut", help="aggregate a network into a donut")
    src = donut.add_argument_group("input (CSV pair or GeoJSON)")
    src.add_argument("--nodes", help="nodes CSV path (with --edges)")
    src.add_argument("--edges", help="edges CSV path (with --nodes)")
    src.add_argument("--geojson", help="GeoJSON FeatureCollection path")
    donut.add_argument("--directed", action="store_true")
    donut.add_argument(
        "--bbox",
        type=_parse_bbox_flag,
        default=None,
        help="viewport minx,miny,maxx,maxy (default: full network extent)",
    )
    donut.add_argument("--near", type=float, default=0.35)
    donut.add_argument("--medium", type=float, default=0.60)
    donut.add_argument("--self-loops", action="store_true")
    donut.add_argument("--json", dest="json_out", help=".donut.json output path")
    donut.add_argument("--svg", dest="svg_out", help="SVG output path")

    serve = sub.add_parser("serve", help="run the HTTP API and viewer")
    serve.add_argument("--host", default="127.0.0.1")
    serve.add_argument("--port", type=int, default=8080)
    serve.add_argument(
        "--data-dir",
        default=os.environ.get(DATA_DIR_ENV),
        help=f"write-through store directory (default: ${DATA_DIR_ENV})",
    )
    serve.add_argument("--static-dir", default=None, help="built viewer assets")

    return parser


def _cmd_generate(args: argparse.Namespace, parser: argparse.ArgumentParser) -> int:
    try:
        if args.family == "poisson":
            spec = PoissonSpec(
                intensity=args.intensity,
                decay_scale=args.decay_scale,
                base_prob=args.base_prob,
                seed=args.seed,
            )
        else:
            kwargs = dict(
                per_cluster_mean=args.per_cluster_mean,
                spread=args.spread,
                decay_scale=args.decay_scale,
                base_prob=args.base_prob,
                seed=args.seed,
            )
            if args.centers is not None:
                kwargs["centers"] = args.centers
            spec = ClusterSpec(**kwargs)
    except ValueError as exc:
        parser.error(str(exc))
    network = (
        generate_poisson(spec) if args.family == "poisson" else generate_clustered(spec)
    )

    nodes_csv, edges_csv = write_csv_network(network)
    prefix = Path(args.out)
    if prefix.parent and not prefix.parent.exists():
        prefix.parent.mkdir(parents=True, exist_ok=True)
    Path(f"{prefix}.nodes.csv").write_text(nodes_csv, encoding="utf-8")
    Path(f"{prefix}.edges.csv").write_text(edges_csv, encoding="utf-8")
    print(f"nodes={len(network.nodes)} edges={len(network.edges)}")
    return 0


def _cmd_donut(args: argparse.Namespace, parser: argparse.ArgumentParser) -> int:
    try:
        thresholds = Thresholds(near_max=args.near, medium_max=args.medium)
    except ValueError:
        parser.error("thresholds must satisfy near_max <= medium_max")

    if args.geojson:
        if args.nodes or args.edges:
            parser.error("--geojson cannot be combined with --nodes/--edges")
        network = parse_geojson_network(
            Path(args.geojson).read_text(encoding="utf-8"), directed=args.directed
        )
    elif args.nodes and args.edges:
        network = parse_csv_network(
            Path(args.nodes).read_text(encoding="utf-8"),
            Path(args.edges).read_text(encoding="utf-8"),
            directed=args.directed,
        )
    else:
        parser.error("provide --nodes with --edges, or --geojson")

    if args.bbox:
        try:
            viewport = Viewport(*args.bbox)
        except ValueError as exc:
            parser.error(str(exc))
    else:
        viewport = extent_of(network)
    config = AggregationConfig(
        thresholds=thresholds, include_self_loops=args.self_loops
    )
    aggregate = aggregate_donut(network, viewport, config)

    aggregate_json = write_aggregate(aggregate)
    if args.json_out:
        Path(args.json_out).write_text(aggregate_json, encoding="utf-8")
    if args.svg_out:
        Path(args.svg_out).write_text(
            render_donut(aggregate, DonutStyle()), encoding="utf-8"
        )
    if not args.json_out and not args.svg_out:
        sys.stdout.write(aggregate_json)
    return 0


def _cmd_serve(args: argparse.Namespace) -> int:
    import uvicorn

    from .service import NetworkStore, create_app

    data_dir = Path(args.data_dir) if args.data_dir else None
    static_dir = Path(args.static_dir) if args.static_dir else None
    if static_dir is None:
        candidate = Path.cwd() / "frontend" / "dist"
        if candidate.is_dir():
            static_dir = candidate
    app = create_app(store=NetworkStore(data_dir=data_dir), static_dir=static_dir)
    try:
        uvicorn.run(app, host=args.host, port=args.port, log_level="info")
    except SystemExit as exc:  # uvicorn exits nonzero when startup fails
        if exc.code:
            print(
                f"error: server failed to start on {args.host}:{args.port}",
                file=sys.stderr,
            )
            return 1
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    return 0


def main(argv: Optional[List[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        if args.command == "generate":
            return _cmd_generate(args, parser)
        if args.command == "donut":
            return _cmd_donut(args, parser)
        if args.command == "serve":
            return _cmd_serve(args)
    except (IngestError, NetworkValidationError, EmptyNetwork) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    raise AssertionError("unreachable")


if __name__ == "__main__":
    sys.exit(main())
