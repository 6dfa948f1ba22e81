"""Command-line front end: one clustering run per invocation.

Example::

    edgeflow --method rge --k 2 --input graph.txt --out-json result.json

Outputs are byte-identical across repeated runs with the same flags (wall
clock timings are only included when ``--with-timings`` is passed).
"""

from __future__ import annotations

import argparse
import sys
import time
import warnings
from pathlib import Path

from .graph import default_nu
from .io import (
    RunConfig,
    build_result_document,
    dump_matrices,
    read_edge_list,
    read_vertex_vector,
    write_results,
)
from .laplacians import (
    build_dual_graph,
    build_edge_laplacian,
    build_flow_laplacian,
    affinity_sign_matrix,
    shared_vertex_weights,
)
from .spectral import cluster_edges
from .volumes import edge_volumes, normalize_laplacian


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="edgeflow",
        description="Cluster the directed edges of a weighted digraph.",
    )
    parser.add_argument("--method", choices=["pre", "dpe", "rge"], required=True,
                        help="edge affinity to emphasize")
    parser.add_argument("--k", type=int, required=True, help="number of clusters")
    parser.add_argument("--input", required=True, help="input graph file")
    parser.add_argument("--format", choices=["edgelist", "mtx"], default="edgelist",
                        help="input format (default: edgelist)")
    parser.add_argument("--nu", default=None, metavar="FILE",
                        help="per-vertex importance file, one value per line "
                             "(default: weighted degrees)")
    parser.add_argument("--unnormalized", action="store_true",
                        help="skip volume normalization of the Laplacian")
    parser.add_argument("--undirected", action="store_true",
                        help="treat input edges as undirected; each becomes two directed edges")
    parser.add_argument("--one-based", action="store_true",
                        help="edge-list vertex indices start at 1")
    parser.add_argument("--seed", type=int, default=0, help="k-means++ seed (default 0)")
    parser.add_argument("--restarts", type=int, default=20,
                        help="k-means++ restarts (default 20)")
    parser.add_argument("--out-csv", default=None, help="per-edge CSV output path")
    parser.add_argument("--out-json", default=None, help="JSON result document path")
    parser.add_argument("--out-dot", default=None, help="DOT drawing output path")
    parser.add_argument("--dump-matrices", default=None, metavar="DIR",
                        help="write pipeline matrices as Matrix Market files into DIR")
    parser.add_argument("--with-timings", action="store_true",
                        help="include wall-clock timings in the JSON document "
                             "(breaks byte-for-byte reproducibility)")
    return parser


def _validate(args) -> list[str]:
    problems = []
    if args.k < 1:
        problems.append(f"--k must be at least 1, got {args.k}")
    if args.restarts < 1:
        problems.append(f"--restarts must be at least 1, got {args.restarts}")
    if not Path(args.input).is_file():
        problems.append(f"--input file not found: {args.input}")
    if args.nu is not None and not Path(args.nu).is_file():
        problems.append(f"--nu file not found: {args.nu}")
    return problems


def run_cli(argv=None) -> int:
    parser = _build_parser()
    args = parser.parse_args(argv)
    problems = _validate(args)
    if problems:
        for p in problems:
            print(f"error: {p}", file=sys.stderr)
        return 2

    config = RunConfig(
        method=args.method,
        k=args.k,
        input_path=args.input,
        input_format=args.format,
        nu_path=args.nu,
        normalized=not args.unnormalized,
        undirected=args.undirected,
        one_based=args.one_based,
        seed=args.seed,
        restarts=args.restarts,
    )
    t0 = time.perf_counter()
    try:
        with warnings.catch_warnings(record=True) as caught:
            warnings.simplefilter("always")
            g = read_edge_list(
                args.input,
                format=args.format,
                one_based=args.one_based,
                directed=not args.undirected,
            )
            nu = read_vertex_vector(args.nu, g.n_vertices) if args.nu else default_nu(g)
            t_load = time.perf_counter()
            assignment = cluster_edges(
                g,
                args.method,
                args.k,
                nu=nu,
                normalized=not args.unnormalized,
                seed=args.seed,
                restarts=args.restarts,
            )
            t_cluster = time.perf_counter()
            vols = edge_volumes(g, nu)
    except (ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1

    timings = None
    if args.with_timings:
        timings = {
            "load_s": t_load - t0,
            "cluster_s": t_cluster - t_load,
        }
    doc = build_result_document(
        config,
        g,
        assignment,
        vols,
        warnings_seen=[str(w.message) for w in caught],
        timings=timings,
    )
    write_results(doc, csv_path=args.out_csv, json_path=args.out_json, dot_path=args.out_dot)

    if args.dump_matrices:
        lap = build_flow_laplacian(g, nu, args.method)
        le = build_edge_laplacian(g, nu)
        dual = build_dual_graph(le)
        lt = normalize_laplacian(lap, vols, enabled=not args.unnormalized)
        dump_matrices(
            {
                "affinity_signs": affinity_sign_matrix(g, args.method),
                "pair_weights": shared_vertex_weights(g, nu),
                "edge_laplacian": le.matrix,
                "dual_adjacency": dual.adjacency,
                "flow_laplacian": lap.matrix,
                "normalized_laplacian": lt.matrix,
            },
            args.dump_matrices,
        )

    report = assignment.report
    print(
        f"{args.method.upper()} clustering: {g.n_edges} edges, "
        f"{assignment.n_clusters} clusters, "
        f"total normalized cost {report.total_normalized_cost:.6g}"
    )
    return 0


def main() -> None:
    sys.exit(run_cli())
