"""File ingestion and result serialization.

Two input formats are supported: plain edge-list text (``src dst weight``
per line, ``#`` comments, comma or whitespace separated) and Matrix Market
coordinate files read as the weighted adjacency matrix, whose entry
``(i, j)`` is the weight of the directed edge ``j -> i``. Results go out as
a per-edge CSV, a JSON document, an optional DOT drawing with
cluster-colored edges, and optional Matrix Market dumps of every pipeline
matrix.
"""

from __future__ import annotations

import io as _io
import json
from dataclasses import asdict, dataclass, field
from pathlib import Path

import numpy as np
import scipy.io
import scipy.sparse as sp

from . import __version__
from .cuts import CutReport
from .graph import Digraph, build_digraph
from .spectral import ClusterAssignment
from .volumes import EdgeVolumes


class EdgeListParseError(ValueError):
    """Malformed edge-list input; carries the offending line number."""

    def __init__(self, path, line_no: int, message: str):
        super().__init__(f"{path}:{line_no}: {message}")
        self.line_no = line_no


@dataclass(frozen=True)
class RunConfig:
    """Everything that determines one clustering run's output."""

    method: str
    k: int
    input_path: str
    input_format: str = "edgelist"
    nu_path: str | None = None
    normalized: bool = True
    undirected: bool = False
    one_based: bool = False
    seed: int = 0
    restarts: int = 20

    def nu_source(self) -> str:
        return "file" if self.nu_path else "weighted-degree"


@dataclass
class ResultDocument:
    """Serializable record of one clustering run."""

    config: RunConfig
    version: str
    n_vertices: int
    n_edges: int
    n_clusters: int
    eigenvalues: list[float]
    edges: list[dict]
    clusters: list[dict]
    totals: dict
    warnings: list[str] = field(default_factory=list)
    timings: dict | None = None

    def to_dict(self) -> dict:
        doc = asdict(self)
        if doc["timings"] is None:
            del doc["timings"]
        return doc


def read_edge_list(
    path,
    format: str = "edgelist",
    one_based: bool = False,
    directed: bool = True,
) -> Digraph:
    """Load a digraph from an edge-list text file or a Matrix Market file."""
    path = Path(path)
    if format == "edgelist":
        return _read_edgelist_text(path, one_based=one_based, directed=directed)
    if format in ("mtx", "matrix-market", "matrixmarket"):
        return _read_matrix_market(path, directed=directed)
    raise ValueError(f"unknown input format {format!r}")


def _read_edgelist_text(path: Path, one_based: bool, directed: bool) -> Digraph:
    records = []
    offset = 1 if one_based else 0
    max_idx = -1
    with open(path, "r", encoding="utf-8") as fh:
        for line_no, raw in enumerate(fh, start=1):
            line = raw.split("#", 1)[0].strip()
            if not line:
                continue
            parts = line.replace(",", " ").split()
            if len(parts) not in (2, 3):
                raise EdgeListParseError(
                    path, line_no, f"expected 'src dst [weight]', got {raw.strip()!r}"
                )
            try:
                i = int(parts[0]) - offset
                j = int(parts[1]) - offset
                w = float(parts[2]) if len(parts) == 3 else 1.0
            except ValueError as exc:
                raise EdgeListParseError(path, line_no, str(exc)) from None
            if i < 0 or j < 0:
                raise EdgeListParseError(
                    path, line_no, f"vertex index below {'1' if one_based else '0'}"
                )
            records.append((i, j, w))
            max_idx = max(max_idx, i, j)
    return build_digraph(records, n_vertices=max_idx + 1, directed=directed)


def _read_matrix_market(path: Path, directed: bool) -> Digraph:
    mat = scipy.io.mmread(path)
    coo = sp.coo_array(mat)
    n_rows, n_cols = coo.shape
    if n_rows != n_cols:
        raise ValueError(
            f"{path}: adjacency matrix must be square, got {n_rows} x {n_cols}"
        )
    # Entry (i, j) weights the edge j -> i.
    records = list(zip(coo.col.tolist(), coo.row.tolist(), coo.data.tolist()))
    if not directed:
        # Keep each undirected edge once; the builder adds both orientations.
        records = [(i, j, w) for i, j, w in records if i <= j]
    return build_digraph(records, n_vertices=n_rows, directed=directed)


def read_vertex_vector(path, n_vertices: int) -> np.ndarray:
    """One importance value per line, length must match the vertex count."""
    values = []
    with open(path, "r", encoding="utf-8") as fh:
        for line_no, raw in enumerate(fh, start=1):
            line = raw.split("#", 1)[0].strip()
            if not line:
                continue
            try:
                values.append(float(line))
            except ValueError:
                raise EdgeListParseError(path, line_no, f"expected a real number, got {raw.strip()!r}") from None
    if len(values) != n_vertices:
        raise ValueError(
            f"{path}: vertex vector has {len(values)} entries, expected {n_vertices}"
        )
    return np.asarray(values)


def build_result_document(
    config: RunConfig,
    g: Digraph,
    assignment: ClusterAssignment,
    vols: EdgeVolumes,
    warnings_seen: list[str] | None = None,
    timings: dict | None = None,
) -> ResultDocument:
    """Assemble the JSON-able record for one finished run."""
    report: CutReport = assignment.report
    edges = [
        {
            "edge_index": p,
            "src": int(g.src[p]),
            "dst": int(g.dst[p]),
            "weight": float(g.weights[p]),
            "volume": float(vols.values[p]),
            "cluster": int(assignment.labels[p]),
        }
        for p in range(g.n_edges)
    ]
    clusters = [
        {
            "cluster": k,
            "size": int(report.sizes[k]),
            "volume": float(report.volume[k]),
            "cut": float(report.cut[k]),
            "links_plus_within": float(report.links_plus_within[k]),
            "links_minus_within": float(report.links_minus_within[k]),
            "unscaled_cost": float(report.unscaled_cost[k]),
            "normalized_cost": float(report.normalized_cost[k]),
        }
        for k in range(report.n_clusters)
    ]
    totals = {
        "cut": report.total_cut,
        "unscaled_cost": report.total_unscaled_cost,
        "normalized_cost": report.total_normalized_cost,
    }
    return ResultDocument(
        config=config,
        version=__version__,
        n_vertices=g.n_vertices,
        n_edges=g.n_edges,
        n_clusters=assignment.n_clusters,
        eigenvalues=[float(v) for v in assignment.eigenvalues],
        edges=edges,
        clusters=clusters,
        totals=totals,
        warnings=list(warnings_seen or []),
        timings=timings,
    )


_CSV_HEADER = "edge_index,src,dst,weight,volume,cluster"

# Edge colors for DOT export, cycled when there are more clusters.
_PALETTE = [
    "#1f77b4", "#ff7f0e", "#2ca02c", "#d62728", "#9467bd",
    "#8c564b", "#e377c2", "#7f7f7f", "#bcbd22", "#17becf",
]


def render_csv(doc: ResultDocument) -> str:
    lines = [_CSV_HEADER]
    for rec in doc.edges:
        lines.append(
            f"{rec['edge_index']},{rec['src']},{rec['dst']},"
            f"{rec['weight']!r},{rec['volume']!r},{rec['cluster']}"
        )
    return "\n".join(lines) + "\n"


def render_json(doc: ResultDocument) -> str:
    return json.dumps(doc.to_dict(), indent=2, sort_keys=True) + "\n"


def render_dot(doc: ResultDocument, name: str = "edge_clusters") -> str:
    lines = [f"digraph {name} {{"]
    lines.append('  edge [dir=forward];')
    for rec in doc.edges:
        color = _PALETTE[rec["cluster"] % len(_PALETTE)]
        lines.append(
            f'  {rec["src"]} -> {rec["dst"]} '
            f'[color="{color}", label="{rec["cluster"]}"];'
        )
    lines.append("}")
    return "\n".join(lines) + "\n"


def write_results(
    doc: ResultDocument,
    csv_path=None,
    json_path=None,
    dot_path=None,
) -> list[Path]:
    """Write the requested result files; returns the paths written."""
    written = []
    for path, renderer in (
        (csv_path, render_csv),
        (json_path, render_json),
        (dot_path, render_dot),
    ):
        if path is None:
            continue
        path = Path(path)
        path.parent.mkdir(parents=True, exist_ok=True)
        path.write_text(renderer(doc), encoding="utf-8")
        written.append(path)
    return written


def _mm_text(matrix) -> str:
    buf = _io.BytesIO()
    scipy.io.mmwrite(buf, sp.coo_matrix(matrix))
    return buf.getvalue().decode("ascii")


def dump_matrices(matrices: dict, out_dir) -> list[Path]:
    """Write named pipeline matrices as Matrix Market coordinate files."""
    out_dir = Path(out_dir)
    out_dir.mkdir(parents=True, exist_ok=True)
    written = []
    for name, matrix in matrices.items():
        path = out_dir / f"{name}.mtx"
        path.write_text(_mm_text(matrix), encoding="utf-8")
        written.append(path)
    return written
