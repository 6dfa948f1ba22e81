"""edgeflow: spectral clustering of directed-graph edges.

Groups the M directed edges of a weighted digraph into K clusters under one
of three pairwise edge affinities (producer/receptor, directed-path, or
region emphasis), via volume-normalized spectral relaxation with exact
graph-cut cost accounting on a signed dual graph.
"""

__version__ = "0.1.0"

from .graph import (
    Digraph,
    VertexStats,
    VertexVector,
    build_digraph,
    default_nu,
    incidence,
    vertex_stats,
)
from .laplacians import (
    Affinity,
    DualGraph,
    EdgeLaplacian,
    FlowLaplacian,
    affinity_sign_matrix,
    build_dual_graph,
    build_edge_laplacian,
    build_flow_laplacian,
    build_flow_laplacian_general,
    edge_differential,
    shared_vertex_weights,
    signed_pair_matrix,
)
from .volumes import (
    EdgeVolumes,
    MonotonicityReport,
    NormalizedLaplacian,
    edge_volumes,
    normalize_laplacian,
    volume_monotonicity_probe,
)
from .spectral import (
    ClusterAssignment,
    EigenBasis,
    FeatureMatrix,
    cluster_edges,
    kmeans_pp,
    row_normalize,
    smallest_eigenpairs,
)
from .cuts import (
    CutReport,
    brute_force_min,
    cut_quantities,
    cut_report,
    normalized_cost,
    unscaled_cost,
)
from .generators import (
    bottleneck,
    cockroach,
    directed_path,
    disjoint_union,
    generate_synthetic,
    inout_star,
    random_digraph,
    ring,
    seven_vertex_demo,
    two_triangles,
)
from .io import (
    EdgeListParseError,
    ResultDocument,
    RunConfig,
    build_result_document,
    dump_matrices,
    read_edge_list,
    read_vertex_vector,
    write_results,
)
from .cli import run_cli

__all__ = [
    "__version__",
    "Affinity",
    "ClusterAssignment",
    "CutReport",
    "Digraph",
    "DualGraph",
    "EdgeLaplacian",
    "EdgeListParseError",
    "EdgeVolumes",
    "EigenBasis",
    "FeatureMatrix",
    "FlowLaplacian",
    "MonotonicityReport",
    "NormalizedLaplacian",
    "ResultDocument",
    "RunConfig",
    "VertexStats",
    "VertexVector",
    "affinity_sign_matrix",
    "bottleneck",
    "brute_force_min",
    "build_digraph",
    "build_dual_graph",
    "build_edge_laplacian",
    "build_flow_laplacian",
    "build_flow_laplacian_general",
    "build_result_document",
    "cluster_edges",
    "cockroach",
    "cut_quantities",
    "cut_report",
    "default_nu",
    "directed_path",
    "disjoint_union",
    "dump_matrices",
    "edge_differential",
    "edge_volumes",
    "generate_synthetic",
    "incidence",
    "inout_star",
    "kmeans_pp",
    "normalize_laplacian",
    "normalized_cost",
    "random_digraph",
    "read_edge_list",
    "read_vertex_vector",
    "ring",
    "row_normalize",
    "run_cli",
    "seven_vertex_demo",
    "shared_vertex_weights",
    "signed_pair_matrix",
    "smallest_eigenpairs",
    "two_triangles",
    "unscaled_cost",
    "vertex_stats",
    "volume_monotonicity_probe",
    "write_results",
]
