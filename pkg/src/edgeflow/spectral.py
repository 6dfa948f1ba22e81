"""Eigenvector embedding and k-means++ labeling of digraph edges.

The relaxed clustering objective is minimized by the eigenvectors of the
(normalized) flow Laplacian belonging to its K smallest eigenvalues: the
trace of the projected Laplacian over any K orthonormal columns is bounded
below by the sum of those eigenvalues. Each edge's row of the eigenvector
matrix, scaled to unit length, is its feature vector; k-means++ on the rows
yields the edge labels.
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass

import numpy as np
import scipy.linalg
import scipy.sparse as sp
import scipy.sparse.linalg

from .cuts import CutReport, cut_report
from .graph import Digraph, VertexVector, as_vertex_vector, default_nu
from .laplacians import (
    Affinity,
    DualGraph,
    _as_affinity,
    build_dual_graph,
    build_edge_laplacian,
    build_flow_laplacian,
    build_flow_laplacian_general,
    signed_pair_matrix,
)
from .volumes import EdgeVolumes, NormalizedLaplacian, edge_volumes, normalize_laplacian

# Largest matrix handed to the dense symmetric eigensolver; above this the
# shift-inverted Lanczos path is used on the sparse matrix directly.
DENSE_EIGEN_CUTOFF = 4000


@dataclass(frozen=True)
class EigenBasis:
    """K smallest eigenpairs of a symmetric matrix, eigenvalues ascending."""

    eigenvalues: np.ndarray
    vectors: np.ndarray  # (n_edges, k), orthonormal columns

    @property
    def k(self) -> int:
        return self.vectors.shape[1]


@dataclass(frozen=True)
class FeatureMatrix:
    """Row-normalized eigenvector matrix; one unit feature row per edge.

    Rows that were (numerically) zero before scaling are left at zero and
    flagged in ``zero_rows``; they correspond to edges with no coupling in
    the embedding and are attached to their nearest centroid at labeling.
    """

    values: np.ndarray
    zero_rows: np.ndarray

    @property
    def n_rows(self) -> int:
        return self.values.shape[0]


@dataclass(frozen=True)
class ClusterAssignment:
    """Edge labels plus the per-cluster cost/volume report."""

    labels: np.ndarray
    n_clusters: int
    requested_clusters: int
    seed: int
    restarts: int
    kind: Affinity | None = None
    report: CutReport | None = None
    eigenvalues: np.ndarray | None = None
    inertia: float = float("nan")

    @property
    def sizes(self) -> np.ndarray:
        return np.bincount(self.labels, minlength=self.n_clusters)


def smallest_eigenpairs(lt: NormalizedLaplacian, k: int) -> EigenBasis:
    """The K smallest eigenpairs of a (normalized) flow Laplacian.

    Dense symmetric solve up to ``DENSE_EIGEN_CUTOFF`` edges; beyond that a
    shift-inverted Lanczos run with a fixed start vector keeps results
    deterministic under an identical configuration.
    """
    m = lt.n_edges
    if not (1 <= k <= m):
        raise ValueError(f"need 1 <= k <= {m}, got k={k}")
    if m <= DENSE_EIGEN_CUTOFF:
        dense = lt.matrix.toarray()
        vals, vecs = scipy.linalg.eigh(dense, subset_by_index=(0, k - 1))
    else:
        mat = sp.csc_array(lt.matrix)
        # Shift strictly below the PSD spectrum so the shifted matrix is
        # invertible even when 0 is an eigenvalue.
        scale = float(abs(mat).sum(axis=1).max()) or 1.0
        sigma = -1e-3 * scale
        v0 = np.full(m, 1.0 / np.sqrt(m))
        vals, vecs = sp.linalg.eigsh(mat, k=k, sigma=sigma, which="LM", v0=v0)
    order = np.argsort(vals, kind="stable")
    return EigenBasis(eigenvalues=vals[order], vectors=vecs[:, order])


def row_normalize(basis: EigenBasis, zero_tol: float = 1e-12) -> FeatureMatrix:
    """Scale each eigenvector-matrix row to unit Euclidean norm.

    Rows with norm at most ``zero_tol`` are left as exact zeros and flagged.
    """
    y = basis.vectors
    norms = np.linalg.norm(y, axis=1)
    zero = norms <= zero_tol
    safe = np.where(zero, 1.0, norms)
    values = y / safe[:, None]
    values[zero] = 0.0
    return FeatureMatrix(values=values, zero_rows=zero)


def _pp_seed(points: np.ndarray, k: int, rng: np.random.Generator) -> np.ndarray:
    """Classic k-means++ seeding: distance-squared–proportional draws."""
    n = points.shape[0]
    centroids = np.empty((k, points.shape[1]))
    centroids[0] = points[rng.integers(n)]
    d2 = np.sum((points - centroids[0]) ** 2, axis=1)
    for j in range(1, k):
        probs = d2 / d2.sum()
        centroids[j] = points[rng.choice(n, p=probs)]
        d2 = np.minimum(d2, np.sum((points - centroids[j]) ** 2, axis=1))
    return centroids


def _pairwise_sq_dists(points: np.ndarray, centroids: np.ndarray) -> np.ndarray:
    d2 = (
        np.sum(points**2, axis=1)[:, None]
        + np.sum(centroids**2, axis=1)[None, :]
        - 2.0 * points @ centroids.T
    )
    np.maximum(d2, 0.0, out=d2)
    return d2


def _lloyd(points, centroids, tol=1e-9, max_iter=300):
    """Lloyd iterations to a relative objective change below ``tol``.

    A cluster emptied mid-run keeps its previous centroid. Returns labels,
    centroids, and the final objective.
    """
    prev = np.inf
    for _ in range(max_iter):
        d2 = _pairwise_sq_dists(points, centroids)
        labels = np.argmin(d2, axis=1)
        inertia = float(d2[np.arange(points.shape[0]), labels].sum())
        new_centroids = centroids.copy()
        for j in range(centroids.shape[0]):
            mask = labels == j
            if np.any(mask):
                new_centroids[j] = points[mask].mean(axis=0)
        if prev - inertia <= tol * max(inertia, 1e-300):
            centroids = new_centroids
            break
        centroids = new_centroids
        prev = inertia
    d2 = _pairwise_sq_dists(points, centroids)
    labels = np.argmin(d2, axis=1)
    inertia = float(d2[np.arange(points.shape[0]), labels].sum())
    return labels, centroids, inertia


def kmeans_pp(features: FeatureMatrix, k: int, seed: int = 0, restarts: int = 20) -> ClusterAssignment:
    """Deterministic best-of-restarts k-means++ on the feature rows.

    All restarts draw from one generator seeded with ``seed``, so the output
    is a pure function of ``(features, k, seed, restarts)``. Restarts whose
    final assignment leaves a cluster empty are not eligible winners; if
    every restart does, the best labeling is compacted to its nonempty
    clusters and a warning is issued. Zero feature rows sit at the origin
    and join their nearest centroid (ties to the lowest cluster index).
    """
    if k < 1:
        raise ValueError("cluster count must be at least 1")
    x = features.values
    active = ~features.zero_rows
    points = x[active]
    if points.shape[0] == 0:
        raise ValueError("no nonzero feature rows to cluster")
    n_distinct = np.unique(points, axis=0).shape[0]
    if k > n_distinct:
        raise ValueError(
            f"cluster count {k} exceeds the {n_distinct} distinct feature rows"
        )
    rng = np.random.default_rng(seed)
    best = None
    fallback = None
    for _ in range(max(1, restarts)):
        centroids = _pp_seed(points, k, rng)
        labels, centroids, inertia = _lloyd(points, centroids)
        n_occupied = np.unique(labels).size
        candidate = (inertia, labels, centroids)
        if n_occupied == k:
            if best is None or inertia < best[0]:
                best = candidate
        elif fallback is None or inertia < fallback[0]:
            fallback = candidate
    if best is None:
        warnings.warn(
            "every k-means restart left a cluster empty; "
            "returning fewer clusters than requested",
            UserWarning,
            stacklevel=2,
        )
        best = fallback
    inertia, labels, centroids = best

    # Compact labels to occupied clusters (no-op when none are empty),
    # keeping cluster order stable.
    occupied = np.unique(labels)
    remap = -np.ones(k, dtype=np.int64)
    remap[occupied] = np.arange(occupied.size)
    centroids = centroids[occupied]
    full = np.empty(features.n_rows, dtype=np.int64)
    full[active] = remap[labels]
    if np.any(~active):
        d2 = _pairwise_sq_dists(x[~active], centroids)
        full[~active] = np.argmin(d2, axis=1)
    return ClusterAssignment(
        labels=full,
        n_clusters=int(occupied.size),
        requested_clusters=k,
        seed=seed,
        restarts=restarts,
        inertia=inertia,
    )


def cluster_edges(
    g: Digraph,
    kind,
    k: int,
    nu=None,
    pair_weights=None,
    normalized: bool = True,
    seed: int = 0,
    restarts: int = 20,
) -> ClusterAssignment:
    """Full edge-clustering pipeline for one affinity.

    Builds the flow Laplacian (from ``pair_weights`` when given, otherwise
    from the vertex importance ``nu``, defaulting to the weighted-degree
    choice), normalizes by edge volumes unless ``normalized=False``, embeds
    the edges with the K smallest eigenvectors, row-normalizes, and labels
    the rows with k-means++. The returned assignment carries the exact
    per-cluster cut/cost report evaluated on the signed dual graph.
    """
    kind = _as_affinity(kind)
    if g.n_edges == 0:
        raise ValueError("cannot cluster an empty edge set")
    if not (1 <= k <= g.n_edges):
        raise ValueError(f"need 1 <= k <= {g.n_edges}, got k={k}")
    vec = default_nu(g) if nu is None else as_vertex_vector(nu, g.n_vertices)
    if pair_weights is None:
        lap = build_flow_laplacian(g, vec, kind, construction="edge-laplacian")
        dual = build_dual_graph(build_edge_laplacian(g, vec))
    else:
        lap = build_flow_laplacian_general(g, pair_weights, kind)
        # Cost reporting sees the user weights as a signed dual adjacency:
        # positive on converge/diverge pairs, negative on path pairs.
        dual = DualGraph(adjacency=signed_pair_matrix(g, pair_weights))
    vols = edge_volumes(g, vec)
    lt = normalize_laplacian(lap, vols, enabled=normalized)
    basis = smallest_eigenpairs(lt, k)
    feats = row_normalize(basis)
    assign = kmeans_pp(feats, k, seed=seed, restarts=restarts)
    report = cut_report(dual, assign.labels, kind, vols)
    return ClusterAssignment(
        labels=assign.labels,
        n_clusters=assign.n_clusters,
        requested_clusters=k,
        seed=seed,
        restarts=restarts,
        kind=kind,
        report=report,
        eigenvalues=basis.eigenvalues,
        inertia=assign.inertia,
    )
