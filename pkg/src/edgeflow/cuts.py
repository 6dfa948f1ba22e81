"""Exact cut/cost evaluation on the signed dual graph, plus an exhaustive
minimizer for small instances.

For a cluster ``S`` of edges (dual vertices), the unscaled cost of ``S`` is
expressed through three sums over dual adjacency entries:

* ``cut(S)``: total absolute weight between ``S`` and its complement
  (each crossing dual edge counted once per cluster it borders);
* ``links+ / links-``: positive / negative weight inside ``S``, summed over
  ordered pairs so each intra-cluster dual edge contributes twice.

The per-affinity unscaled cost — ``cut + 2*links-`` (PRE), ``cut +
2*links+`` (DPE), ``cut`` (RGE) — equals the quadratic form ``x^T L x`` of
the matching flow Laplacian at the cluster's 0/1 indicator, exactly. The
normalized cost divides each cluster's unscaled cost by its volume.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .graph import Digraph, default_nu
from .laplacians import Affinity, DualGraph, _as_affinity, build_dual_graph, build_edge_laplacian
from .volumes import EdgeVolumes, edge_volumes


@dataclass(frozen=True)
class CutReport:
    """Per-cluster cut quantities and (optionally) costs.

    Arrays are indexed by cluster label. ``cut[k]`` counts each dual edge
    between cluster ``k`` and the rest once, so ``total_cut`` counts every
    crossing dual edge twice (once from each side it borders).
    """

    n_clusters: int
    sizes: np.ndarray
    cut: np.ndarray
    links_plus_within: np.ndarray
    links_minus_within: np.ndarray
    kind: Affinity | None = None
    unscaled_cost: np.ndarray | None = None
    volume: np.ndarray | None = None
    normalized_cost: np.ndarray | None = None

    @property
    def total_cut(self) -> float:
        return float(self.cut.sum())

    @property
    def total_unscaled_cost(self) -> float:
        if self.unscaled_cost is None:
            raise ValueError("report carries no costs; pass an affinity kind")
        return float(self.unscaled_cost.sum())

    @property
    def total_normalized_cost(self) -> float:
        if self.normalized_cost is None:
            raise ValueError("report carries no normalized costs; pass volumes")
        return float(self.normalized_cost.sum())


def _check_labels(dual: DualGraph, labels) -> tuple[np.ndarray, int]:
    labels = np.asarray(labels, dtype=np.int64)
    m = dual.n_dual_vertices
    if labels.shape != (m,):
        raise ValueError(f"labels have shape {labels.shape}, expected ({m},)")
    if m and (labels.min() < 0):
        raise ValueError("labels must be non-negative")
    n_clusters = int(labels.max()) + 1 if m else 0
    return labels, n_clusters


def cut_quantities(dual: DualGraph, labels) -> CutReport:
    """Cut and within-cluster link sums for every cluster."""
    labels, n_clusters = _check_labels(dual, labels)
    w = dual.adjacency
    pos = w.maximum(0.0)
    neg = (-w).maximum(0.0)
    abs_deg = np.asarray(pos.sum(axis=1)).ravel() + np.asarray(neg.sum(axis=1)).ravel()
    cut = np.zeros(n_clusters)
    links_plus = np.zeros(n_clusters)
    links_minus = np.zeros(n_clusters)
    sizes = np.bincount(labels, minlength=n_clusters).astype(np.int64)
    for k in range(n_clusters):
        x = (labels == k).astype(float)
        pos_within = float(x @ (pos @ x))
        neg_within = float(x @ (neg @ x))
        links_plus[k] = pos_within
        links_minus[k] = neg_within
        cut[k] = float(abs_deg @ x) - pos_within - neg_within
    return CutReport(
        n_clusters=n_clusters,
        sizes=sizes,
        cut=cut,
        links_plus_within=links_plus,
        links_minus_within=links_minus,
    )


def unscaled_cost(dual: DualGraph, labels, kind) -> np.ndarray:
    """Per-cluster unscaled costs for one affinity.

    Equals ``x^T L x`` at each cluster's 0/1 indicator ``x`` for the
    corresponding flow Laplacian.
    """
    kind = _as_affinity(kind)
    report = cut_quantities(dual, labels)
    return _costs_from_quantities(report, kind)


def _costs_from_quantities(report: CutReport, kind: Affinity) -> np.ndarray:
    if kind is Affinity.PRE:
        return report.cut + 2.0 * report.links_minus_within
    if kind is Affinity.DPE:
        return report.cut + 2.0 * report.links_plus_within
    return report.cut.copy()


def normalized_cost(dual: DualGraph, labels, kind, vols: EdgeVolumes) -> float:
    """Total normalized cost: per-cluster unscaled cost over cluster volume."""
    report = cut_report(dual, labels, kind, vols)
    return report.total_normalized_cost


def cut_report(dual: DualGraph, labels, kind, vols: EdgeVolumes | None = None) -> CutReport:
    """Full per-cluster report: cuts, links, costs, volumes."""
    kind = _as_affinity(kind)
    labels, n_clusters = _check_labels(dual, labels)
    base = cut_quantities(dual, labels)
    costs = _costs_from_quantities(base, kind)
    volume = None
    ncost = None
    if vols is not None:
        volume = np.array(
            [vols.values[labels == k].sum() for k in range(n_clusters)]
        )
        if np.any(base.sizes == 0):
            raise ValueError("normalized cost is undefined for empty clusters")
        ncost = costs / volume
    return CutReport(
        n_clusters=n_clusters,
        sizes=base.sizes,
        cut=base.cut,
        links_plus_within=base.links_plus_within,
        links_minus_within=base.links_minus_within,
        kind=kind,
        unscaled_cost=costs,
        volume=volume,
        normalized_cost=ncost,
    )


def _partitions_with_k_blocks(m: int, k: int):
    """Yield canonical label vectors (restricted growth strings) for all
    partitions of ``m`` items into exactly ``k`` nonempty blocks, in
    lexicographic order."""
    labels = np.zeros(m, dtype=np.int64)

    def rec(i: int, used: int):
        if i == m:
            if used == k:
                yield labels.copy()
            return
        # Pruning: remaining items must be able to open the missing blocks.
        if used + (m - i) < k:
            return
        top = min(used, k - 1)
        for lab in range(top + 1):
            labels[i] = lab
            yield from rec(i + 1, max(used, lab + 1))

    yield from rec(1, 1) if m else iter(())


def brute_force_min(
    g: Digraph,
    kind,
    k: int,
    nu=None,
    normalized: bool = True,
    max_edges: int = 12,
) -> tuple[np.ndarray, float]:
    """Exhaustive minimum-cost edge clustering on a small digraph.

    Enumerates every partition of the edge set into exactly ``k`` nonempty
    clusters (labelings up to label permutation) and returns the canonical
    label vector achieving the minimum total cost; ties go to the
    lexicographically smallest label vector. The objective is the normalized
    cost, or the plain unscaled total when ``normalized=False``.
    """
    kind = _as_affinity(kind)
    m = g.n_edges
    if m > max_edges:
        raise ValueError(f"instance too large for enumeration: {m} edges > {max_edges}")
    if not (1 <= k <= m):
        raise ValueError(f"cluster count {k} must lie in [1, {m}]")
    vec = default_nu(g) if nu is None else nu
    dual = build_dual_graph(build_edge_laplacian(g, vec))
    dense = dual.adjacency.toarray()
    pos = np.maximum(dense, 0.0)
    neg = np.maximum(-dense, 0.0)
    absw = pos + neg
    vols = edge_volumes(g, vec).values if normalized else None

    best_labels = None
    best_cost = np.inf
    for labels in _partitions_with_k_blocks(m, k):
        total = 0.0
        for c in range(k):
            mask = labels == c
            cutc = absw[np.ix_(mask, ~mask)].sum()
            if kind is Affinity.PRE:
                cost = cutc + 2.0 * neg[np.ix_(mask, mask)].sum()
            elif kind is Affinity.DPE:
                cost = cutc + 2.0 * pos[np.ix_(mask, mask)].sum()
            else:
                cost = cutc
            if normalized:
                cost /= vols[mask].sum()
            total += cost
        if total < best_cost:
            best_cost = total
            best_labels = labels
    return best_labels, float(best_cost)
