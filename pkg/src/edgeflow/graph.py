"""Directed multigraph container and per-vertex flow statistics.

Edges are enumerated: edge ``p`` runs from ``src[p]`` to ``dst[p]`` with
weight ``weights[p]``, and that enumeration is fixed for the lifetime of the
graph. Every matrix built downstream (incidence, edge Laplacian, dual
adjacency, flow Laplacians) indexes edges by this enumeration, so results can
always be mapped back to the input edge list.
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass

import numpy as np
import scipy.sparse as sp


@dataclass(frozen=True)
class Digraph:
    """Immutable directed multigraph with enumerated, weighted edges.

    Self-edges and parallel edges are legal; they simply occupy their own
    edge indices. Weights are strictly positive (ingestion rejects zeros and
    absolute-values signed inputs), all vertex indices lie in
    ``[0, n_vertices)``, and isolated vertices are allowed.
    """

    n_vertices: int
    src: np.ndarray
    dst: np.ndarray
    weights: np.ndarray
    directed: bool = True

    def __post_init__(self):
        object.__setattr__(self, "src", np.asarray(self.src, dtype=np.int64))
        object.__setattr__(self, "dst", np.asarray(self.dst, dtype=np.int64))
        object.__setattr__(self, "weights", np.asarray(self.weights, dtype=float))
        if not (self.src.shape == self.dst.shape == self.weights.shape):
            raise ValueError("src, dst, and weights must have matching lengths")
        for arr in (self.src, self.dst, self.weights):
            arr.setflags(write=False)

    @property
    def n_edges(self) -> int:
        return self.src.shape[0]

    def edge_list(self) -> list[tuple[int, int, float]]:
        """Edges as ``(src, dst, weight)`` tuples in enumeration order."""
        return list(zip(self.src.tolist(), self.dst.tolist(), self.weights.tolist()))

    def adjacency(self) -> sp.csr_array:
        """Weighted adjacency with entry ``(i, j)`` holding the weight of
        edge ``j -> i`` (parallel edges accumulate)."""
        n = self.n_vertices
        return sp.csr_array(
            (self.weights, (self.dst, self.src)), shape=(n, n)
        )


@dataclass(frozen=True)
class VertexStats:
    """Per-vertex participation counts and weighted degrees.

    ``sigma`` counts edge endpoints at each vertex (a self-edge contributes
    two). ``d_out_abs`` / ``d_in_abs`` sum absolute weights of outgoing /
    incoming edges, ``d_abs`` is their sum, and ``d_net = d_out - d_in`` is
    the signed net outflow.
    """

    sigma: np.ndarray
    sigma_out: np.ndarray
    sigma_in: np.ndarray
    d_out_abs: np.ndarray
    d_in_abs: np.ndarray
    d_abs: np.ndarray
    d_out: np.ndarray
    d_in: np.ndarray
    d_net: np.ndarray


@dataclass(frozen=True)
class VertexVector:
    """Per-vertex importance values feeding pair weights and edge volumes.

    ``source`` records whether the values came from the weighted-degree
    default or were supplied by the caller.
    """

    values: np.ndarray
    source: str = "user-supplied"

    def __post_init__(self):
        object.__setattr__(self, "values", np.asarray(self.values, dtype=float))
        self.values.setflags(write=False)

    def __len__(self) -> int:
        return self.values.shape[0]


def as_vertex_vector(nu, n_vertices: int) -> VertexVector:
    """Coerce an array-like or VertexVector to a validated VertexVector."""
    if isinstance(nu, VertexVector):
        vec = nu
    else:
        vec = VertexVector(np.asarray(nu, dtype=float))
    if vec.values.shape != (n_vertices,):
        raise ValueError(
            f"vertex vector has length {vec.values.shape}, expected ({n_vertices},)"
        )
    if not np.all(np.isfinite(vec.values)):
        raise ValueError("vertex vector contains non-finite entries")
    return vec


def build_digraph(edge_list, n_vertices: int, directed: bool = True) -> Digraph:
    """Validate an edge list and assemble a :class:`Digraph`.

    Parameters
    ----------
    edge_list : iterable of (src, dst, weight) or (src, dst)
        Missing weights default to 1. Vertex indices must lie in
        ``[0, n_vertices)`` and weights must be finite and nonzero.
    n_vertices : int
        Number of vertices; isolated vertices are permitted.
    directed : bool
        When False each record is an undirected edge ``{i, j}`` and is
        expanded into the two directed edges ``i -> j`` and ``j -> i`` with
        the same weight, doubling the edge count.

    Negative weights are replaced by their absolute values (the clustering
    cost model ignores edge sign) and a single warning summarises how many
    were flipped. Zero weights are rejected outright: a zero-weight edge has
    zero volume, which breaks the normalization stage.
    """
    if n_vertices < 0:
        raise ValueError("n_vertices must be non-negative")
    srcs: list[int] = []
    dsts: list[int] = []
    wts: list[float] = []
    n_signed = 0
    for pos, record in enumerate(edge_list):
        if len(record) == 2:
            i, j = record
            w = 1.0
        elif len(record) == 3:
            i, j, w = record
        else:
            raise ValueError(f"edge {pos}: expected (src, dst[, weight]), got {record!r}")
        i, j = int(i), int(j)
        w = float(w)
        if not (0 <= i < n_vertices and 0 <= j < n_vertices):
            raise ValueError(
                f"edge {pos}: vertex index out of range for n_vertices={n_vertices}: ({i}, {j})"
            )
        if not np.isfinite(w):
            raise ValueError(f"edge {pos}: non-finite weight {w!r}")
        if w == 0.0:
            raise ValueError(f"edge {pos}: zero-weight edges are not representable (zero volume)")
        if w < 0.0:
            n_signed += 1
            w = -w
        if directed:
            srcs.append(i)
            dsts.append(j)
            wts.append(w)
        else:
            srcs.extend((i, j))
            dsts.extend((j, i))
            wts.extend((w, w))
    if n_signed:
        warnings.warn(
            f"{n_signed} signed edge weight(s) replaced by absolute values; "
            "edge clustering ignores weight signs",
            UserWarning,
            stacklevel=2,
        )
    return Digraph(
        n_vertices=n_vertices,
        src=np.asarray(srcs, dtype=np.int64),
        dst=np.asarray(dsts, dtype=np.int64),
        weights=np.asarray(wts, dtype=float),
        directed=directed,
    )


def incidence(g: Digraph) -> sp.csc_array:
    """Unweighted incidence matrix ``B`` (n_vertices x n_edges).

    Column ``p`` holds +1 at the source and -1 at the destination of edge
    ``p``; a self-edge column is identically zero (the +1 and -1 coincide and
    cancel).
    """
    m = g.n_edges
    cols = np.arange(m, dtype=np.int64)
    rows = np.concatenate([g.src, g.dst])
    data = np.concatenate([np.ones(m), -np.ones(m)])
    b = sp.coo_array(
        (data, (rows, np.concatenate([cols, cols]))), shape=(g.n_vertices, m)
    ).tocsc()
    b.sum_duplicates()
    b.eliminate_zeros()
    return b


def vertex_stats(g: Digraph) -> VertexStats:
    """Compute participation counts and weighted degrees for every vertex."""
    n = g.n_vertices
    w = g.weights
    aw = np.abs(w)
    sigma_out = np.bincount(g.src, minlength=n).astype(np.int64)
    sigma_in = np.bincount(g.dst, minlength=n).astype(np.int64)
    d_out = np.bincount(g.src, weights=w, minlength=n)
    d_in = np.bincount(g.dst, weights=w, minlength=n)
    d_out_abs = np.bincount(g.src, weights=aw, minlength=n)
    d_in_abs = np.bincount(g.dst, weights=aw, minlength=n)
    return VertexStats(
        sigma=sigma_out + sigma_in,
        sigma_out=sigma_out,
        sigma_in=sigma_in,
        d_out_abs=d_out_abs,
        d_in_abs=d_in_abs,
        d_abs=d_out_abs + d_in_abs,
        d_out=d_out,
        d_in=d_in,
        d_net=d_out - d_in,
    )


def default_nu(g: Digraph) -> VertexVector:
    """Weighted-degree vertex importance: absolute degree over total weight.

    ``nu_i = d_abs_i / sum_q |w_q|``. Every edge weight is counted at both
    of its endpoints, so the entries sum to exactly 2. Vertices touching at
    least one edge get a strictly positive value; isolated vertices get 0.
    """
    if g.n_edges == 0:
        raise ValueError("default vertex importance is undefined for an empty edge set")
    stats = vertex_stats(g)
    total = float(np.sum(np.abs(g.weights)))
    return VertexVector(stats.d_abs / total, source="weighted-degree")
