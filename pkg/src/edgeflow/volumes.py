"""Edge volumes and symmetric normalization of flow Laplacians.

An edge's volume blends the importance of its two endpoints with the share
of absolute outgoing flow it carries away from its source and the share of
absolute incoming flow it delivers to its destination. Cluster volume is the
sum over member edges, and dividing each cluster's cut cost by its volume is
what discourages badly imbalanced clusters.
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass

import numpy as np
import scipy.sparse as sp

from .graph import Digraph, as_vertex_vector, default_nu, vertex_stats
from .laplacians import Affinity, FlowLaplacian


@dataclass(frozen=True)
class EdgeVolumes:
    """Strictly positive per-edge volumes, in edge enumeration order."""

    values: np.ndarray

    def __post_init__(self):
        object.__setattr__(self, "values", np.asarray(self.values, dtype=float))
        self.values.setflags(write=False)

    @property
    def total(self) -> float:
        return float(self.values.sum())


@dataclass(frozen=True)
class NormalizedLaplacian:
    """Volume-normalized flow Laplacian ``F^{-1/2} L F^{-1/2}``.

    With ``normalized=False`` the raw Laplacian is carried through unchanged;
    the pipeline treats unnormalized mode as a flag, not a separate path.
    """

    matrix: sp.csr_array
    kind: Affinity
    normalized: bool

    @property
    def n_edges(self) -> int:
        return self.matrix.shape[0]


def edge_volumes(g: Digraph, nu) -> EdgeVolumes:
    """Volume of every edge.

    ``f_p = (|w_p| / 2) * (sigma_l * nu_l / d_out_abs_l
    + sigma_k * nu_k / d_in_abs_k)`` for edge ``p`` from ``l`` to ``k``.
    A self-edge evaluates both terms at its single vertex. Requires strictly
    positive importance at every edge endpoint so volumes stay positive.
    """
    vec = as_vertex_vector(nu, g.n_vertices)
    stats = vertex_stats(g)
    ell, k = g.src, g.dst
    if np.any(vec.values[ell] <= 0) or np.any(vec.values[k] <= 0):
        raise ValueError("edge volumes require positive vertex importance at every edge endpoint")
    d_out_abs = stats.d_out_abs[ell]
    d_in_abs = stats.d_in_abs[k]
    # The edge itself contributes to both sums, so neither can vanish.
    assert np.all(d_out_abs > 0) and np.all(d_in_abs > 0)
    f = 0.5 * np.abs(g.weights) * (
        stats.sigma[ell] * vec.values[ell] / d_out_abs
        + stats.sigma[k] * vec.values[k] / d_in_abs
    )
    return EdgeVolumes(values=f)


def normalize_laplacian(lap: FlowLaplacian, vols: EdgeVolumes, enabled: bool = True) -> NormalizedLaplacian:
    """Scale a flow Laplacian by inverse square-root edge volumes.

    When ``enabled`` is False the matrix is passed through untouched and the
    result is tagged ``normalized=False``.
    """
    if not enabled:
        return NormalizedLaplacian(matrix=lap.matrix, kind=lap.kind, normalized=False)
    f = vols.values
    if f.shape != (lap.n_edges,):
        raise ValueError(f"volumes have shape {f.shape}, expected ({lap.n_edges},)")
    if np.any(f <= 0):
        raise ValueError("normalization requires strictly positive edge volumes")
    s = sp.diags_array(1.0 / np.sqrt(f))
    return NormalizedLaplacian(
        matrix=sp.csr_array(s @ lap.matrix @ s), kind=lap.kind, normalized=True
    )


@dataclass(frozen=True)
class ProbeScenario:
    """One perturbation applied to a sibling (or the probed) edge."""

    name: str
    perturbed_edge: int
    volume_before: float
    volume_after: float
    expected: str  # "increase" | "decrease"

    @property
    def holds(self) -> bool:
        if self.expected == "increase":
            return self.volume_after > self.volume_before
        return self.volume_after < self.volume_before


@dataclass(frozen=True)
class MonotonicityReport:
    edge_index: int
    delta: float
    scenarios: list[ProbeScenario]

    @property
    def all_hold(self) -> bool:
        return all(s.holds for s in self.scenarios)


def _volume_with_bump(g: Digraph, probe: int, bumped: int, delta: float) -> float:
    """Volume of edge ``probe`` after adding ``delta`` to edge ``bumped``,
    with the weighted-degree importance recomputed from the new weights."""
    w = g.weights.copy()
    w[bumped] += delta
    if w[bumped] <= 0:
        raise ValueError("degenerate perturbation: weight driven non-positive")
    g2 = Digraph(g.n_vertices, g.src.copy(), g.dst.copy(), w, g.directed)
    return float(edge_volumes(g2, default_nu(g2)).values[probe])


def volume_monotonicity_probe(g: Digraph, edge_index: int, delta: float) -> MonotonicityReport:
    """Empirically check how one edge's volume moves under weight bumps.

    Uses the weighted-degree importance recomputed after each perturbation.
    Three directional behaviours are probed, each on the first applicable
    sibling edge found in enumeration order:

    * bump the probed edge's own weight        -> volume should increase;
    * bump another outgoing edge of its source
      (or another incoming edge of its sink)   -> volume should decrease;
    * bump an incoming edge of its source
      (or an outgoing edge of its sink)        -> volume should increase.

    Scenarios whose sibling edge does not exist are skipped.
    """
    m = g.n_edges
    if not (0 <= edge_index < m):
        raise ValueError(f"edge index {edge_index} out of range for {m} edges")
    if delta <= 0:
        raise ValueError("degenerate perturbation: delta must be positive")
    base = float(edge_volumes(g, default_nu(g)).values[edge_index])
    ell, k = int(g.src[edge_index]), int(g.dst[edge_index])
    scenarios: list[ProbeScenario] = []

    def first_edge(mask: np.ndarray) -> int | None:
        idx = np.flatnonzero(mask)
        return int(idx[0]) if idx.size else None

    scenarios.append(
        ProbeScenario(
            name="own-weight",
            perturbed_edge=edge_index,
            volume_before=base,
            volume_after=_volume_with_bump(g, edge_index, edge_index, delta),
            expected="increase",
        )
    )
    others = np.arange(m) != edge_index
    for name, mask, expected in (
        ("sibling-out-of-source", others & (g.src == ell), "decrease"),
        ("sibling-in-of-sink", others & (g.dst == k), "decrease"),
        ("incoming-at-source", others & (g.dst == ell), "increase"),
        ("outgoing-at-sink", others & (g.src == k), "increase"),
    ):
        sib = first_edge(mask)
        if sib is None:
            continue
        scenarios.append(
            ProbeScenario(
                name=name,
                perturbed_edge=sib,
                volume_before=base,
                volume_after=_volume_with_bump(g, edge_index, sib, delta),
                expected=expected,
            )
        )
    if len(scenarios) == 1:
        warnings.warn(
            "probe edge has no sibling edges; only the own-weight scenario ran",
            UserWarning,
            stacklevel=2,
        )
    return MonotonicityReport(edge_index=edge_index, delta=delta, scenarios=scenarios)
