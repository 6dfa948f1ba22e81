"""Synthetic digraph generators used by demos and tests."""

from __future__ import annotations

import numpy as np

from .graph import Digraph, build_digraph


def seven_vertex_demo() -> Digraph:
    """The 7-vertex/9-edge demo digraph.

    One hub (vertex 3) fans out to the rest of the graph; its signed dual
    graph has 9 vertices and 16 edges, which makes it a compact worked
    example for every stage of the pipeline.
    """
    edges = [
        (0, 1),
        (0, 2),
        (3, 0),
        (3, 1),
        (3, 2),
        (3, 4),
        (4, 5),
        (4, 6),
        (6, 5),
    ]
    return build_digraph(edges, n_vertices=7)


def two_triangles() -> Digraph:
    """Two vertex-disjoint directed 3-cycles (6 edges, 2 weak components)."""
    edges = [(0, 1), (1, 2), (2, 0), (3, 4), (4, 5), (5, 3)]
    return build_digraph(edges, n_vertices=6)


def inout_star(n_in: int = 2, n_out: int = 2) -> Digraph:
    """``n_in`` sources feeding one center that feeds ``n_out`` sinks.

    Vertices: sources ``0..n_in-1``, center ``n_in``, sinks after that.
    Edges list all in-edges first, then all out-edges.
    """
    if n_in < 1 or n_out < 1:
        raise ValueError("need at least one in-edge and one out-edge")
    center = n_in
    edges = [(i, center) for i in range(n_in)]
    edges += [(center, n_in + 1 + j) for j in range(n_out)]
    return build_digraph(edges, n_vertices=n_in + n_out + 1)


def directed_path(n_vertices: int) -> Digraph:
    """A directed path 0 -> 1 -> ... -> n-1 with unit weights."""
    if n_vertices < 2:
        raise ValueError("a path needs at least 2 vertices")
    edges = [(i, i + 1) for i in range(n_vertices - 1)]
    return build_digraph(edges, n_vertices=n_vertices)


def ring(n_edges: int) -> Digraph:
    """A directed cycle with ``n_edges`` edges (and as many vertices)."""
    if n_edges < 2:
        raise ValueError("a ring needs at least 2 edges")
    edges = [(i, (i + 1) % n_edges) for i in range(n_edges)]
    return build_digraph(edges, n_vertices=n_edges)


def cockroach(columns: int = 4) -> Digraph:
    """Ladder-with-antennae digraph: two directed rows of ``columns``
    vertices, rungs on the right half, antennae trailing off the left."""
    if columns < 2:
        raise ValueError("need at least 2 columns")
    top = list(range(columns))
    bottom = list(range(columns, 2 * columns))
    edges = []
    for row in (top, bottom):
        edges += [(row[i], row[i + 1]) for i in range(columns - 1)]
    for i in range(columns // 2, columns):
        edges.append((top[i], bottom[i]))
    return build_digraph(edges, n_vertices=2 * columns)


def bottleneck(side: int = 4) -> Digraph:
    """Two directed cycles of ``side`` vertices joined by one bridge edge."""
    if side < 3:
        raise ValueError("need at least 3 vertices per side")
    left = [(i, (i + 1) % side) for i in range(side)]
    right = [(side + i, side + (i + 1) % side) for i in range(side)]
    bridge = [(0, side)]
    return build_digraph(left + right + bridge, n_vertices=2 * side)


def disjoint_union(*graphs: Digraph) -> Digraph:
    """Concatenate digraphs on disjoint vertex ranges, preserving each
    graph's edge order."""
    edges = []
    offset = 0
    for g in graphs:
        for i, j, w in g.edge_list():
            edges.append((i + offset, j + offset, w))
        offset += g.n_vertices
    return build_digraph(edges, n_vertices=offset)


def random_digraph(
    n_vertices: int,
    n_edges: int,
    rng: np.random.Generator | int | None = None,
    weight_range: tuple[float, float] = (0.5, 10.0),
    binary: bool = False,
    allow_self: bool = False,
    allow_multi: bool = False,
    connected: bool = False,
) -> Digraph:
    """Uniform random digraph with the requested edge count.

    ``binary=True`` forces unit weights; otherwise weights are uniform over
    ``weight_range``. ``connected=True`` first threads a random spanning
    arborescence-like chain so the result is weakly connected.
    """
    rng = np.random.default_rng(rng)
    if n_vertices < 1:
        raise ValueError("need at least one vertex")
    if not allow_multi:
        cap = n_vertices * n_vertices if allow_self else n_vertices * (n_vertices - 1)
        if n_edges > cap:
            raise ValueError(f"cannot place {n_edges} distinct edges on {n_vertices} vertices")
    pairs: list[tuple[int, int]] = []
    seen: set[tuple[int, int]] = set()
    if connected:
        order = rng.permutation(n_vertices)
        for a, b in zip(order[:-1], order[1:]):
            pair = (int(a), int(b)) if rng.random() < 0.5 else (int(b), int(a))
            pairs.append(pair)
            seen.add(pair)
        if len(pairs) > n_edges:
            raise ValueError("n_edges too small to connect all vertices")
    while len(pairs) < n_edges:
        i = int(rng.integers(n_vertices))
        j = int(rng.integers(n_vertices))
        if i == j and not allow_self:
            continue
        if not allow_multi and (i, j) in seen:
            continue
        pairs.append((i, j))
        seen.add((i, j))
    if binary:
        weights = np.ones(n_edges)
    else:
        weights = rng.uniform(*weight_range, size=n_edges)
    edges = [(i, j, w) for (i, j), w in zip(pairs, weights)]
    return build_digraph(edges, n_vertices=n_vertices)


_GENERATORS = {
    "lai7": seven_vertex_demo,
    "seven-vertex-demo": seven_vertex_demo,
    "two-triangles": two_triangles,
    "inout-star": inout_star,
    "path": directed_path,
    "ring": ring,
    "cockroach": cockroach,
    "bottleneck": bottleneck,
    "random": random_digraph,
}


def generate_synthetic(name: str, params: dict | None = None) -> Digraph:
    """Build a named synthetic digraph; ``params`` are generator kwargs."""
    key = name.strip().lower().replace("_", "-")
    if key not in _GENERATORS:
        known = ", ".join(sorted(_GENERATORS))
        raise ValueError(f"unknown synthetic digraph {name!r}; known: {known}")
    return _GENERATORS[key](**(params or {}))
