"""Shortest-path metrics and the structural objects built on them.

A metric is the full table of shortest-path distances under drawn edge
weights; vertices in different components sit at infinite distance.  On top
of it live the growth profile around a vertex (distance to the k-th closest
vertex and the cut size of each prefix ball), radius balls, the diameter,
and the bounded-diameter clustering used by the structural analysis.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from scipy.sparse import csr_matrix
from scipy.sparse.csgraph import dijkstra

from .errors import DisconnectedGraphError
from .graphs import Graph, WeightedGraph


class Metric:
    """Symmetric n x n distance table with an infinity sentinel.

    Immutable once built; share freely across threads.
    """

    def __init__(self, dist: np.ndarray):
        dist = np.asarray(dist, dtype=np.float64)
        if dist.ndim != 2 or dist.shape[0] != dist.shape[1]:
            raise ValueError("distance table must be square")
        if np.isnan(dist).any() or (dist < 0).any():
            raise ValueError("distances must be nonnegative (inf allowed)")
        if (np.diagonal(dist) != 0).any():
            raise ValueError("diagonal must be zero")
        if not np.array_equal(dist, dist.T):
            raise ValueError("distance table must be symmetric")
        self._dist = dist.copy()
        self._dist.setflags(write=False)

    @property
    def n(self) -> int:
        return self._dist.shape[0]

    @property
    def dist(self) -> np.ndarray:
        """The raw table, 0-based: dist[u-1, v-1] = d(u, v)."""
        return self._dist

    def d(self, u: int, v: int) -> float:
        return float(self._dist[u - 1, v - 1])

    def is_finite(self) -> bool:
        return bool(np.isfinite(self._dist).all())

    @classmethod
    def from_matrix(cls, dist) -> "Metric":
        return cls(np.asarray(dist, dtype=np.float64))

    def __getstate__(self):
        return {"dist": np.asarray(self._dist)}

    def __setstate__(self, state):
        self._dist = np.asarray(state["dist"])
        self._dist.setflags(write=False)


@dataclass(frozen=True)
class TauProfile:
    """Growth profile around a center vertex.

    ``taus[i]`` is the distance to the (i+1)-th closest vertex (so
    ``taus[0] == 0``); ``order`` is the deterministic closest-first vertex
    ordering (ties broken by vertex index); ``chis[i]`` is the cut size, in
    the source graph, of the first i+1 vertices of that ordering.  When no
    two vertices are equidistant from the center this prefix cut equals the
    cut of the closed ball of radius ``taus[i]``.
    """

    center: int
    taus: np.ndarray
    chis: np.ndarray
    order: np.ndarray

    def tau(self, k: int) -> float:
        return float(self.taus[k - 1])

    def chi(self, k: int) -> int:
        return int(self.chis[k - 1])


@dataclass(frozen=True)
class Partition:
    """Disjoint vertex clusters with per-cluster diameters.

    Extra diagnostics: the density threshold ``s_delta`` in force, the set of
    sparse vertices (ball smaller than the threshold), and the independent
    ball centers the dense clusters grew from.
    """

    clusters: tuple[frozenset[int], ...]
    delta: float
    diameters: tuple[float, ...]
    s_delta: float
    sparse: frozenset[int]
    mis: tuple[int, ...]


def build_metric(wg: WeightedGraph) -> Metric:
    """All-pairs shortest-path distances under the drawn weights."""
    n = wg.graph.n
    if wg.graph.m == 0:
        dist = np.full((n, n), np.inf)
        np.fill_diagonal(dist, 0.0)
        return Metric(dist)
    rows = np.fromiter((u - 1 for u, _ in wg.graph.edges), dtype=np.int64, count=wg.graph.m)
    cols = np.fromiter((v - 1 for _, v in wg.graph.edges), dtype=np.int64, count=wg.graph.m)
    mat = csr_matrix((np.asarray(wg.weights), (rows, cols)), shape=(n, n))
    dist = dijkstra(mat, directed=False)
    # dijkstra from u and from v may round the same path differently; take the
    # smaller of the two so the table is exactly symmetric
    dist = np.minimum(dist, dist.T)
    return Metric(dist)


def count_axiom_violations(metric: Metric, tol: float = 1e-12) -> int:
    """Number of (symmetry, diagonal, triangle) violations beyond tol.

    Infinity absorbs: an infinite right-hand side never counts against the
    triangle inequality.
    """
    d = metric.dist
    n = metric.n
    violations = int((np.diagonal(d) != 0).sum())
    violations += int((d != d.T).sum())
    for k in range(n):
        rhs = d[:, k, None] + d[None, k, :]
        with np.errstate(invalid="ignore"):
            bad = d > rhs + tol
        bad &= ~np.isinf(rhs)
        violations += int(bad.sum())
    return violations


def tau_profile(metric: Metric, graph: Graph, v: int) -> TauProfile:
    """Closest-first growth profile of vertex v (distances and prefix cut sizes)."""
    n = metric.n
    if graph.n != n:
        raise ValueError("graph and metric disagree on vertex count")
    if not 1 <= v <= n:
        raise ValueError(f"vertex {v} out of range")
    row = metric.dist[v - 1]
    order0 = np.lexsort((np.arange(n), row))
    taus = row[order0].copy()
    adj = graph.adjacency()
    inside = np.zeros(n, dtype=bool)
    chis = np.zeros(max(n - 1, 0), dtype=np.int64)
    cut = 0
    for k0, x in enumerate(order0):
        newly_cut = len(adj[x]) - 2 * sum(1 for y in adj[x] if inside[y])
        cut += newly_cut
        inside[x] = True
        if k0 < n - 1:
            chis[k0] = cut
    return TauProfile(center=v, taus=taus, chis=chis, order=order0 + 1)


def ball(metric: Metric, v: int, delta: float) -> frozenset[int]:
    """Vertices within distance delta of v (always contains v)."""
    if delta < 0:
        raise ValueError("delta must be nonnegative")
    row = metric.dist[v - 1]
    return frozenset(int(i) + 1 for i in np.flatnonzero(row <= delta))


def diameter(metric: Metric) -> float:
    """Largest pairwise distance; infinite iff the source graph was disconnected."""
    return float(metric.dist.max())


def density_threshold(delta: float, n: int, alpha: float) -> float:
    """min{exp(alpha*delta*n/5), (n+1)/2}: balls at least this large are dense."""
    rate = alpha * delta * n / 5.0
    cap = (n + 1) / 2.0
    return cap if rate >= math.log(cap) else math.exp(rate)


def cluster_partition(metric: Metric, delta: float, alpha: float) -> Partition:
    """Partition into clusters of diameter at most 4*delta.

    Vertices whose delta-ball is smaller than the density threshold become
    singletons.  The dense vertices are clustered around a maximal
    independent set of the ball-intersection graph, greedily by ascending
    vertex index; every other dense vertex joins the lowest-index center
    whose ball meets its own.
    """
    if delta < 0:
        raise ValueError("delta must be nonnegative")
    if not 0 < alpha <= 1:
        raise ValueError("alpha must lie in (0, 1]")
    if not metric.is_finite():
        raise DisconnectedGraphError("clustering needs a connected (finite) metric")
    n = metric.n
    d = metric.dist
    s_delta = density_threshold(delta, n, alpha)
    in_ball = d <= delta
    sizes = in_ball.sum(axis=1)
    dense0 = np.flatnonzero(sizes >= s_delta)
    sparse0 = np.flatnonzero(sizes < s_delta)

    clusters: list[list[int]] = [[int(s)] for s in sparse0]
    mis: list[int] = []
    if len(dense0):
        balls = in_ball[dense0]
        meets = (balls.astype(np.uint8) @ balls.astype(np.uint8).T) > 0
        chosen: list[int] = []
        blocked = np.zeros(len(dense0), dtype=bool)
        for i in range(len(dense0)):
            if not blocked[i]:
                chosen.append(i)
                blocked |= meets[i]
        mis = [int(dense0[i]) for i in chosen]
        members: dict[int, list[int]] = {i: [int(dense0[i])] for i in chosen}
        chosen_set = set(chosen)
        for i in range(len(dense0)):
            if i in chosen_set:
                continue
            for c in chosen:  # ascending vertex index
                if meets[c, i]:
                    members[c].append(int(dense0[i]))
                    break
        clusters.extend(members[c] for c in chosen)

    clusters.sort(key=min)
    frozen = tuple(frozenset(x + 1 for x in cl) for cl in clusters)
    diameters = tuple(
        float(d[np.ix_(cl, cl)].max()) if len(cl) > 1 else 0.0 for cl in clusters
    )
    return Partition(
        clusters=frozen,
        delta=float(delta),
        diameters=diameters,
        s_delta=float(s_delta),
        sparse=frozenset(int(x) + 1 for x in sparse0),
        mis=tuple(x + 1 for x in mis),
    )


def write_metric(path: str, metric: Metric) -> None:
    """Write n, then n rows of n distances (17 sig digits, `inf` sentinel)."""
    rows = [str(metric.n)]
    for i in range(metric.n):
        rows.append(" ".join("inf" if math.isinf(x) else f"{x:.17g}" for x in metric.dist[i]))
    with open(path, "w", encoding="ascii") as fh:
        fh.write("\n".join(rows) + "\n")


def read_metric(path: str) -> Metric:
    with open(path, "r", encoding="ascii") as fh:
        lines = [ln for ln in fh.read().split("\n") if ln.strip()]
    n = int(lines[0])
    if len(lines) != n + 1:
        raise ValueError(f"expected {n} distance rows, found {len(lines) - 1}")
    dist = np.array([[float(x) for x in ln.split()] for ln in lines[1:]], dtype=np.float64)
    return Metric(dist)
