"""Matching, TSP, and k-median heuristics with their exact baselines.

Everything operates on a finite :class:`~rspmetric.metric.Metric`.  All tie
breaking is by lowest vertex index (and earliest position for insertions) so
runs are reproducible on crafted metrics; ties are a measure-zero event under
continuous random weights.

Exact baselines are capped dynamic programs / enumerations, not
approximations: past the cap they raise instead of degrading.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass

import numpy as np

from .errors import (
    EmptyCenterSetError,
    InfiniteDistanceError,
    OddVertexCountError,
    SizeCapExceededError,
    TooFewVerticesError,
)
from .metric import Metric
from .rng import Seed, UniformStream

TSP_CAP = 18        # Held-Karp over 2^n subsets
MATCHING_CAP = 20   # pairing DP over 2^n subsets
KMEDIAN_CAP = 10**6  # number of center sets enumerated


@dataclass(frozen=True)
class Matching:
    """Perfect matching: disjoint pairs covering all vertices, plus total cost."""

    pairs: tuple[tuple[int, int], ...]
    cost: float


@dataclass(frozen=True)
class Tour:
    """Hamiltonian cycle: visiting order plus cost including the closing edge."""

    order: tuple[int, ...]
    cost: float


@dataclass(frozen=True)
class TwoOptTrace:
    """Result of a 2-opt run: final tour, applied-exchange count, cost history."""

    final: Tour
    iterations: int
    costs: tuple[float, ...]


@dataclass(frozen=True)
class MedianSolution:
    """Chosen centers and the summed distance of every vertex to its closest one."""

    centers: tuple[int, ...]
    cost: float


def _require_finite(metric: Metric) -> None:
    if not metric.is_finite():
        raise InfiniteDistanceError("metric has infinite distances (disconnected source)")


def tour_cost(metric: Metric, order: tuple[int, ...]) -> float:
    d = metric.dist
    legs = [d[order[i] - 1, order[(i + 1) % len(order)] - 1] for i in range(len(order))]
    return math.fsum(legs)


def _check_tour(metric: Metric, order: tuple[int, ...]) -> None:
    if sorted(order) != list(range(1, metric.n + 1)):
        raise ValueError("tour must be a permutation of 1..n")


def greedy_matching(metric: Metric) -> Matching:
    """Repeatedly match the closest unmatched pair (ties lexicographic)."""
    n = metric.n
    if n % 2:
        raise OddVertexCountError(f"n={n} is odd; perfect matchings need even n")
    _require_finite(metric)
    d = metric.dist
    iu, iv = np.triu_indices(n, 1)
    order = np.lexsort((iv, iu, d[iu, iv]))
    matched = np.zeros(n, dtype=bool)
    pairs = []
    for idx in order:
        a, b = int(iu[idx]), int(iv[idx])
        if not matched[a] and not matched[b]:
            matched[a] = matched[b] = True
            pairs.append((a + 1, b + 1))
            if len(pairs) == n // 2:
                break
    cost = math.fsum(d[a - 1, b - 1] for a, b in pairs)
    return Matching(pairs=tuple(pairs), cost=cost)


def exact_matching(metric: Metric, cap: int = MATCHING_CAP) -> Matching:
    """Minimum-cost perfect matching by DP over vertex subsets."""
    n = metric.n
    if n % 2:
        raise OddVertexCountError(f"n={n} is odd; perfect matchings need even n")
    if n > cap:
        raise SizeCapExceededError(f"n={n} exceeds the matching DP cap {cap}")
    _require_finite(metric)
    d = metric.dist.tolist()
    size = 1 << n
    inf = math.inf
    dp = [inf] * size
    choice = [0] * size
    dp[0] = 0.0
    for mask in range(2, size):
        if mask.bit_count() % 2:
            continue
        i = (mask & -mask).bit_length() - 1
        rest = mask ^ (1 << i)
        best = inf
        best_j = -1
        di = d[i]
        r = rest
        while r:
            jbit = r & -r
            j = jbit.bit_length() - 1
            c = dp[rest ^ jbit] + di[j]
            if c < best:
                best = c
                best_j = j
            r ^= jbit
        dp[mask] = best
        choice[mask] = best_j
    pairs = []
    mask = size - 1
    while mask:
        i = (mask & -mask).bit_length() - 1
        j = choice[mask]
        pairs.append((i + 1, j + 1))
        mask ^= (1 << i) | (1 << j)
    pairs.sort()
    cost = math.fsum(d[a - 1][b - 1] for a, b in pairs)
    return Matching(pairs=tuple(pairs), cost=cost)


def nearest_neighbor_tour(metric: Metric, start: int = 1) -> Tour:
    """Always walk to the nearest unvisited vertex, then close the cycle."""
    n = metric.n
    if not 1 <= start <= n:
        raise ValueError(f"start vertex {start} out of range")
    _require_finite(metric)
    d = metric.dist
    unvisited = np.ones(n, dtype=bool)
    order = [start]
    unvisited[start - 1] = False
    cur = start - 1
    for _ in range(n - 1):
        row = np.where(unvisited, d[cur], np.inf)
        nxt = int(np.argmin(row))  # first minimum = lowest index on ties
        order.append(nxt + 1)
        unvisited[nxt] = False
        cur = nxt
    order_t = tuple(order)
    return Tour(order=order_t, cost=tour_cost(metric, order_t))


def _initial_triple(metric: Metric, rule: str, stream: UniformStream | None) -> list[int]:
    """First three vertices (0-based), chosen by the insertion rule itself."""
    n = metric.n
    d = metric.dist
    if rule == "nearest":
        by = np.lexsort((np.arange(n), d[0]))
        return [0, int(by[1]), int(by[2])]
    if rule == "farthest":
        by = np.lexsort((np.arange(n), -d[0]))
        picks = [int(x) for x in by if x != 0][:2]
        return [0] + picks
    if rule == "cheapest":
        best = None
        for i, j, k in itertools.combinations(range(n), 3):
            per = d[i, j] + d[j, k] + d[i, k]
            if best is None or per < best[0]:
                best = (per, [i, j, k])
        return best[1]
    if rule == "random":
        remaining = list(range(n))
        picks = []
        for _ in range(3):
            picks.append(remaining.pop(stream.integer_below(len(remaining))))
        return sorted(picks)
    raise ValueError(f"unknown insertion rule {rule!r}")


def insertion_tour(metric: Metric, rule: str = "nearest", seed: Seed | None = None) -> Tour:
    """Grow a tour by inserting the rule's next vertex at the cheapest position.

    Starts from the (trivially optimal) triangle on the rule's first three
    vertices.  The random rule draws from the seed; other rules ignore it.
    """
    n = metric.n
    if n < 3:
        raise TooFewVerticesError("insertion needs at least 3 vertices")
    _require_finite(metric)
    if rule == "random" and seed is None:
        raise ValueError("random rule needs a seed")
    d = metric.dist
    stream = UniformStream(seed) if seed is not None else None
    order = _initial_triple(metric, rule, stream)
    in_tour = np.zeros(n, dtype=bool)
    in_tour[order] = True
    while len(order) < n:
        out = np.flatnonzero(~in_tour)
        if rule in ("nearest", "farthest"):
            dmin = d[np.ix_(out, order)].min(axis=1)  # distance of each outsider to the tour
            pick = int(out[np.argmin(dmin)] if rule == "nearest" else out[np.argmax(dmin)])
        elif rule == "cheapest":
            best = None
            for x in out:
                inc = min(
                    d[order[i], x] + d[x, order[(i + 1) % len(order)]]
                    - d[order[i], order[(i + 1) % len(order)]]
                    for i in range(len(order))
                )
                if best is None or inc < best[0]:
                    best = (inc, int(x))
            pick = best[1]
        else:  # random
            pick = int(out[stream.integer_below(len(out))])
        increases = [
            d[order[i], pick] + d[pick, order[(i + 1) % len(order)]]
            - d[order[i], order[(i + 1) % len(order)]]
            for i in range(len(order))
        ]
        pos = int(np.argmin(increases))  # earliest position on ties
        order.insert(pos + 1, pick)
        in_tour[pick] = True
    order_t = tuple(x + 1 for x in order)
    return Tour(order=order_t, cost=tour_cost(metric, order_t))


def _exchange_pairs(n: int) -> list[tuple[int, int]]:
    """Position pairs (i, j) whose tour edges are disjoint, in lexicographic order."""
    return [
        (i, j)
        for i in range(n - 1)
        for j in range(i + 2, n)
        if not (i == 0 and j == n - 1)
    ]


def _exchange_delta(d: list[list[float]], order: list[int], i: int, j: int, n: int) -> float:
    a, b = order[i], order[i + 1]
    c, e = order[j], order[(j + 1) % n]
    return d[a][c] + d[b][e] - d[a][b] - d[c][e]


def two_opt(
    metric: Metric,
    initial: Tour | tuple[int, ...] | None = None,
    pivot: str = "first",
) -> TwoOptTrace:
    """Apply improving 2-exchanges until a local optimum.

    ``pivot="first"`` scans position pairs lexicographically, resuming right
    after the last applied exchange; ``pivot="best"`` applies the best
    improvement each round.  An exchange counts as improving only when the
    tracked cost strictly decreases, so the recorded cost sequence is
    strictly decreasing by construction and the local-optimality check uses
    the same predicate.
    """
    _require_finite(metric)
    if pivot not in ("first", "best"):
        raise ValueError("pivot must be 'first' or 'best'")
    n = metric.n
    if initial is None:
        start_order = tuple(range(1, n + 1))
    elif isinstance(initial, Tour):
        start_order = initial.order
    else:
        start_order = tuple(initial)
    _check_tour(metric, start_order)
    d = metric.dist.tolist()
    order = [v - 1 for v in start_order]
    cost = tour_cost(metric, start_order)
    costs = [cost]
    pairs = _exchange_pairs(n)
    iterations = 0
    if pairs:
        if pivot == "first":
            pos = 0
            stale = 0
            while stale < len(pairs):
                i, j = pairs[pos % len(pairs)]
                delta = _exchange_delta(d, order, i, j, n)
                if cost + delta < cost:
                    order[i + 1 : j + 1] = reversed(order[i + 1 : j + 1])
                    cost += delta
                    costs.append(cost)
                    iterations += 1
                    stale = 0
                else:
                    stale += 1
                pos += 1
        else:
            while True:
                best = None
                for i, j in pairs:
                    delta = _exchange_delta(d, order, i, j, n)
                    if cost + delta < cost and (best is None or delta < best[0]):
                        best = (delta, i, j)
                if best is None:
                    break
                _, i, j = best
                order[i + 1 : j + 1] = reversed(order[i + 1 : j + 1])
                cost += best[0]
                costs.append(cost)
                iterations += 1
    final_order = tuple(v + 1 for v in order)
    final = Tour(order=final_order, cost=tour_cost(metric, final_order))
    return TwoOptTrace(final=final, iterations=iterations, costs=tuple(costs))


def has_improving_exchange(metric: Metric, tour: Tour) -> bool:
    """Full rescan: does any 2-exchange strictly decrease the tour cost?"""
    n = metric.n
    d = metric.dist.tolist()
    order = [v - 1 for v in tour.order]
    cost = tour.cost
    return any(
        cost + _exchange_delta(d, order, i, j, n) < cost for i, j in _exchange_pairs(n)
    )


def exact_tsp(metric: Metric, cap: int = TSP_CAP) -> Tour:
    """Optimal tour by the Held-Karp subset dynamic program."""
    n = metric.n
    if n < 3:
        raise TooFewVerticesError("a tour needs at least 3 vertices")
    if n > cap:
        raise SizeCapExceededError(f"n={n} exceeds the TSP DP cap {cap}")
    _require_finite(metric)
    d = metric.dist
    size = 1 << n
    dp = np.full((size, n), np.inf)
    parent = np.full((size, n), -1, dtype=np.int8)
    dp[1, 0] = 0.0
    all_v = np.arange(n)
    for mask in range(1, size, 2):  # tours are anchored at vertex 1 (bit 0)
        row = dp[mask]
        active = np.flatnonzero(np.isfinite(row))
        if active.size == 0:
            continue
        outside = np.flatnonzero(~((mask >> all_v) & 1).astype(bool))
        if outside.size == 0:
            continue
        cand = row[active, None] + d[np.ix_(active, outside)]
        arg = np.argmin(cand, axis=0)
        best = cand[arg, np.arange(outside.size)]
        targets = mask | (1 << outside)
        better = best < dp[targets, outside]
        dp[targets[better], outside[better]] = best[better]
        parent[targets[better], outside[better]] = active[arg[better]]
    full = size - 1
    closing = dp[full] + d[:, 0]
    closing[0] = np.inf
    last = int(np.argmin(closing))
    order0 = []
    mask = full
    cur = last
    while cur != 0:
        order0.append(cur)
        prev = int(parent[mask, cur])
        mask ^= 1 << cur
        cur = prev
    order = tuple([1] + [v + 1 for v in reversed(order0)])
    return Tour(order=order, cost=tour_cost(metric, order))


def trivial_kmedian(metric: Metric, centers: tuple[int, ...] | frozenset[int]) -> MedianSolution:
    """Cost of serving every vertex from its closest center in the given set."""
    centers_t = tuple(sorted(set(centers)))
    if not centers_t:
        raise EmptyCenterSetError("center set is empty")
    n = metric.n
    if centers_t[0] < 1 or centers_t[-1] > n:
        raise ValueError("center out of vertex range")
    _require_finite(metric)
    cols = [c - 1 for c in centers_t]
    mins = metric.dist[:, cols].min(axis=1)
    return MedianSolution(centers=centers_t, cost=math.fsum(mins.tolist()))


def first_k_centers(k: int) -> tuple[int, ...]:
    """The canonical metric-independent center choice: vertices 1..k."""
    return tuple(range(1, k + 1))


def exact_kmedian(metric: Metric, k: int, cap: int = KMEDIAN_CAP) -> MedianSolution:
    """Optimal k-median by enumerating all size-k center sets."""
    n = metric.n
    if not 1 <= k <= n:
        raise ValueError(f"k={k} out of range 1..{n}")
    if math.comb(n, k) > cap:
        raise SizeCapExceededError(f"C({n},{k}) exceeds the enumeration cap {cap}")
    _require_finite(metric)
    d = metric.dist
    best_cost = math.inf
    best_combo: tuple[int, ...] | None = None
    batch = 8192
    combos = itertools.combinations(range(n), k)
    while True:
        block = list(itertools.islice(combos, batch))
        if not block:
            break
        idx = np.array(block, dtype=np.int64)  # (b, k)
        costs = d[:, idx].min(axis=2).sum(axis=0)  # (b,)
        j = int(np.argmin(costs))
        if costs[j] < best_cost:
            best_cost = float(costs[j])
            best_combo = block[j]
    assert best_combo is not None
    centers = tuple(c + 1 for c in best_combo)
    cols = [c - 1 for c in centers]
    cost = math.fsum(d[:, cols].min(axis=1).tolist())
    return MedianSolution(centers=centers, cost=cost)
