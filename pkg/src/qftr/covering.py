"""Exact (3,2,1)-covering path solver.

A walk ``P`` covers every vertex it visits plus every neighbour of a visited
vertex.  Among walks covering all active vertices we minimise
``3 * len(P) + 2 * |B(P)|`` where ``B(P)`` is the set of covered but unvisited
vertices.  The exact solver is a subset DP over (visited set, end vertex) in
the style of Held-Karp on the hop-distance closure of the graph.
"""
from __future__ import annotations

import os
from collections import deque
from dataclasses import dataclass

import numpy as np

from .graph import INF, DistanceMatrix, Graph, GraphError, get_shortest_path, shortest_paths

DEFAULT_MAX_EXACT = 24
BRUTE_FORCE_MAX = 8

_UNREACHED = np.uint8(255)


class SolverCapError(RuntimeError):
    """The graph has too many active vertices for the requested solver."""


def max_exact_vertices() -> int:
    """Active-vertex cap of the exact solver; ``QFTR_MAX_EXACT`` overrides the default."""
    raw = os.environ.get("QFTR_MAX_EXACT")
    if raw is None:
        return DEFAULT_MAX_EXACT
    try:
        return int(raw)
    except ValueError:
        raise SolverCapError(f"QFTR_MAX_EXACT must be an integer, got {raw!r}") from None


@dataclass(frozen=True)
class CoveringSolution:
    path: tuple[int, ...]
    visited: frozenset[int]
    boundary: frozenset[int]
    objective: int
    method: str = "exact"

    @property
    def length(self) -> int:
        return len(self.path) - 1


def path_length(path) -> int:
    return max(len(path) - 1, 0)


def covered_by(g: Graph, path) -> set[int]:
    """``R(P)``: visited vertices plus their active neighbours."""
    cov = set(path)
    for v in path:
        cov.update(g.neighbors(v))
    return cov


def make_solution(g: Graph, path, method: str = "exact") -> CoveringSolution:
    """Validate ``path`` as a covering walk of the active graph and score it."""
    path = tuple(path)
    if not path:
        raise GraphError("a covering path needs at least one vertex")
    for a, b in zip(path, path[1:]):
        if g.excluded[a] or g.excluded[b] or not g.has_edge(a, b):
            raise GraphError(f"({a}, {b}) is not an active edge")
    if g.excluded[path[0]]:
        raise GraphError(f"vertex {path[0]} is excluded")
    active = set(g.vertices())
    cov = covered_by(g, path)
    if cov != active:
        raise GraphError(f"path does not cover {sorted(active - cov)}")
    visited = frozenset(path)
    boundary = frozenset(cov - visited)
    return CoveringSolution(path, visited, boundary, 3 * path_length(path) + 2 * len(boundary), method)


class SubsetTable:
    """``D[S, i]``: shortest walk visiting all of ``S`` and ending at ``verts[i]``.

    Subsets are bitmasks over the compact indices of the active vertices
    (bit ``i`` stands for ``verts[i]``).  Unreachable entries hold 255.
    """

    def __init__(self, verts: list[int], W: np.ndarray, D: np.ndarray):
        self.verts = verts
        self.index = {v: i for i, v in enumerate(verts)}
        self.W = W
        self.D = D

    @property
    def size(self) -> int:
        return len(self.verts)

    def mask_of(self, vertices) -> int:
        mask = 0
        for v in vertices:
            mask |= 1 << self.index[v]
        return mask

    def vertices_of(self, mask: int) -> list[int]:
        return [v for i, v in enumerate(self.verts) if mask >> i & 1]

    def value(self, S, v: int) -> float:
        """``D(S, v)`` with ``S`` an iterable of vertices; ``inf`` when undefined."""
        mask = self.mask_of(S)
        d = self.D[mask, self.index[v]]
        return float("inf") if d == _UNREACHED else int(d)

    def predecessor(self, mask: int, i: int) -> int | None:
        """Compact index of the vertex preceding ``i`` in the walk for ``(mask, i)``.

        Recomputed from the recurrence on demand (smallest index among the
        minimisers) rather than stored, which halves the table's memory.
        """
        rest = mask & ~(1 << i)
        if rest == 0:
            return None
        target = int(self.D[mask, i])
        if target == _UNREACHED:
            return None
        for u in range(self.size):
            if rest >> u & 1 and self.D[rest, u] != _UNREACHED:
                if int(self.D[rest, u]) + int(self.W[u, i]) == target:
                    return u
        raise AssertionError("subset table is inconsistent")


def _popcounts(size: int) -> np.ndarray:
    pc = np.zeros(1 << size, dtype=np.int8)
    for b in range(size):
        pc[1 << b : 1 << (b + 1)] = pc[: 1 << b] + 1
    return pc


def _check_cap(size: int, cap: int | None) -> None:
    limit = max_exact_vertices() if cap is None else cap
    if size > limit:
        raise SolverCapError(
            f"{size} active vertices exceed the exact solver cap of {limit}; use the approximate solver"
        )


def compute_d(g: Graph, dm: DistanceMatrix | None = None, cap: int | None = None) -> SubsetTable:
    """Fill ``D`` for every (subset, end vertex) pair, sweeping subsets by popcount."""
    verts = g.vertices()
    size = len(verts)
    _check_cap(size, cap)
    if dm is None:
        dm = shortest_paths(g)
    idx = np.array(verts)
    W = dm.W[np.ix_(idx, idx)]
    if (W == INF).any():
        raise GraphError("active subgraph is disconnected")
    W = W.astype(np.int16)

    D = np.full((1 << size, size), _UNREACHED, dtype=np.uint8)
    for i in range(size):
        D[1 << i, i] = 0
    pc = _popcounts(size)
    masks = np.arange(1 << size, dtype=np.int64)
    for k in range(2, size + 1):
        layer = masks[pc == k]
        for v in range(size):
            with_v = layer[(layer >> v) & 1 == 1]
            prev = with_v ^ (1 << v)
            cand = D[prev].astype(np.int16) + W[:, v]
            D[with_v, v] = np.minimum(cand.min(axis=1), 255).astype(np.uint8)
    return SubsetTable(verts, W, D)


def compute_c(g: Graph, cap: int | None = None) -> np.ndarray:
    """Boolean array over compact subset masks: does ``S`` plus its neighbourhood cover everything?"""
    verts = g.vertices()
    size = len(verts)
    _check_cap(size, cap)
    index = {v: i for i, v in enumerate(verts)}
    closed = []
    for v in verts:
        mask = 1 << index[v]
        for u in g.neighbors(v):
            mask |= 1 << index[u]
        closed.append(mask)
    cover = np.zeros(1 << size, dtype=np.int64)
    for b in range(size):
        cover[1 << b : 1 << (b + 1)] = cover[: 1 << b] | closed[b]
    return cover == (1 << size) - 1


def get_ns_path(table: SubsetTable, dm: DistanceMatrix, mask: int, i: int) -> tuple[int, ...]:
    """Rebuild the walk for ``(mask, i)`` by splicing shortest-path segments."""
    if table.D[mask, i] == _UNREACHED:
        raise GraphError("no walk exists for this subset and end vertex")
    verts = table.verts
    segments: list[tuple[int, ...]] = []
    while True:
        u = table.predecessor(mask, i)
        if u is None:
            break
        segments.append(get_shortest_path(dm, verts[u], verts[i]))
        mask &= ~(1 << i)
        i = u
    path = [verts[i]]
    for seg in reversed(segments):
        path.extend(seg)
    return tuple(path)


def three_two_one_cp(g: Graph, cap: int | None = None) -> CoveringSolution:
    """Optimal covering walk of the active graph.

    Ties on the objective go to the larger visited set, then the smallest
    subset mask, then the smallest end vertex.
    """
    verts = g.vertices()
    size = len(verts)
    if size == 0:
        raise GraphError("graph has no active vertices")
    _check_cap(size, cap)
    if size == 1:
        return make_solution(g, (verts[0],))
    dm = shortest_paths(g)
    table = compute_d(g, dm, cap)
    covers = compute_c(g, cap)
    pc = _popcounts(size).astype(np.int32)

    big = np.iinfo(np.int32).max
    best = None  # (objective, -popcount, mask, end index)
    for v in range(size):
        col = table.D[:, v]
        ok = covers & (col != _UNREACHED)
        obj = np.where(ok, 3 * col.astype(np.int32) + 2 * (size - pc), big)
        lo = int(obj.min())
        if lo == big:
            continue
        cands = np.flatnonzero(obj == lo)
        top = int(pc[cands].max())
        mask = int(cands[pc[cands] == top][0])
        key = (lo, -top, mask, v)
        if best is None or key < best:
            best = key
    assert best is not None
    lo, _, mask, v = best
    sol = make_solution(g, get_ns_path(table, dm, mask, v))
    if sol.objective != lo:
        raise AssertionError(f"reconstructed walk scores {sol.objective}, table says {lo}")
    return sol


def brute_force_cp(g: Graph, max_vertices: int = BRUTE_FORCE_MAX) -> CoveringSolution:
    """Exhaustive search over walks of length at most ``2n - 3``.

    Walks are explored breadth-first as (end vertex, visited set) states; two
    walks reaching the same state are interchangeable for scoring, so only the
    shortest is kept.  Independent of the subset DP and meant as a test oracle.
    """
    verts = g.vertices()
    size = len(verts)
    if size > max_vertices:
        raise SolverCapError(f"brute force is limited to {max_vertices} vertices, got {size}")
    if size == 0:
        raise GraphError("graph has no active vertices")
    active = frozenset(verts)
    max_len = 0 if size == 1 else 2 * size - 3

    parent: dict[tuple[int, frozenset], tuple[int, frozenset] | None] = {}
    depth: dict[tuple[int, frozenset], int] = {}
    queue = deque()
    for v in verts:
        state = (v, frozenset([v]))
        parent[state] = None
        depth[state] = 0
        queue.append(state)
    while queue:
        state = queue.popleft()
        d = depth[state]
        if d == max_len:
            continue
        v, seen = state
        for u in g.neighbors(v):
            nxt = (u, seen | {u})
            if nxt not in depth:
                depth[nxt] = d + 1
                parent[nxt] = state
                queue.append(nxt)

    best = None
    for state, d in depth.items():
        v, seen = state
        cov = set(seen)
        for x in seen:
            cov.update(g.neighbors(x))
        if cov != active:
            continue
        key = (3 * d + 2 * (size - len(seen)), -len(seen), sorted(seen), v)
        if best is None or key < best[0]:
            best = (key, state)
    assert best is not None
    walk = []
    state = best[1]
    while state is not None:
        walk.append(state[0])
        state = parent[state]
    return make_solution(g, reversed(walk), method="brute-force")
