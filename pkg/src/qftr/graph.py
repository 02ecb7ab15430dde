"""Qubit connectivity graphs and unweighted all-pairs shortest paths.

Vertices are numbered ``1..n`` everywhere in the public API.  A graph carries
an exclusion mask so the synthesizer can drop vertices between cascades and
restore them afterwards without rebuilding adjacency.
"""
from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from importlib import resources

import numpy as np

INF = np.iinfo(np.int32).max


class GraphError(ValueError):
    """Raised for malformed or unusable connectivity graphs."""


class Graph:
    """Undirected, unweighted graph on vertices ``1..n`` with an exclusion mask."""

    def __init__(self, n: int, edges):
        if n < 1:
            raise GraphError(f"graph needs at least one vertex, got n={n}")
        self.n = n
        self._adj: list[set[int]] = [set() for _ in range(n + 1)]
        seen = set()
        for u, v in edges:
            if not (1 <= u <= n and 1 <= v <= n):
                raise GraphError(f"edge ({u}, {v}) has a vertex outside 1..{n}")
            if u == v:
                raise GraphError(f"self-loop at vertex {u}")
            key = (min(u, v), max(u, v))
            if key in seen:
                raise GraphError(f"duplicate edge {key}")
            seen.add(key)
            self._adj[u].add(v)
            self._adj[v].add(u)
        self._edges = tuple(sorted(seen))
        self._sorted = [tuple(sorted(a)) for a in self._adj]
        self.excluded = [False] * (n + 1)

    def __repr__(self) -> str:
        return f"Graph(n={self.n}, m={self.m}, excluded={self.excluded_vertices()})"

    @property
    def m(self) -> int:
        return len(self._edges)

    @property
    def edges(self) -> tuple[tuple[int, int], ...]:
        return self._edges

    def has_edge(self, u: int, v: int) -> bool:
        return v in self._adj[u]

    def vertices(self) -> list[int]:
        """Non-excluded vertices in ascending order."""
        return [v for v in range(1, self.n + 1) if not self.excluded[v]]

    def excluded_vertices(self) -> list[int]:
        return [v for v in range(1, self.n + 1) if self.excluded[v]]

    def neighbors(self, v: int) -> tuple[int, ...]:
        """Non-excluded neighbours of ``v`` in ascending index order."""
        ex = self.excluded
        return tuple(u for u in self._sorted[v] if not ex[u])

    def degree(self, v: int) -> int:
        return len(self.neighbors(v))

    def exclude(self, v: int) -> None:
        if self.excluded[v]:
            raise GraphError(f"vertex {v} is already excluded")
        self.excluded[v] = True

    def restore_all(self) -> None:
        self.excluded = [False] * (self.n + 1)

    def is_connected(self) -> bool:
        """Connectivity of the subgraph induced on non-excluded vertices."""
        active = self.vertices()
        if not active:
            return True
        seen = {active[0]}
        todo = [active[0]]
        while todo:
            for u in self.neighbors(todo.pop()):
                if u not in seen:
                    seen.add(u)
                    todo.append(u)
        return len(seen) == len(active)

    def copy(self) -> Graph:
        g = Graph(self.n, self._edges)
        g.excluded = list(self.excluded)
        return g

    def to_edge_list(self) -> str:
        lines = [f"{self.n} {self.m}"] + [f"{u} {v}" for u, v in self._edges]
        return "\n".join(lines) + "\n"


@dataclass(frozen=True)
class DistanceMatrix:
    """Hop counts ``W`` and predecessors ``A``, both indexed ``[v, u]`` with 1-based vertices.

    Row/column 0 is unused padding.  ``A[v, u]`` is the vertex just before ``u``
    on a shortest ``v -> u`` path, or 0 when there is none.
    """

    W: np.ndarray
    A: np.ndarray

    def dist(self, v: int, u: int) -> int:
        return int(self.W[v, u])


def parse_edge_list(text: str) -> Graph:
    """Parse the ``"n m"`` header plus ``m`` lines of ``"u v"``.

    Blank lines and ``#`` comments are ignored.  The result must be connected.
    """
    rows = []
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        parts = line.split()
        try:
            nums = [int(p) for p in parts]
        except ValueError:
            raise GraphError(f"line {lineno}: expected integers, got {raw!r}") from None
        if len(nums) != 2:
            raise GraphError(f"line {lineno}: expected two integers, got {raw!r}")
        rows.append(nums)
    if not rows:
        raise GraphError("empty graph description")
    (n, m), body = rows[0], rows[1:]
    if len(body) != m:
        raise GraphError(f"header announces {m} edges but {len(body)} were given")
    g = Graph(n, [tuple(r) for r in body])
    if not g.is_connected():
        raise GraphError("graph is disconnected")
    return g


def lnn(n: int) -> Graph:
    """Linear nearest-neighbour chain ``v1 - v2 - ... - vn``."""
    return Graph(n, [(i, i + 1) for i in range(1, n)])


NAMED_TOPOLOGIES = ("sun16", "suns27")


def load_graph(source: str) -> Graph:
    """Resolve ``lnn:<n>``, a bundled topology name, or a path to an edge-list file."""
    if source.startswith("lnn:"):
        try:
            n = int(source[4:])
        except ValueError:
            raise GraphError(f"bad chain length in {source!r}") from None
        return lnn(n)
    if source in NAMED_TOPOLOGIES:
        text = resources.files("qftr.data").joinpath(f"{source}.txt").read_text()
        return parse_edge_list(text)
    try:
        with open(source) as fh:
            text = fh.read()
    except OSError as exc:
        raise GraphError(f"cannot read graph file {source!r}: {exc.strerror}") from None
    return parse_edge_list(text)


def single_source(g: Graph, v: int, W: np.ndarray, A: np.ndarray) -> None:
    """BFS from ``v`` filling row ``v`` of ``W`` and ``A`` in place."""
    W[v, :] = INF
    A[v, :] = 0
    W[v, v] = 0
    queue = deque([v])
    while queue:
        t = queue.popleft()
        for r in g.neighbors(t):
            if W[v, r] == INF:
                A[v, r] = t
                W[v, r] = W[v, t] + 1
                queue.append(r)


def shortest_paths(g: Graph) -> DistanceMatrix:
    """All-pairs hop distances over the non-excluded vertices (one BFS per source)."""
    W = np.full((g.n + 1, g.n + 1), INF, dtype=np.int32)
    A = np.zeros((g.n + 1, g.n + 1), dtype=np.int32)
    for v in g.vertices():
        single_source(g, v, W, A)
    return DistanceMatrix(W, A)


def get_shortest_path(dm: DistanceMatrix, v: int, u: int) -> tuple[int, ...]:
    """Shortest ``v -> u`` path without its first vertex ``v``."""
    if v == u:
        return ()
    if dm.W[v, u] == INF:
        raise GraphError(f"vertex {u} is unreachable from {v}")
    path = [u]
    t = int(dm.A[v, u])
    while t != v:
        path.append(t)
        t = int(dm.A[v, t])
    path.reverse()
    return tuple(path)
