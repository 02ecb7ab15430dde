"""Fast approximate covering paths: greedy connected dominating set + tree walk."""
from __future__ import annotations

import heapq

from .covering import CoveringSolution, make_solution
from .graph import Graph, GraphError


def connected_dominating_set(g: Graph) -> frozenset[int]:
    """Greedy tree-growing CDS (Guha-Khuller, first algorithm).

    Start from a maximum-degree vertex; then repeatedly blacken the gray vertex
    with the most white neighbours.  Ties go to the lowest index.  The heap is
    keyed on stale white-counts and re-validated lazily.
    """
    verts = g.vertices()
    if not verts:
        raise GraphError("graph has no active vertices")
    if len(verts) == 1:
        return frozenset(verts)
    nbrs = {v: g.neighbors(v) for v in verts}
    white = set(verts)
    gray: set[int] = set()
    black: set[int] = set()
    white_count = {v: len(nbrs[v]) for v in verts}

    def drop_white(u: int) -> None:
        white.discard(u)
        for w in nbrs[u]:
            white_count[w] -= 1

    def blacken(v: int) -> None:
        if v in white:
            drop_white(v)
        gray.discard(v)
        black.add(v)
        for u in nbrs[v]:
            if u in white:
                drop_white(u)
                gray.add(u)
                heapq.heappush(heap, (-white_count[u], u))

    root = min(verts, key=lambda v: (-len(nbrs[v]), v))
    heap: list[tuple[int, int]] = []
    blacken(root)
    while white:
        neg, v = heapq.heappop(heap)
        if v not in gray or -neg != white_count[v]:
            if v in gray:
                heapq.heappush(heap, (-white_count[v], v))
            continue
        blacken(v)
    return frozenset(black)


def is_dominating(g: Graph, S) -> bool:
    cov = set(S)
    for v in S:
        cov.update(g.neighbors(v))
    return cov == set(g.vertices())


def is_connected_set(g: Graph, S) -> bool:
    S = set(S)
    if not S:
        return False
    start = min(S)
    seen = {start}
    todo = [start]
    while todo:
        for u in g.neighbors(todo.pop()):
            if u in S and u not in seen:
                seen.add(u)
                todo.append(u)
    return seen == S


def spanning_tree(g: Graph, S, root: int) -> dict[int, list[int]]:
    """Children lists of a DFS spanning tree of ``G[S]`` rooted at ``root``."""
    children: dict[int, list[int]] = {v: [] for v in S}
    seen = {root}
    stack = [(root, iter(g.neighbors(root)))]
    while stack:
        v, it = stack[-1]
        for u in it:
            if u in S and u not in seen:
                seen.add(u)
                children[v].append(u)
                stack.append((u, iter(g.neighbors(u))))
                break
        else:
            stack.pop()
    return children


def _tree_far_end(adj: dict[int, list[int]], start: int) -> int:
    dist = {start: 0}
    order = [start]
    for v in order:
        for u in adj[v]:
            if u not in dist:
                dist[u] = dist[v] + 1
                order.append(u)
    top = max(dist.values())
    return min(v for v, d in dist.items() if d == top)


def spanning_tree_euler_path(g: Graph, S, root: int | None = None) -> tuple[int, ...]:
    """Euler tour of a spanning tree of ``G[S]``, cut at the last newly discovered vertex.

    Without an explicit ``root`` the tour starts at one end of a longest tree
    path; children are visited shallowest subtree first so the deepest branch
    is the one left unreturned.  Length is at most ``2|S| - 2``.
    """
    S = set(S)
    if not S or not is_connected_set(g, S):
        raise GraphError("vertex set is empty or does not induce a connected subgraph")
    hub = min(S, key=lambda v: (-g.degree(v), v))
    children = spanning_tree(g, S, hub)
    if root is None:
        adj: dict[int, list[int]] = {v: [] for v in S}
        for v, kids in children.items():
            for u in kids:
                adj[v].append(u)
                adj[u].append(v)
        root = _tree_far_end(adj, _tree_far_end(adj, hub))
        children = {v: [] for v in S}
        seen = {root}
        order = [root]
        for v in order:
            for u in sorted(adj[v]):
                if u not in seen:
                    seen.add(u)
                    children[v].append(u)
                    order.append(u)
    elif root != hub:
        children = spanning_tree(g, S, root)

    height: dict[int, int] = {}

    def subtree_height(v: int) -> int:
        # iterative post-order to stay clear of the recursion limit
        todo = [(v, False)]
        while todo:
            x, done = todo.pop()
            if done:
                height[x] = 1 + max((height[c] for c in children[x]), default=-1)
            else:
                todo.append((x, True))
                todo.extend((c, False) for c in children[x])
        return height[v]

    subtree_height(root)
    walk = [root]
    stack = [(root, iter(sorted(children[root], key=lambda c: (height[c], c))))]
    last_new = 0
    while stack:
        v, it = stack[-1]
        u = next(it, None)
        if u is None:
            stack.pop()
            if stack:
                walk.append(stack[-1][0])
            continue
        walk.append(u)
        last_new = len(walk) - 1
        stack.append((u, iter(sorted(children[u], key=lambda c: (height[c], c)))))
    return tuple(walk[: last_new + 1])


def leafless_tree_walk(g: Graph) -> tuple[int, ...]:
    """DFS tree walk of the whole active graph that never steps onto tree leaves.

    Covers every active vertex (leaves are adjacent to their parent).  Used to
    check the ``2n - 3`` length bound constructively.
    """
    verts = g.vertices()
    if len(verts) <= 2:
        return (verts[0],)
    root = min(verts, key=lambda v: (-g.degree(v), v))
    children: dict[int, list[int]] = {v: [] for v in verts}
    seen = {root}
    stack = [root]
    while stack:
        v = stack.pop()
        for u in reversed(g.neighbors(v)):
            if u not in seen:
                seen.add(u)
                children[v].append(u)
                stack.append(u)
    internal = {v for v in verts if children[v]}
    return spanning_tree_euler_path(g, internal, root=root)


def trim_tail(g: Graph, path) -> tuple[int, ...]:
    """Drop trailing vertices whose active neighbours are all on the walk.

    Each removal keeps the walk covering and lowers its score; the synthesizer
    needs an unvisited neighbour of the last vertex to park the target qubit.
    """
    path = list(path)
    while len(path) > 1:
        on_path = set(path)
        if any(u not in on_path for u in g.neighbors(path[-1])):
            break
        path.pop()
    return tuple(path)


def approx_cp(g: Graph) -> CoveringSolution:
    """Covering walk via greedy CDS then a spanning-tree walk of the CDS."""
    cds = connected_dominating_set(g)
    walk = spanning_tree_euler_path(g, cds)
    return make_solution(g, trim_tail(g, walk), method="approx")
