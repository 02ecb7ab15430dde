"""QFT synthesis on a connectivity graph driven by per-cascade covering paths.

Cascade ``r`` applies ``H`` to logical qubit ``r`` and a controlled phase from
every remaining higher qubit.  The target walks a covering path by SWAPs,
touching each still-active qubit once, and is finally parked on an unvisited
neighbour of the path end, which then drops out of the graph.
"""
from __future__ import annotations

import logging
from dataclasses import dataclass, field

from .approx import approx_cp
from .circuit import CRd, Circuit, CostReport, H, SWAP, lower, predicted_cost
from .covering import CoveringSolution, max_exact_vertices, three_two_one_cp
from .graph import Graph, GraphError

log = logging.getLogger(__name__)

METHODS = ("exact", "approx", "auto")


def solve_covering_path(g: Graph, method: str = "auto", cap: int | None = None) -> CoveringSolution:
    """Dispatch to the exact or approximate solver; ``auto`` picks exact below the cap."""
    if method not in METHODS:
        raise ValueError(f"unknown method {method!r}; expected one of {METHODS}")
    if method == "auto":
        limit = max_exact_vertices() if cap is None else cap
        method = "exact" if len(g.vertices()) <= limit else "approx"
    if method == "exact":
        return three_two_one_cp(g, cap=cap)
    return approx_cp(g)


def exit_vertex(g: Graph, path) -> int:
    """Largest-index active neighbour of the path's last vertex that the path never visits."""
    on_path = set(path)
    cands = [u for u in g.neighbors(path[-1]) if u not in on_path]
    if not cands:
        raise GraphError(f"path {path} has no unvisited neighbour at its end")
    return max(cands)


@dataclass
class CascadePlan:
    """Paths ``P_1..P_n`` (``P_{n-1}`` a single vertex, ``P_n`` empty), exits, and placement.

    ``S[i-1]`` is the logical qubit placed on vertex ``i`` before the circuit.
    """

    paths: list[tuple[int, ...]]
    exits: list[int | None]
    S: tuple[int, ...]
    solutions: list[CoveringSolution] = field(default_factory=list)

    @property
    def initial_layout(self) -> tuple[int, ...]:
        layout = [0] * len(self.S)
        for vertex, logical in enumerate(self.S, 1):
            layout[logical - 1] = vertex
        return tuple(layout)


def construct_s(g: Graph, method: str = "auto", cap: int | None = None) -> CascadePlan:
    """Plan every cascade and derive the initial qubit placement.

    ``A[i]`` tracks which starting vertex the qubit now on ``v_i`` came from
    while the target of each cascade is walked along its path.
    """
    n = g.n
    if n < 2:
        raise GraphError("QFT synthesis needs at least two qubits")
    if g.excluded_vertices():
        raise GraphError("construct_s expects a graph with no excluded vertices")
    A = list(range(n + 1))
    S = [0] * (n + 1)
    paths: list[tuple[int, ...]] = []
    exits: list[int | None] = []
    sols: list[CoveringSolution] = []
    try:
        for r in range(1, n - 1):
            sol = solve_covering_path(g, method, cap)
            path = sol.path
            S[A[path[0]]] = r
            for a, b in zip(path, path[1:]):
                A[a], A[b] = A[b], A[a]
            q = exit_vertex(g, path)
            A[path[-1]] = A[q]
            g.exclude(q)
            if not g.is_connected():
                raise AssertionError(f"excluding exit {q} disconnected the graph")
            paths.append(path)
            exits.append(q)
            sols.append(sol)
            log.debug("cascade %d: path %s exit %d objective %d", r, path, q, sol.objective)
        q, t = g.vertices()
        S[A[q]] = n - 1
        S[A[t]] = n
        paths += [(q,), ()]
        exits += [None, None]
    finally:
        g.restore_all()
    return CascadePlan(paths, exits, tuple(S[1:]), sols)


class QubitTracker:
    """``T[v]``: logical qubit on vertex ``v``; ``Q[j]``: vertex of logical qubit ``j``."""

    def __init__(self, S):
        n = len(S)
        self.T = [0] + list(S)
        self.Q = [0] * (n + 1)
        for v in range(1, n + 1):
            self.Q[self.T[v]] = v

    def swap(self, a: int, b: int) -> None:
        wa, wb = self.T[a], self.T[b]
        self.T[a], self.T[b] = wb, wa
        self.Q[wa], self.Q[wb] = b, a


def cascade_for_path(
    circ: Circuit, g: Graph, tracker: QubitTracker, path, r: int, exit: int | None
) -> None:
    """Append cascade ``r`` to ``circ``.

    Controls are de-duplicated per logical qubit (the qubit swapped back
    behind the target was already used).  The exit vertex is handled last at
    the path end so its phase gate sits right before the parking SWAP.
    """
    T = tracker.T
    if not path:
        circ.append(H(tracker.Q[r]))
        return
    if T[path[0]] != r:
        raise AssertionError(f"cascade {r}: vertex {path[0]} holds logical {T[path[0]]}")
    circ.append(H(path[0]))
    used: set[int] = set()

    def phase(control: int, target: int) -> None:
        circ.append(CRd(control, target, T[control] - r + 1))
        used.add(T[control])

    k = len(path)
    for j, v in enumerate(path):
        nxt = path[j + 1] if j + 1 < k else None
        # vertices still ahead on the walk get their phase fused with the SWAP onto them
        ahead = set(path[j + 1 :])
        others = [u for u in g.neighbors(v) if u not in ahead and u != exit]
        if nxt is None and exit is not None:
            others.append(exit)
        for u in others:
            if T[u] not in used:
                phase(u, v)
        if nxt is not None:
            if T[nxt] not in used:
                phase(nxt, v)
            circ.append(SWAP(v, nxt))
            tracker.swap(v, nxt)
        elif exit is not None:
            circ.append(SWAP(v, exit))
            tracker.swap(v, exit)


@dataclass
class Synthesis:
    circuit: Circuit
    lowered: Circuit
    report: CostReport
    plan: CascadePlan


def synthesize_qft(g: Graph, method: str = "auto", cap: int | None = None, fuse: bool = True) -> Synthesis:
    """Build the QFT circuit for ``g``, lower it, and account for its CNOT cost."""
    plan = construct_s(g, method, cap)
    n = g.n
    tracker = QubitTracker(plan.S)
    circ = Circuit(n, graph=g)
    try:
        for r in range(1, n + 1):
            start = len(circ)
            cascade_for_path(circ, g, tracker, plan.paths[r - 1], r, plan.exits[r - 1])
            circ.cascades.append((start, len(circ)))
            if plan.exits[r - 1] is not None:
                g.exclude(plan.exits[r - 1])
    finally:
        g.restore_all()
    circ.initial_layout = plan.initial_layout
    circ.final_layout = tuple(tracker.Q[1:])
    low = lower(circ, fuse=fuse)

    rows = []
    for r in range(1, n + 1):
        a, b = low.cascades[r - 1]
        cnots = sum(1 for gt in low.gates[a:b] if gt.kind == "cx")
        rows.append({"r": r, "len": len(plan.paths[r - 1]), "cnots": cnots})
    used_methods = {s.method for s in plan.solutions} or {"approx" if method == "approx" else "exact"}
    report = CostReport(
        n=n,
        predicted=predicted_cost([row["len"] for row in rows[: n - 1]], n),
        actual=low.count("cx"),
        per_cascade=rows,
        method="+".join(sorted(used_methods)),
        initial_layout=circ.initial_layout,
        final_layout=circ.final_layout,
    )
    return Synthesis(circ, low, report, plan)
