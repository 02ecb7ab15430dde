import random

import pytest
from helpers import complete, cycle, random_connected, star
from hypothesis import given, settings
from hypothesis import strategies as st

from qftr.circuit import Circuit, lower
from qftr.covering import SolverCapError
from qftr.graph import Graph, GraphError, lnn
from qftr.synth import (
    QubitTracker,
    cascade_for_path,
    construct_s,
    exit_vertex,
    solve_covering_path,
    synthesize_qft,
)


def test_construct_s_chain3(chain3):
    plan = construct_s(chain3, "exact")
    assert plan.paths[0] == (2,)
    assert plan.exits[0] == 3
    assert plan.S == (2, 1, 3)
    assert chain3.excluded_vertices() == []


def test_construct_s_single_edge():
    plan = construct_s(lnn(2), "exact")
    assert plan.S == (1, 2)
    assert plan.paths == [(1,), ()]


def test_construct_s_star(star4):
    plan = construct_s(star4, "exact")
    assert plan.paths[0] == (1,)
    assert plan.exits[0] == 4
    assert set(plan.paths[1]) <= {1, 2, 3}


def test_construct_s_rejects_tiny_graph():
    with pytest.raises(GraphError):
        construct_s(lnn(1))


def test_exit_vertex_prefers_largest_unvisited():
    g = star(5)
    assert exit_vertex(g, (1,)) == 5
    assert exit_vertex(lnn(4), (2, 3)) == 4
    with pytest.raises(GraphError):
        exit_vertex(lnn(3), (1, 2, 3))


def test_solve_covering_path_dispatch():
    assert solve_covering_path(lnn(5), "exact").method == "exact"
    assert solve_covering_path(lnn(5), "approx").method == "approx"
    assert solve_covering_path(lnn(5), "auto", cap=3).method == "approx"
    with pytest.raises(ValueError):
        solve_covering_path(lnn(5), "greedy")
    with pytest.raises(SolverCapError):
        solve_covering_path(lnn(5), "exact", cap=3)


def test_chain3_first_cascade():
    g = lnn(3)
    plan = construct_s(g, "exact")
    tracker = QubitTracker(plan.S)
    c = Circuit(3, graph=g)
    cascade_for_path(c, g, tracker, plan.paths[0], 1, plan.exits[0])
    assert [str(x) for x in c.gates] == ["h v2", "cr2 v1,v2", "cr3 v3,v2", "swap v2,v3"]
    # one plain phase gate plus one fused phase-and-swap
    assert lower(c).count("cx") == 5
    assert synthesize_qft(lnn(3), "exact").report.actual == 7


def test_cascade_rejects_misplaced_target():
    g = lnn(3)
    tracker = QubitTracker((1, 2, 3))
    with pytest.raises(AssertionError):
        cascade_for_path(Circuit(3, graph=g), g, tracker, (2,), 1, 3)


def test_last_two_cascades():
    for g in [lnn(5), star(6), complete(4), cycle(5)]:
        syn = synthesize_qft(g, "exact")
        n = g.n
        last = syn.circuit.cascade_gates(n)
        assert [x.kind for x in last] == ["h"]
        before = syn.circuit.cascade_gates(n - 1)
        assert sorted(x.kind for x in before) == ["crd", "h"]
        rows = syn.report.per_cascade
        assert rows[n - 1]["cnots"] == 0 and rows[n - 2]["cnots"] == 2


def check_structure(g: Graph, method: str):
    syn = synthesize_qft(g, method)
    n = g.n
    circ = syn.circuit
    seen_exits = set()
    for r in range(1, n + 1):
        gates = circ.cascade_gates(r)
        crs = [x for x in gates if x.kind == "crd"]
        assert len(crs) == n - r
        assert gates[0].kind == "h"
        for x in gates:
            assert not set(x.qubits) & seen_exits
        ex = syn.plan.exits[r - 1]
        path = syn.plan.paths[r - 1]
        if ex is not None:
            assert ex not in path and g.has_edge(path[-1], ex)
            seen_exits.add(ex)
    for x in circ.gates:
        if len(x.qubits) == 2:
            assert g.has_edge(*x.qubits)
    # controls per cascade are distinct logical qubits r+1..n with degrees set by their distance from r
    tracker = QubitTracker(syn.plan.S)
    for r in range(1, n + 1):
        degrees = []
        for x in circ.cascade_gates(r):
            if x.kind == "crd":
                degrees.append(int(x.param))
            if x.kind == "swap":
                tracker.swap(*x.qubits)
        assert sorted(degrees) == list(range(2, n - r + 2))
    # every walk step and the exit park cost 3, every other control 2: the objective plus one
    rows = syn.report.per_cascade
    for row, sol in zip(rows[: n - 2], syn.plan.solutions):
        assert row["cnots"] == sol.objective + 1
        if len(set(sol.path)) == len(sol.path):
            assert row["cnots"] == row["len"] + 2 * (n - row["r"])
    assert syn.report.actual == syn.lowered.count("cx")
    if all(len(set(p)) == len(p) for p in syn.plan.paths):
        assert syn.report.actual == syn.report.predicted
    assert sorted(syn.plan.S) == list(range(1, n + 1))
    assert g.excluded_vertices() == []
    return syn


@settings(max_examples=40, deadline=None)
@given(st.integers(2, 10), st.integers(0, 2**32 - 1), st.sampled_from(["exact", "approx"]))
def test_synthesis_structure(n, seed, method):
    check_structure(random_connected(random.Random(seed), n), method)


def test_lnn_matches_closed_form():
    for n in range(2, 11):
        syn = synthesize_qft(lnn(n), "exact")
        assert syn.report.actual == syn.report.predicted == 1.5 * n * n - 2.5 * n + 1


def test_report_layouts_and_method():
    syn = synthesize_qft(lnn(4), "approx")
    rep = syn.report
    assert rep.method == "approx"
    assert rep.initial_layout == syn.circuit.initial_layout
    assert rep.final_layout == syn.circuit.final_layout
    assert sorted(rep.initial_layout) == [1, 2, 3, 4]
    assert rep.K == sum(row["len"] for row in rep.per_cascade)


def test_synthesis_is_deterministic():
    g = random_connected(random.Random(17), 9)
    a = synthesize_qft(g, "exact")
    b = synthesize_qft(g.copy(), "exact")
    assert a.lowered.gates == b.lowered.gates
    assert a.report.to_json() == b.report.to_json()


def test_unfused_lowering_costs_more():
    g = lnn(5)
    fused = synthesize_qft(g, "exact").report.actual
    plain = synthesize_qft(g, "exact", fuse=False).report.actual
    assert plain > fused
