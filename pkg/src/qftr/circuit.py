"""Gate-level circuits over physical vertices, lowering to {H, Rz, CNOT}, and QASM output.

``rz`` follows the OpenQASM convention ``diag(exp(-i t/2), exp(i t/2))``.  A
controlled phase ``CR_d`` multiplies ``|11>`` by ``exp(i pi / 2**(d-1))``.
"""
from __future__ import annotations

import json
import math
from dataclasses import dataclass, field

from .graph import Graph

ONE_QUBIT = {"h", "x", "rz"}
TWO_QUBIT = {"cx", "crd", "swap"}
BASIS = {"h", "rz", "cx"}


@dataclass(frozen=True)
class Gate:
    kind: str
    qubits: tuple[int, ...]
    param: float = 0.0

    def __post_init__(self):
        arity = 1 if self.kind in ONE_QUBIT else 2 if self.kind in TWO_QUBIT else None
        if self.kind == "barrier":
            return
        if arity is None:
            raise ValueError(f"unknown gate kind {self.kind!r}")
        if len(self.qubits) != arity or len(set(self.qubits)) != arity:
            raise ValueError(f"{self.kind} needs {arity} distinct qubits, got {self.qubits}")
        if self.kind == "crd" and (self.param < 1 or int(self.param) != self.param):
            raise ValueError(f"CR_d degree must be a positive integer, got {self.param}")

    def __str__(self) -> str:
        args = ",".join(f"v{q}" for q in self.qubits)
        if self.kind == "rz":
            return f"rz({self.param:.6g}) {args}"
        if self.kind == "crd":
            return f"cr{int(self.param)} {args}"
        return f"{self.kind} {args}"

    @property
    def phase(self) -> float:
        """Phase angle of a ``crd`` gate."""
        return math.pi / 2 ** (int(self.param) - 1)


def H(q):
    return Gate("h", (q,))


def X(q):
    return Gate("x", (q,))


def Rz(q, theta):
    return Gate("rz", (q,), float(theta))


def CNOT(c, t):
    return Gate("cx", (c, t))


def CRd(c, t, d):
    return Gate("crd", (c, t), int(d))


def SWAP(a, b):
    return Gate("swap", (a, b))


def Barrier(*qs):
    return Gate("barrier", tuple(qs))


@dataclass
class Circuit:
    """Ordered gate list on vertices ``1..n``.

    ``initial_layout[j-1]`` / ``final_layout[j-1]`` give the vertex holding
    logical qubit ``j`` before / after the circuit.  ``cascades`` holds
    ``(start, stop)`` gate-index ranges, one per QFT cascade.
    """

    n: int
    gates: list[Gate] = field(default_factory=list)
    initial_layout: tuple[int, ...] | None = None
    final_layout: tuple[int, ...] | None = None
    cascades: list[tuple[int, int]] = field(default_factory=list)
    graph: Graph | None = field(default=None, repr=False, compare=False)

    def append(self, gate: Gate) -> None:
        for q in gate.qubits:
            if not 1 <= q <= self.n:
                raise ValueError(f"{gate}: vertex {q} outside 1..{self.n}")
        if self.graph is not None and gate.kind in TWO_QUBIT:
            a, b = gate.qubits
            if not self.graph.has_edge(a, b):
                raise ValueError(f"{gate}: ({a}, {b}) is not an edge of the connectivity graph")
        self.gates.append(gate)

    def extend(self, gates) -> None:
        for g in gates:
            self.append(g)

    def __len__(self) -> int:
        return len(self.gates)

    def is_lowered(self) -> bool:
        return all(g.kind in BASIS for g in self.gates)

    def count(self, kind: str) -> int:
        return sum(1 for g in self.gates if g.kind == kind)

    def cascade_gates(self, r: int) -> list[Gate]:
        start, stop = self.cascades[r - 1]
        return self.gates[start:stop]


def lower_crd(c: int, t: int, phi: float) -> list[Gate]:
    return [Rz(c, phi / 2), CNOT(c, t), Rz(t, -phi / 2), CNOT(c, t), Rz(t, phi / 2)]


def lower_crd_swap(a: int, b: int, phi: float) -> list[Gate]:
    """``CR(a, b)`` followed by ``SWAP(a, b)`` with three CNOTs.

    The SWAP's leading CNOT cancels the trailing CNOT of the phase gadget.
    """
    return [Rz(a, phi / 2), Rz(b, phi / 2), CNOT(a, b), Rz(b, -phi / 2), CNOT(b, a), CNOT(a, b)]


def lower_swap(a: int, b: int) -> list[Gate]:
    return [CNOT(a, b), CNOT(b, a), CNOT(a, b)]


def _lower_one(g: Gate) -> list[Gate]:
    if g.kind in BASIS:
        return [g]
    if g.kind == "crd":
        return lower_crd(*g.qubits, g.phase)
    if g.kind == "swap":
        return lower_swap(*g.qubits)
    if g.kind == "x":
        q = g.qubits[0]
        return [H(q), Rz(q, math.pi), H(q)]
    if g.kind == "barrier":
        return []
    raise ValueError(f"cannot lower {g}")


def lower(c: Circuit, fuse: bool = True) -> Circuit:
    """Rewrite into {H, Rz, CNOT}; adjacent ``CR_d``/``SWAP`` on one pair fuse into 3 CNOTs.

    Fusion never crosses a cascade boundary.  Layout metadata and cascade
    ranges carry over to the lowered gate indices.
    """
    starts = {s for s, _ in c.cascades}
    out: list[Gate] = []
    index_map = [0] * (len(c.gates) + 1)
    i = 0
    while i < len(c.gates):
        g = c.gates[i]
        index_map[i] = len(out)
        nxt = c.gates[i + 1] if i + 1 < len(c.gates) else None
        if (
            fuse
            and g.kind == "crd"
            and nxt is not None
            and nxt.kind == "swap"
            and set(nxt.qubits) == set(g.qubits)
            and i + 1 not in starts
        ):
            out.extend(lower_crd_swap(*g.qubits, g.phase))
            index_map[i + 1] = len(out)
            i += 2
            continue
        out.extend(_lower_one(g))
        i += 1
    index_map[len(c.gates)] = len(out)
    res = Circuit(c.n, initial_layout=c.initial_layout, final_layout=c.final_layout, graph=c.graph)
    res.gates = out
    res.cascades = [(index_map[s], index_map[e]) for s, e in c.cascades]
    return res


def cnot_cost(c: Circuit, fuse: bool = True) -> int:
    """Number of CNOTs after lowering."""
    if not c.is_lowered():
        c = lower(c, fuse=fuse)
    return c.count("cx")


def predicted_cost(path_lengths, n: int) -> int:
    """Upper estimate ``K + n^2 - n - 1`` where ``K`` sums the per-cascade path lengths."""
    return sum(path_lengths) + n * n - n - 1


def format_angle(theta: float) -> str:
    """Exact ``pi`` fractions where possible, otherwise a round-trippable float."""
    if theta == 0:
        return "0"
    sign = "-" if theta < 0 else ""
    ratio = abs(theta) / math.pi
    for k in range(0, 64):
        if ratio == 2.0**-k:
            return f"{sign}pi" if k == 0 else f"{sign}pi/{2**k}"
    for k in range(1, 4):
        if ratio == float(k):
            return f"{sign}{k}*pi"
    return repr(float(theta))


def _layout_line(name: str, layout) -> str:
    pairs = ", ".join(f"{j}->{v}" for j, v in enumerate(layout, 1))
    return f"// {name}: {pairs}"


def emit_qasm(c: Circuit) -> str:
    """OpenQASM 2.0 text for a lowered circuit; vertex ``v`` becomes wire ``q[v-1]``."""
    bad = [g for g in c.gates if g.kind not in BASIS]
    if bad:
        raise ValueError(f"circuit is not lowered; first offending gate: {bad[0]}")
    lines = ["OPENQASM 2.0;", 'include "qelib1.inc";']
    if c.initial_layout is not None:
        lines.append(_layout_line("initial_layout", c.initial_layout))
    if c.final_layout is not None:
        lines.append(_layout_line("final_layout", c.final_layout))
    lines.append(f"qreg q[{c.n}];")
    starts = {s: r for r, (s, e) in enumerate(c.cascades, 1) if e > s}
    for i, g in enumerate(c.gates):
        if i in starts:
            lines.append(f"// cascade {starts[i]}")
        q = [f"q[{v - 1}]" for v in g.qubits]
        if g.kind == "h":
            lines.append(f"h {q[0]};")
        elif g.kind == "rz":
            lines.append(f"rz({format_angle(g.param)}) {q[0]};")
        else:
            lines.append(f"cx {q[0]},{q[1]};")
    return "\n".join(lines) + "\n"


@dataclass
class CostReport:
    n: int
    predicted: int
    actual: int
    per_cascade: list[dict]
    method: str = "exact"
    initial_layout: tuple[int, ...] = ()
    final_layout: tuple[int, ...] = ()
    residual: float | None = None

    @property
    def K(self) -> int:
        return sum(row["len"] for row in self.per_cascade)

    def to_dict(self) -> dict:
        out = {
            "schema": 1,
            "n": self.n,
            "method": self.method,
            "K": self.K,
            "predicted": self.predicted,
            "actual": self.actual,
            "per_cascade": [dict(r=row["r"], len=row["len"], cnots=row["cnots"]) for row in self.per_cascade],
            "initial_layout": list(self.initial_layout),
            "final_layout": list(self.final_layout),
        }
        if self.residual is not None:
            out["residual"] = self.residual
        return out

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2) + "\n"
