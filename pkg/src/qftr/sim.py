"""Dense unitaries of small circuits and layout-aware QFT equivalence checks.

Basis convention: vertex ``v1`` is the most significant bit of a basis index.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .circuit import Circuit, Gate

MAX_DENSE = 12
MAX_VERIFY = 10
MAX_STATEVECTOR = 24

_S2 = 1 / math.sqrt(2)
HADAMARD = np.array([[_S2, _S2], [_S2, -_S2]], dtype=complex)
PAULI_X = np.array([[0, 1], [1, 0]], dtype=complex)
CNOT_MATRIX = np.array([[1, 0, 0, 0], [0, 1, 0, 0], [0, 0, 0, 1], [0, 0, 1, 0]], dtype=complex)
SWAP_MATRIX = np.array([[1, 0, 0, 0], [0, 0, 1, 0], [0, 1, 0, 0], [0, 0, 0, 1]], dtype=complex)


class SimulationCapError(ValueError):
    pass


def rz(theta: float) -> np.ndarray:
    return np.diag([np.exp(-0.5j * theta), np.exp(0.5j * theta)])


def ry(theta: float) -> np.ndarray:
    c, s = math.cos(theta / 2), math.sin(theta / 2)
    return np.array([[c, -s], [s, c]], dtype=complex)


def r_k(k: int) -> np.ndarray:
    return np.diag([1, np.exp(1j * math.pi / 2 ** (k - 1))])


def cr_k(k: int) -> np.ndarray:
    return np.diag([1, 1, 1, np.exp(1j * math.pi / 2 ** (k - 1))])


def crz(theta: float) -> np.ndarray:
    """Controlled ``rz`` in the same sign convention as :func:`rz`."""
    out = np.eye(4, dtype=complex)
    out[2:, 2:] = rz(theta)
    return out


def gate_matrix(g: Gate) -> np.ndarray:
    if g.kind == "h":
        return HADAMARD
    if g.kind == "x":
        return PAULI_X
    if g.kind == "rz":
        return rz(g.param)
    if g.kind == "cx":
        return CNOT_MATRIX
    if g.kind == "crd":
        return cr_k(int(g.param))
    if g.kind == "swap":
        return SWAP_MATRIX
    raise ValueError(f"no matrix for {g}")


def apply_gate(state: np.ndarray, g: Gate, n: int) -> np.ndarray:
    """Apply ``g`` to the leading ``n`` tensor axes of ``state`` (shape ``(2,)*n + rest``)."""
    if g.kind == "barrier":
        return state
    axes = [q - 1 for q in g.qubits]
    k = len(axes)
    m = gate_matrix(g).reshape((2,) * (2 * k))
    out = np.tensordot(m, state, axes=(list(range(k, 2 * k)), axes))
    return np.moveaxis(out, list(range(k)), axes)


def unitary_of(c: Circuit) -> np.ndarray:
    """``2^n x 2^n`` matrix of ``c`` with gates applied in list order."""
    n = c.n
    if n > MAX_DENSE:
        raise SimulationCapError(f"dense simulation is capped at {MAX_DENSE} qubits, got {n}")
    dim = 2**n
    u = np.eye(dim, dtype=complex).reshape((2,) * n + (dim,))
    for g in c.gates:
        u = apply_gate(u, g, n)
    return u.reshape(dim, dim)


def qft_matrix(n: int) -> np.ndarray:
    """Normalised QFT: entry ``(k, j) = exp(2 pi i j k / 2^n) / sqrt(2^n)``."""
    if not 1 <= n <= MAX_DENSE:
        raise SimulationCapError(f"QFT matrix size must be in 1..{MAX_DENSE}, got {n}")
    dim = 2**n
    jk = np.outer(np.arange(dim), np.arange(dim)) % dim
    return np.exp(2j * np.pi * jk / dim) / math.sqrt(dim)


def relabel_permutation(n: int, wires) -> np.ndarray:
    """Permutation matrix sending bit ``l`` (1 = most significant) of the input to vertex ``wires[l-1]``."""
    dim = 2**n
    idx = np.arange(dim)
    target = np.zeros(dim, dtype=np.int64)
    for pos, v in enumerate(wires, 1):
        bit = (idx >> (n - pos)) & 1
        target |= bit << (n - v)
    P = np.zeros((dim, dim))
    P[target, idx] = 1
    return P


def expected_unitary(n: int, initial_layout, final_layout) -> np.ndarray:
    """``P_out @ QFT @ P_in^-1`` for the given layouts.

    Logical qubit ``j`` carries input bit ``j`` (``1`` most significant).  A
    cascade-form QFT without trailing swaps leaves output bit ``l`` on logical
    qubit ``n + 1 - l``, so the output relabelling reads the final layout
    backwards.
    """
    P_in = relabel_permutation(n, initial_layout)
    P_out = relabel_permutation(n, list(reversed(final_layout)))
    return P_out @ qft_matrix(n) @ P_in.T


def phase_aligned_residual(U: np.ndarray, V: np.ndarray) -> tuple[float, float]:
    """``max|U - e^{ia} V|`` with ``a`` the phase of ``tr(U V^dagger)``."""
    tr = np.vdot(V, U)
    alpha = float(np.angle(tr)) if abs(tr) > 1e-12 else 0.0
    return float(np.abs(U - np.exp(1j * alpha) * V).max()), alpha


@dataclass(frozen=True)
class Verification:
    equivalent: bool
    residual: float
    phase: float


def verify_synthesis(c: Circuit, tol: float = 1e-9) -> Verification:
    """Dense check that ``c`` implements the QFT up to its layouts and a global phase."""
    if c.initial_layout is None or c.final_layout is None:
        raise ValueError("circuit carries no layout metadata")
    if c.n > MAX_VERIFY:
        raise SimulationCapError(f"verification is capped at {MAX_VERIFY} qubits, got {c.n}")
    U = unitary_of(c)
    V = expected_unitary(c.n, c.initial_layout, c.final_layout)
    res, alpha = phase_aligned_residual(U, V)
    return Verification(res < tol, res, alpha)


def verify_statevector(c: Circuit, trials: int = 3, seed: int = 0, tol: float = 1e-9) -> Verification:
    """Random-input check for circuits too wide for dense matrices.

    Each trial runs a random state through ``c`` and compares with an FFT-based
    QFT of the relabelled input.  The global phase is fitted on the first trial
    and must hold for all of them.
    """
    n = c.n
    if c.initial_layout is None or c.final_layout is None:
        raise ValueError("circuit carries no layout metadata")
    if n > MAX_STATEVECTOR:
        raise SimulationCapError(f"statevector check is capped at {MAX_STATEVECTOR} qubits, got {n}")
    rng = np.random.default_rng(seed)
    dim = 2**n
    in_perm = _index_map(n, c.initial_layout)
    out_perm = _index_map(n, list(reversed(c.final_layout)))
    worst, alpha = 0.0, None
    for _ in range(trials):
        psi = rng.normal(size=dim) + 1j * rng.normal(size=dim)
        psi /= np.linalg.norm(psi)
        state = psi.reshape((2,) * n)
        for g in c.gates:
            state = apply_gate(state, g, n)
        got = state.reshape(dim)
        logical_in = psi[in_perm]
        logical_out = np.fft.ifft(logical_in, norm="ortho")
        want = np.empty(dim, dtype=complex)
        want[out_perm] = logical_out
        if alpha is None:
            alpha = float(np.angle(np.vdot(want, got)))
        worst = max(worst, float(np.abs(got - np.exp(1j * alpha) * want).max()))
    return Verification(worst < tol, worst, alpha or 0.0)


def _index_map(n: int, wires) -> np.ndarray:
    """``m[x]`` = physical basis index holding logical index ``x``."""
    idx = np.arange(2**n)
    out = np.zeros_like(idx)
    for pos, v in enumerate(wires, 1):
        out |= ((idx >> (n - pos)) & 1) << (n - v)
    return out
