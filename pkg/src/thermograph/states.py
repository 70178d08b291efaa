"""Graph states, the graph-state Hamiltonian and its thermal states.

The thermal state of ``H = -1/2 sum_i B_i X_i Z_{N(i)}`` at temperature
``T`` equals the graph state after independent local dephasing of qubit
``i`` with probability ``p_i = 2 / (1 + exp(B_i / T))``. :func:`thermal_state`
is built that way, without any matrix exponential. The exponential route is
kept only as an oracle inside :func:`equivalence_check`.
"""

from __future__ import annotations

import math
from collections.abc import Sequence
from dataclasses import dataclass

import numpy as np

from . import densop
from .densop import DEFAULT_MAX_QUBITS
from .errors import CapExceededError
from .graph_core import Graph

VERIFY_MAX_QUBITS = 8
_ZERO_T_FRACTION = 1e-9
_EXP_OVERFLOW = 700.0


def dephasing_probability(B: float, T: float) -> float:
    """Dephasing probability ``2 / (1 + exp(B/T))`` matching a thermal bath at ``T``."""
    if not B > 0:
        raise ValueError("coupling must be strictly positive")
    if T < 0:
        raise ValueError("temperature must be non-negative")
    if T == 0:
        return 0.0
    x = B / T
    if x > _EXP_OVERFLOW:
        return 2.0 * math.exp(-x) / (1.0 + math.exp(-x))
    return 2.0 / (1.0 + math.exp(x))


def _is_zero_temperature(g: Graph, T: float) -> bool:
    if T < 0:
        raise ValueError("temperature must be non-negative")
    return T < _ZERO_T_FRACTION * min(g.couplings)


def graph_state_vector(g: Graph, max_qubits: int = DEFAULT_MAX_QUBITS) -> np.ndarray:
    densop.check_cap(g.n, max_qubits)
    s = densop.plus_product_state(g.n)
    return s * densop.cz_signs(g.n, g.edges)


def excited_graph_state(g: Graph, mu: Sequence[int], max_qubits: int = DEFAULT_MAX_QUBITS) -> np.ndarray:
    """``prod_i Z_i**mu_i |G>``: the Hamiltonian eigenstate with excitation pattern ``mu``."""
    mu = [int(b) for b in mu]
    if len(mu) != g.n:
        raise ValueError(f"excitation pattern has length {len(mu)}, graph has {g.n} vertices")
    if any(b not in (0, 1) for b in mu):
        raise ValueError("excitation bits must be 0 or 1")
    s = graph_state_vector(g, max_qubits)
    for i, b in enumerate(mu):
        if b:
            s = densop.apply_pauli_z(s, i)
    return s


def excitation_energy(g: Graph, mu: Sequence[int]) -> float:
    return -0.5 * sum(b * (-1) ** int(m) for b, m in zip(g.couplings, mu))


def hamiltonian_operator(g: Graph, max_qubits: int = DEFAULT_MAX_QUBITS) -> np.ndarray:
    densop.check_cap(g.n, max_qubits)
    n = g.n
    dim = 1 << n
    idx = np.arange(dim)
    h = np.zeros((dim, dim))
    for i, nbrs in enumerate(g.adjacency()):
        xmask = 1 << (n - 1 - i)
        zmask = sum(1 << (n - 1 - j) for j in nbrs)
        signs = 1.0 - 2.0 * (np.bitwise_count(idx & zmask) & 1)
        h[idx ^ xmask, idx] += -0.5 * g.couplings[i] * signs
    return h


def thermal_state(g: Graph, T: float, max_qubits: int = DEFAULT_MAX_QUBITS) -> np.ndarray:
    """Gibbs state of the graph-state Hamiltonian at temperature ``T``.

    Each qubit of ``|+><+|^n`` is dephased with its thermal probability and
    the CZ layer is applied afterwards; both orders give the same state
    because CZ gates commute with local Z dephasing. ``T = 0`` (or anything
    below ``1e-9 * min(B)``) returns the pure graph-state projector.
    """
    densop.check_cap(g.n, max_qubits)
    if _is_zero_temperature(g, T):
        return densop.outer_product(graph_state_vector(g, max_qubits))
    rho = densop.outer_product(densop.plus_product_state(g.n))
    for i, b in enumerate(g.couplings):
        rho = densop.dephase(rho, i, dephasing_probability(b, T))
    s = densop.cz_signs(g.n, g.edges)
    rho *= s[:, None]
    rho *= s[None, :]
    return rho


def dephased_graph_state(g: Graph, probs: Sequence[float], max_qubits: int = DEFAULT_MAX_QUBITS,
                         order: Sequence[int] | None = None) -> np.ndarray:
    """Apply the local dephasing channels to the pure graph state.

    ``order`` permutes the sequence in which the channels act; the result
    does not depend on it.
    """
    probs = [float(p) for p in probs]
    if len(probs) != g.n:
        raise ValueError(f"expected {g.n} probabilities, got {len(probs)}")
    if any(not 0.0 <= p <= 1.0 for p in probs):
        raise ValueError("dephasing probabilities must lie in [0, 1]")
    rho = densop.outer_product(graph_state_vector(g, max_qubits))
    for i in (range(g.n) if order is None else order):
        rho = densop.dephase(rho, i, probs[i])
    return rho


def exponential_thermal_state(g: Graph, T: float, max_qubits: int = VERIFY_MAX_QUBITS) -> np.ndarray:
    """``exp(-H/T) / Tr exp(-H/T)`` from a full eigendecomposition of ``H``."""
    if not T > 0:
        raise ValueError("the exponential route needs T > 0")
    densop.check_cap(g.n, max_qubits)
    w, v = np.linalg.eigh(hamiltonian_operator(g, max_qubits))
    weights = np.exp(-(w - w.min()) / T)
    weights /= weights.sum()
    return (v * weights) @ v.conj().T


@dataclass(frozen=True)
class EquivalenceReport:
    temperature: float
    trace_distance: float
    tol: float

    @property
    def passed(self) -> bool:
        return self.trace_distance < self.tol


def equivalence_check(g: Graph, T: float, tol: float = 1e-10) -> EquivalenceReport:
    """Compare the exponential Gibbs state with the dephased graph state."""
    if g.n > VERIFY_MAX_QUBITS:
        raise CapExceededError(f"equivalence check is limited to {VERIFY_MAX_QUBITS} qubits, got {g.n}")
    if not T > 0:
        raise ValueError("equivalence check needs T > 0")
    exact = exponential_thermal_state(g, T)
    probs = [dephasing_probability(b, T) for b in g.couplings]
    dephased = dephased_graph_state(g, probs)
    return EquivalenceReport(T, densop.trace_distance(exact, dephased), tol)
