import itertools
import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

import oracles
from thermograph import densop, states
from thermograph import graph_core as gc
from thermograph.errors import CapExceededError

# p at the equal-coupling critical temperature: root of 2 - 4p + p^2 = 0
P_CRITICAL = 2 - math.sqrt(2)


def test_dephasing_probability_limits():
    assert states.dephasing_probability(1.0, 0.0) == 0.0
    assert states.dephasing_probability(1.0, math.inf) == 1.0
    assert states.dephasing_probability(1.0, 1e6) == pytest.approx(1.0, abs=1e-6)
    t_c = 1 / math.log(1 + math.sqrt(2))
    assert states.dephasing_probability(1.0, t_c) == pytest.approx(P_CRITICAL, abs=1e-14)
    # stable branch beyond exp overflow
    assert states.dephasing_probability(1.0, 1 / 900) == 0.0
    assert states.dephasing_probability(701.0, 1.0) == pytest.approx(2 * math.exp(-701.0), rel=1e-12)
    with pytest.raises(ValueError):
        states.dephasing_probability(0.0, 1.0)
    with pytest.raises(ValueError):
        states.dephasing_probability(1.0, -1.0)


def test_dephasing_probability_monotone():
    ts = np.linspace(0.01, 50, 500)
    ps = [states.dephasing_probability(1.3, t) for t in ts]
    assert all(b > a for a, b in zip(ps, ps[1:]))
    assert all(0 <= p <= 1 for p in ps)


def test_graph_state_vector():
    assert np.allclose(states.graph_state_vector(gc.Graph.from_edges(3, [])), densop.plus_product_state(3))
    assert np.allclose(states.graph_state_vector(gc.linear_chain(2)), np.array([1, 1, 1, -1]) / 2)
    g = gc.linear_chain(4)
    assert np.allclose(states.graph_state_vector(g), oracles.graph_state(4, g.edges))


def test_graph_state_is_stabilized():
    g = gc.linear_chain(3)
    s = states.graph_state_vector(g)
    for i, nbrs in enumerate(g.adjacency()):
        ops = {i: oracles.X}
        ops.update({j: oracles.Z for j in nbrs})
        assert np.allclose(oracles.site_op(3, ops) @ s, s)


def test_graph_state_cap():
    with pytest.raises(CapExceededError):
        states.graph_state_vector(gc.linear_chain(13))


def test_excited_states():
    g = gc.linear_chain(2)
    assert np.allclose(states.excited_graph_state(g, [0, 0]), states.graph_state_vector(g))
    s10 = states.excited_graph_state(g, [1, 0])
    assert abs(np.vdot(s10, states.graph_state_vector(g))) < 1e-15
    with pytest.raises(ValueError):
        states.excited_graph_state(g, [1])


def test_excited_state_energies():
    g = gc.star_graph(3, [0.5, 1.0, 2.0, 1.5])
    h = states.hamiltonian_operator(g)
    basis = []
    for mu in itertools.product([0, 1], repeat=g.n):
        s = states.excited_graph_state(g, mu)
        assert np.allclose(h @ s, states.excitation_energy(g, mu) * s)
        assert states.excitation_energy(g, mu) == pytest.approx(
            -0.5 * sum(b * (-1) ** m for b, m in zip(g.couplings, mu)))
        basis.append(s)
    gram = np.array(basis).conj() @ np.array(basis).T
    assert np.allclose(gram, np.eye(len(basis)))


def test_hamiltonian_matches_kron_oracle():
    g = gc.square_lattice(2, 3, [0.5, 1, 2, 1.5, 0.7, 1.1])
    assert np.allclose(states.hamiltonian_operator(g), oracles.hamiltonian(g.n, g.edges, g.couplings))


def test_hamiltonian_small_cases():
    h1 = states.hamiltonian_operator(gc.linear_chain(1))
    assert np.allclose(h1, -0.5 * oracles.X)
    assert np.allclose(np.linalg.eigvalsh(h1), [-0.5, 0.5])
    assert np.linalg.eigvalsh(states.hamiltonian_operator(gc.linear_chain(2)))[0] == pytest.approx(-1.0)
    # spectrum of chain(3) from exhaustive excitation-pattern enumeration
    ev = np.linalg.eigvalsh(states.hamiltonian_operator(gc.linear_chain(3)))
    assert np.allclose(ev, [-1.5, -0.5, -0.5, -0.5, 0.5, 0.5, 0.5, 1.5])


def test_hamiltonian_terms_commute():
    g = gc.linear_chain(4)
    base = states.hamiltonian_operator(g)
    # H is linear in the couplings, so bumping B_i by one isolates term i
    terms = [states.hamiltonian_operator(g.with_couplings([2.0 if k == i else 1.0 for k in range(4)])) - base
             for i in range(4)]
    for a, b in itertools.combinations(terms, 2):
        assert np.max(np.abs(a @ b - b @ a)) < 1e-12


def test_thermal_state_zero_temperature():
    g = gc.linear_chain(3)
    pure = densop.outer_product(states.graph_state_vector(g))
    assert np.allclose(states.thermal_state(g, 0.0), pure)
    assert np.allclose(states.thermal_state(g, 1e-12), pure)
    with pytest.raises(ValueError):
        states.thermal_state(g, -0.1)


def test_thermal_state_infinite_temperature():
    g = gc.linear_chain(3)
    rho = states.thermal_state(g, math.inf)
    s = densop.cz_signs(3, g.edges)
    undone = rho * s[:, None] * s[None, :]
    assert np.allclose(undone, np.diag(np.diag(undone)))
    assert np.allclose(undone, np.eye(8) / 8)
    for i in range(3):
        zi = oracles.site_op(3, {i: oracles.Z})
        assert np.allclose(zi @ rho, rho @ zi)
    assert np.allclose(rho, states.dephased_graph_state(g, [1.0] * 3))


def test_thermal_state_matches_exponential_oracle():
    g = gc.linear_chain(2)
    exact = oracles.gibbs(2, g.edges, g.couplings, 1.0)
    assert densop.trace_distance(states.thermal_state(g, 1.0), exact) < 1e-10


@pytest.mark.parametrize("g,T", [
    (gc.linear_chain(3), 0.4),
    (gc.star_graph(3, [0.3, 1.0, 2.2, 0.9]), 1.7),
    (gc.square_lattice(2, 2, [1, 2, 0.5, 1.5]), 0.9),
])
def test_thermal_state_physical(g, T):
    rho = states.thermal_state(g, T)
    assert np.max(np.abs(rho - rho.conj().T)) < 1e-12
    assert abs(np.trace(rho) - 1) < 1e-12
    assert np.linalg.eigvalsh(rho).min() > -1e-10
    h = states.hamiltonian_operator(g)
    assert np.max(np.abs(h @ rho - rho @ h)) < 1e-10


def test_graph_basis_diagonal_and_weights():
    g = gc.linear_chain(5, [0.5, 1.0, 2.0, 1.5, 0.8])
    T = 1.1
    rho = states.thermal_state(g, T)
    patterns = list(itertools.product([0, 1], repeat=g.n))
    basis = np.array([states.excited_graph_state(g, mu) for mu in patterns])
    m = basis.conj() @ rho @ basis.T
    assert np.max(np.abs(m - np.diag(np.diag(m)))) < 1e-10
    # weight ratio to the Boltzmann factor is one constant across all patterns
    boltz = np.array([math.exp(sum(b * (-1) ** u for b, u in zip(g.couplings, mu)) / (2 * T)) for mu in patterns])
    ratio = np.diag(m).real / boltz
    assert np.max(np.abs(ratio / ratio[0] - 1)) < 1e-10


def test_dephased_graph_state():
    g = gc.linear_chain(3)
    assert np.allclose(states.dephased_graph_state(g, [0, 0, 0]), densop.outer_product(states.graph_state_vector(g)))
    with pytest.raises(ValueError):
        states.dephased_graph_state(g, [0.1, 0.2, 1.2])
    with pytest.raises(ValueError):
        states.dephased_graph_state(g, [0.1, 0.2])


def test_dephasing_commutes_with_cz_layer():
    g = gc.linear_chain(4)
    probs = [0.1, 0.5, 0.9, 0.3]
    after = states.dephased_graph_state(g, probs)
    # dephase |+><+|^4 first, then conjugate by each CZ
    rho = np.outer(oracles.graph_state(4, []), oracles.graph_state(4, []))
    for i, p in enumerate(probs):
        rho = oracles.kraus_dephase(rho, 4, i, p)
    for i, j in g.edges:
        cz = oracles.cz_matrix(4, i, j)
        rho = cz @ rho @ cz
    assert densop.trace_distance(after, rho) < 1e-12


@settings(max_examples=20, deadline=None)
@given(st.permutations(range(4)), st.lists(st.floats(0, 1), min_size=4, max_size=4))
def test_channel_order_irrelevant(order, probs):
    g = gc.star_graph(3)
    a = states.dephased_graph_state(g, probs)
    b = states.dephased_graph_state(g, probs, order=order)
    assert np.max(np.abs(a - b)) < 1e-14


def test_equivalence_check_examples():
    r = states.equivalence_check(gc.linear_chain(4), 0.8)
    assert r.passed and r.trace_distance < 1e-10
    r = states.equivalence_check(gc.linear_chain(4, [0.5, 1.0, 2.0, 1.5]), 1.3)
    assert r.passed and r.trace_distance < 1e-10


def test_equivalence_check_randomized_star():
    rng = np.random.default_rng(2024)
    for _ in range(50):
        g = gc.star_graph(3, list(rng.uniform(0.1, 3.0, 4)))
        assert states.equivalence_check(g, float(rng.uniform(0.1, 5.0))).passed


def test_exponential_oracle_agrees_with_kron_oracle():
    g = gc.star_graph(3, [0.4, 1.2, 2.0, 0.7])
    assert np.allclose(states.exponential_thermal_state(g, 0.6), oracles.gibbs(4, g.edges, g.couplings, 0.6))


def test_equivalence_check_refuses_large_graphs():
    with pytest.raises(CapExceededError):
        states.equivalence_check(gc.linear_chain(9), 1.0)
    with pytest.raises(ValueError):
        states.equivalence_check(gc.linear_chain(3), 0.0)
