"""Thermal graph states, their negativities and bound-entanglement windows."""

from .entanglement import (
    BoundWindowReport,
    CriticalTemperature,
    NegativityCurve,
    bound_entanglement_window,
    critical_temperature_equal,
    critical_temperature_numeric,
    critical_temperature_pair,
    negativity,
    negativity_sweep,
    pair_negativity_closed_form,
    reduced_negativity,
)
from .errors import BracketError, CapExceededError, NoEntanglementError, SolverError
from .graph_core import (
    Bipartition,
    Graph,
    ReducedProblem,
    boundary_reduce,
    contiguous_cut,
    crossing_edges,
    even_odd_partition,
    linear_chain,
    single_site_partition,
    square_lattice,
    star_graph,
)
from .states import (
    dephased_graph_state,
    dephasing_probability,
    equivalence_check,
    graph_state_vector,
    hamiltonian_operator,
    thermal_state,
)

__version__ = "0.1.0"
