"""Negativities, critical temperatures and bound-entanglement windows."""

from __future__ import annotations

import math
from collections.abc import Sequence
from concurrent.futures import ThreadPoolExecutor
from dataclasses import asdict, dataclass, field

import numpy as np

from . import densop
from .densop import DEFAULT_MAX_QUBITS
from .errors import BracketError, CapExceededError, NoEntanglementError
from .graph_core import Bipartition, Graph, ReducedProblem, boundary_reduce
from .states import thermal_state

ZERO_THRESHOLD = 1e-10
DEFAULT_GRID_POINTS = 200
DEFAULT_T_TOL = 1e-6
DEFAULT_PAIR_RTOL = 1e-10
# default upper bracket, in units of the largest coupling
T_MAX_FACTOR = 10.0

EQUAL_CRITICAL_RATIO = -1.0 / math.log(math.sqrt(2.0) - 1.0)


def negativity(rho: np.ndarray, p: Bipartition, method: str = "auto") -> float:
    """Sum of |lambda| over eigenvalues of the partial transpose below ``-ZERO_THRESHOLD``."""
    n = densop.num_qubits(rho)
    if n != p.n:
        raise ValueError(f"state has {n} qubits but bipartition is over {p.n}")
    ev = densop.hermitian_eigenvalues(densop.partial_transpose(rho, p.side_a), method)
    return float(-ev[ev < -ZERO_THRESHOLD].sum()) + 0.0


def pair_negativity_closed_form(p_i: float, p_j: float) -> float:
    """Negativity of a dephased two-qubit graph state: ``max(0, (2 - 2p_i - 2p_j + p_i p_j)/4)``."""
    for p in (p_i, p_j):
        if not 0.0 <= p <= 1.0:
            raise ValueError(f"probability {p} outside [0, 1]")
    # sum first so the result is exactly symmetric in its arguments
    return max(0.0, 0.25 * (2.0 - 2.0 * (p_i + p_j) + p_i * p_j))


def reduced_negativity(g: Graph, p: Bipartition, T: float, max_qubits: int = DEFAULT_MAX_QUBITS,
                       reduce: bool = True, problem: ReducedProblem | None = None) -> float:
    """Negativity of the thermal state across ``p``, computed on the boundary system.

    Only the reduced size counts against ``max_qubits``. With ``reduce=False``
    the full thermal state is diagonalized instead.
    """
    if not reduce:
        densop.check_cap(g.n, max_qubits)
        return negativity(thermal_state(g, T, max_qubits), p)
    rp = problem if problem is not None else boundary_reduce(g, p)
    if rp.disconnected:
        return 0.0
    if rp.n > max_qubits:
        raise CapExceededError(f"boundary system has {rp.n} qubits, cap is {max_qubits}")
    return negativity(thermal_state(rp.reduced_graph, T, max_qubits), rp.reduced_partition)


@dataclass(frozen=True)
class CriticalTemperature:
    value: float
    method: str
    bracket: tuple[float, float] | None = None
    tolerance: float = 0.0

    def to_dict(self) -> dict:
        return asdict(self)


def critical_temperature_equal(B: float) -> CriticalTemperature:
    """Closed form ``-B / ln(sqrt(2) - 1)`` for two equal couplings."""
    if not B > 0:
        raise ValueError("coupling must be strictly positive")
    return CriticalTemperature(B * EQUAL_CRITICAL_RATIO, "closed_form")


def _pair_residual(a: float, b: float, t: float) -> float:
    return math.exp(-a / t) + math.exp(-b / t) + math.exp(-(a + b) / t) - 1.0


def critical_temperature_pair(B_i: float, B_j: float, rtol: float = DEFAULT_PAIR_RTOL) -> CriticalTemperature:
    """Unique root in ``T`` of ``exp(-B_i/T) + exp(-B_j/T) + exp(-(B_i+B_j)/T) = 1``.

    The left side increases monotonically from 0 to 3, so bisection on a
    bracketed sign change converges. The search runs in units of the larger
    coupling, which makes the result exactly symmetric and scale covariant.
    """
    if not (B_i > 0 and B_j > 0):
        raise ValueError("couplings must be strictly positive")
    scale = max(B_i, B_j)
    a, b = min(B_i, B_j) / scale, 1.0
    # with b = 1 the root never exceeds the equal-coupling value
    hi = 1.2
    lo = 0.5 * a
    while _pair_residual(a, b, lo) >= 0.0:
        lo *= 0.5
    while hi - lo > rtol * hi:
        mid = 0.5 * (lo + hi)
        if mid in (lo, hi):
            break
        if _pair_residual(a, b, mid) < 0.0:
            lo = mid
        else:
            hi = mid
    return CriticalTemperature(0.5 * (lo + hi) * scale, "pair_bisection",
                               (lo * scale, hi * scale), rtol)


def critical_temperature_numeric(g: Graph, p: Bipartition, t_max: float | None = None,
                                 grid_points: int = DEFAULT_GRID_POINTS, tol: float = DEFAULT_T_TOL,
                                 max_qubits: int = DEFAULT_MAX_QUBITS, reduce: bool = True
                                 ) -> CriticalTemperature:
    """Largest temperature at which the negativity across ``p`` vanishes.

    A coarse scan over ``grid_points`` temperatures in ``(0, t_max]`` brackets
    the last zero crossing, which bisection then refines. Temperatures are
    measured in units of the largest boundary coupling, so ``tol`` is an
    absolute tolerance for unit couplings and scales with them otherwise.
    """
    if grid_points < 2:
        raise ValueError("need at least two grid points")
    rp = boundary_reduce(g, p) if reduce else None
    if rp is not None and rp.disconnected:
        raise NoEntanglementError("separable at all probed T: no edge crosses the partition")
    target = rp.reduced_graph if rp is not None else g
    scale = max(target.couplings)
    tau_max = T_MAX_FACTOR if t_max is None else t_max / scale
    if not tau_max > 0:
        raise ValueError("t_max must be positive")

    def positive(tau: float) -> bool:
        return reduced_negativity(g, p, tau * scale, max_qubits, reduce, rp) > 0.0

    grid = [tau_max * k / grid_points for k in range(1, grid_points + 1)]
    last = None
    for k, tau in enumerate(grid):
        if positive(tau):
            last = k
    if last is None:
        raise NoEntanglementError("separable at all probed T")
    if last == len(grid) - 1:
        raise BracketError(f"exceeds t_max: negativity still positive at T={tau_max * scale:g}")
    lo, hi = grid[last], grid[last + 1]
    while hi - lo > tol:
        mid = 0.5 * (lo + hi)
        if positive(mid):
            lo = mid
        else:
            hi = mid
    return CriticalTemperature(0.5 * (lo + hi) * scale, "negativity_bisection",
                               (lo * scale, hi * scale), tol * scale)


@dataclass(frozen=True)
class NegativityCurve:
    temperatures: tuple[float, ...]
    values: tuple[float, ...]
    graph_id: str
    partition: str
    reduced: bool

    def __post_init__(self) -> None:
        if len(self.temperatures) != len(self.values):
            raise ValueError("temperatures and values differ in length")
        if any(b <= a for a, b in zip(self.temperatures, self.temperatures[1:])):
            raise ValueError("temperatures must be strictly increasing")
        if any(v < 0 for v in self.values):
            raise ValueError("negativities must be non-negative")

    def first_zero(self) -> float | None:
        """Smallest sampled temperature with zero negativity."""
        for t, v in zip(self.temperatures, self.values):
            if v == 0.0:
                return t
        return None

    def is_non_increasing(self, slack: float = 0.0) -> bool:
        return all(b <= a + slack for a, b in zip(self.values, self.values[1:]))


def negativity_sweep(g: Graph, p: Bipartition, t_grid: Sequence[float], jobs: int = 1,
                     reduce: bool = True, max_qubits: int = DEFAULT_MAX_QUBITS) -> NegativityCurve:
    """Negativity across ``p`` at every temperature of ``t_grid``.

    Grid points are independent; with ``jobs > 1`` they run on a thread
    pool, and the output order always follows the grid.
    """
    temps = tuple(float(t) for t in t_grid)
    p.check_against(g)
    rp = boundary_reduce(g, p) if reduce else None
    if rp is not None and not rp.disconnected and rp.n > max_qubits:
        raise CapExceededError(f"boundary system has {rp.n} qubits, cap is {max_qubits}")
    if not reduce:
        densop.check_cap(g.n, max_qubits)

    def one(t: float) -> float:
        return reduced_negativity(g, p, t, max_qubits, reduce, rp)

    if jobs > 1 and len(temps) > 1:
        with ThreadPoolExecutor(max_workers=jobs) as pool:
            values = tuple(pool.map(one, temps))
    else:
        values = tuple(one(t) for t in temps)
    return NegativityCurve(temps, values, g.digest()[:16], p.describe(), reduce)


@dataclass(frozen=True)
class BoundWindowReport:
    """Temperature window ``[t_lo, t_hi)`` of nondistillable yet entangled states.

    ``t_lo`` is the nondistillability threshold: above it every probed
    contiguous cut has zero negativity. ``t_hi`` is the largest critical
    temperature among the probed single-site partitions.
    ``sites_below_t_lo`` lists single-site probes whose own threshold does
    not exceed ``t_lo``.
    """

    t_lo: float
    t_hi: float
    lo_witness: str | None
    hi_witness: str | None
    cut_temperatures: dict[str, float | None] = field(default_factory=dict)
    site_temperatures: dict[str, float | None] = field(default_factory=dict)
    sites_below_t_lo: tuple[str, ...] = ()

    @property
    def nonempty(self) -> bool:
        return self.t_hi > self.t_lo

    def to_dict(self) -> dict:
        out = asdict(self)
        out["sites_below_t_lo"] = list(self.sites_below_t_lo)
        out["nonempty"] = self.nonempty
        out["t_lo_label"] = "nondistillability threshold"
        return out


def cut_critical_temperature(g: Graph, p: Bipartition, max_qubits: int = DEFAULT_MAX_QUBITS,
                             **numeric_kw) -> CriticalTemperature | None:
    """Separability temperature of a contiguous cut, or ``None`` if disconnected.

    When the crossing edges form a matching, the boundary state is a product
    of independent thermal pairs and the cut becomes PPT exactly when every
    pair does, so the largest pair root is returned. Other boundaries fall
    back to the numeric negativity solver.
    """
    rp = boundary_reduce(g, p)
    if rp.disconnected:
        return None
    rg = rp.reduced_graph
    if all(d == 1 for d in rg.degrees()):
        best = max((critical_temperature_pair(rg.couplings[i], rg.couplings[j]) for i, j in rg.edges),
                   key=lambda c: c.value)
        return best
    return critical_temperature_numeric(rg, rp.reduced_partition, max_qubits=max_qubits, **numeric_kw)


def bound_entanglement_window(g: Graph, probe_cuts: Sequence[Bipartition], probe_sites: Sequence[Bipartition],
                              max_qubits: int = DEFAULT_MAX_QUBITS, jobs: int = 1,
                              **numeric_kw) -> BoundWindowReport:
    if not probe_cuts or not probe_sites:
        raise ValueError("window needs at least one cut probe and one site probe")

    cut_t: dict[str, float | None] = {}
    for p in probe_cuts:
        ct = cut_critical_temperature(g, p, max_qubits, **numeric_kw)
        cut_t[p.describe()] = None if ct is None else ct.value

    def site(p: Bipartition) -> float | None:
        try:
            return critical_temperature_numeric(g, p, max_qubits=max_qubits, **numeric_kw).value
        except NoEntanglementError:
            return None

    if jobs > 1:
        with ThreadPoolExecutor(max_workers=jobs) as pool:
            site_vals = list(pool.map(site, probe_sites))
    else:
        site_vals = [site(p) for p in probe_sites]
    site_t = {p.describe(): v for p, v in zip(probe_sites, site_vals)}

    lo_witness = _argmax(cut_t)
    hi_witness = _argmax(site_t)
    t_lo = cut_t[lo_witness] if lo_witness is not None else 0.0
    t_hi = site_t[hi_witness] if hi_witness is not None else 0.0
    below = tuple(k for k, v in site_t.items() if v is None or v <= t_lo)
    return BoundWindowReport(t_lo, t_hi, lo_witness, hi_witness, cut_t, site_t, below)


def _argmax(values: dict[str, float | None]) -> str | None:
    best = None
    for k, v in values.items():
        if v is not None and (best is None or v > values[best]):
            best = k
    return best

