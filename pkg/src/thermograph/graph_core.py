"""Graphs, bipartitions and the boundary reduction.

Vertices are dense 0-based integers. A :class:`Graph` carries one strictly
positive coupling per vertex; the coupling of vertex ``i`` multiplies the
stabilizer ``X_i Z_{N(i)}`` in the graph-state Hamiltonian.

The boundary reduction keeps only the edges that cross a bipartition and
their endpoints. Every other CZ gate acts locally with respect to the cut,
and the qubits it leaves untouched end up in a product state after local
dephasing, so neither changes the negativity across the cut.
"""

from __future__ import annotations

import hashlib
import json
from collections.abc import Iterable, Sequence
from dataclasses import dataclass, field
from pathlib import Path

Edge = tuple[int, int]
Couplings = float | Sequence[float]


def _expand_couplings(n: int, couplings: Couplings) -> tuple[float, ...]:
    if isinstance(couplings, (int, float)):
        return (float(couplings),) * n
    values = tuple(float(b) for b in couplings)
    if len(values) != n:
        raise ValueError(f"expected {n} couplings, got {len(values)}")
    return values


@dataclass(frozen=True)
class Graph:
    """Undirected simple graph with per-vertex couplings.

    ``geometry`` optionally records how a generator laid the vertices out
    (``("chain",)``, ``("lattice", rows, cols)`` or ``("star",)``); it only
    drives the ``all`` partition families and is ignored by equality.
    """

    n: int
    edges: tuple[Edge, ...]
    couplings: tuple[float, ...]
    geometry: tuple | None = field(default=None, compare=False)

    def __post_init__(self) -> None:
        if self.n < 1:
            raise ValueError("graph needs at least one vertex")
        normalized = []
        for i, j in self.edges:
            i, j = int(i), int(j)
            if i == j:
                raise ValueError(f"self-loop at vertex {i}")
            if not (0 <= i < self.n and 0 <= j < self.n):
                raise ValueError(f"edge ({i}, {j}) has an endpoint outside [0, {self.n})")
            normalized.append((min(i, j), max(i, j)))
        if len(set(normalized)) != len(normalized):
            raise ValueError("duplicate edge")
        couplings = tuple(float(b) for b in self.couplings)
        if len(couplings) != self.n:
            raise ValueError(f"expected {self.n} couplings, got {len(couplings)}")
        if any(not b > 0 for b in couplings):
            raise ValueError("couplings must be strictly positive")
        object.__setattr__(self, "edges", tuple(sorted(normalized)))
        object.__setattr__(self, "couplings", couplings)

    @classmethod
    def from_edges(cls, n: int, edges: Iterable[Sequence[int]], couplings: Couplings = 1.0,
                   geometry: tuple | None = None) -> Graph:
        return cls(n, tuple((e[0], e[1]) for e in edges), _expand_couplings(n, couplings), geometry)

    def neighbors(self, i: int) -> list[int]:
        out = [b for a, b in self.edges if a == i]
        out += [a for a, b in self.edges if b == i]
        return sorted(out)

    def adjacency(self) -> list[list[int]]:
        adj: list[list[int]] = [[] for _ in range(self.n)]
        for a, b in self.edges:
            adj[a].append(b)
            adj[b].append(a)
        return [sorted(x) for x in adj]

    def degrees(self) -> list[int]:
        deg = [0] * self.n
        for a, b in self.edges:
            deg[a] += 1
            deg[b] += 1
        return deg

    def max_degree(self) -> int:
        return max(self.degrees())

    def interaction_body_count(self) -> int:
        """Largest number of spins coupled by one Hamiltonian term."""
        return self.max_degree() + 1

    def with_couplings(self, couplings: Couplings) -> Graph:
        return Graph(self.n, self.edges, _expand_couplings(self.n, couplings), self.geometry)

    def to_dict(self) -> dict:
        out = {"n": self.n, "edges": [list(e) for e in self.edges], "couplings": list(self.couplings)}
        if self.geometry is not None:
            out["geometry"] = list(self.geometry)
        return out

    @classmethod
    def from_dict(cls, data: dict) -> Graph:
        n = int(data["n"])
        geometry = tuple(data["geometry"]) if data.get("geometry") else None
        return cls.from_edges(n, data.get("edges", []), data.get("couplings", 1.0), geometry)

    def to_json(self) -> str:
        return json.dumps(self.to_dict())

    @classmethod
    def from_json(cls, text: str) -> Graph:
        return cls.from_dict(json.loads(text))

    def digest(self) -> str:
        """SHA-256 of the canonical JSON form (geometry excluded)."""
        canon = json.dumps({"n": self.n, "edges": [list(e) for e in self.edges],
                            "couplings": [repr(b) for b in self.couplings]}, sort_keys=True)
        return hashlib.sha256(canon.encode()).hexdigest()


def load_graph(path: str | Path) -> Graph:
    return Graph.from_json(Path(path).read_text())


def save_graph(g: Graph, path: str | Path) -> None:
    Path(path).write_text(json.dumps(g.to_dict(), indent=1) + "\n")


def linear_chain(n: int, couplings: Couplings = 1.0) -> Graph:
    """Open path ``0 - 1 - ... - n-1``."""
    if n < 1:
        raise ValueError("chain needs n >= 1")
    return Graph.from_edges(n, [(i, i + 1) for i in range(n - 1)], couplings, ("chain",))


def square_lattice(rows: int, cols: int, couplings: Couplings = 1.0) -> Graph:
    """Open-boundary ``rows x cols`` grid; site ``(i, j)`` has index ``i*cols + j``."""
    if rows < 1 or cols < 1:
        raise ValueError("lattice dimensions must be >= 1")
    edges = []
    for i in range(rows):
        for j in range(cols):
            v = i * cols + j
            if j + 1 < cols:
                edges.append((v, v + 1))
            if i + 1 < rows:
                edges.append((v, v + cols))
    return Graph.from_edges(rows * cols, edges, couplings, ("lattice", rows, cols))


def star_graph(k: int, couplings: Couplings = 1.0) -> Graph:
    """Hub ``0`` joined to leaves ``1..k``."""
    if k < 1:
        raise ValueError("star needs at least one leaf")
    return Graph.from_edges(k + 1, [(0, j) for j in range(1, k + 1)], couplings, ("star",))


@dataclass(frozen=True)
class Bipartition:
    """Proper, non-empty subset ``side_a`` of ``range(n)`` versus its complement."""

    side_a: frozenset[int]
    n: int
    label: str | None = field(default=None, compare=False)

    def __post_init__(self) -> None:
        side = frozenset(int(v) for v in self.side_a)
        if not side:
            raise ValueError("side A of a bipartition must be non-empty")
        if any(not 0 <= v < self.n for v in side):
            raise ValueError(f"bipartition vertex outside [0, {self.n})")
        if len(side) == self.n:
            raise ValueError("side A must be a proper subset")
        object.__setattr__(self, "side_a", side)

    @property
    def side_b(self) -> frozenset[int]:
        return frozenset(range(self.n)) - self.side_a

    def describe(self) -> str:
        if self.label:
            return self.label
        return "set:" + ",".join(str(v) for v in sorted(self.side_a))

    def check_against(self, g: Graph) -> None:
        if self.n != g.n:
            raise ValueError(f"bipartition is over {self.n} vertices but graph has {g.n}")


def contiguous_cut(n: int, i: int) -> Bipartition:
    """Sites ``0..i`` versus ``i+1..n-1``."""
    if not 0 <= i < n - 1:
        raise ValueError(f"cut position {i} outside [0, {n - 1})")
    return Bipartition(frozenset(range(i + 1)), n, f"cut:{i}")


def single_site_partition(n: int, i: int) -> Bipartition:
    if n < 2:
        raise ValueError("no proper bipartition exists for a single vertex")
    if not 0 <= i < n:
        raise ValueError(f"site {i} outside [0, {n})")
    return Bipartition(frozenset({i}), n, f"site:{i}")


def even_odd_partition(n: int) -> Bipartition:
    if n < 2:
        raise ValueError("even-odd partition needs n >= 2")
    return Bipartition(frozenset(range(0, n, 2)), n, "even-odd")


def column_cut(rows: int, cols: int, c: int) -> Bipartition:
    """Columns ``0..c`` of a square lattice versus the rest."""
    if not 0 <= c < cols - 1:
        raise ValueError(f"column cut {c} outside [0, {cols - 1})")
    side = {i * cols + j for i in range(rows) for j in range(c + 1)}
    return Bipartition(frozenset(side), rows * cols, f"vcut:{c}")


def row_cut(rows: int, cols: int, r: int) -> Bipartition:
    """Rows ``0..r`` of a square lattice versus the rest."""
    if not 0 <= r < rows - 1:
        raise ValueError(f"row cut {r} outside [0, {rows - 1})")
    side = {i * cols + j for i in range(r + 1) for j in range(cols)}
    return Bipartition(frozenset(side), rows * cols, f"hcut:{r}")


def parse_partition(spec: str, g: Graph) -> Bipartition:
    """Parse ``cut:<i>``, ``site:<i>``, ``even-odd``, ``set:<i,j,...>``,
    ``vcut:<c>`` or ``hcut:<r>`` against graph ``g``."""
    spec = spec.strip()
    if spec == "even-odd":
        return even_odd_partition(g.n)
    kind, sep, arg = spec.partition(":")
    if not sep:
        raise ValueError(f"malformed partition spec {spec!r}")
    try:
        if kind == "cut":
            return contiguous_cut(g.n, int(arg))
        if kind == "site":
            return single_site_partition(g.n, int(arg))
        if kind == "set":
            members = frozenset(int(v) for v in arg.split(",") if v.strip())
            return Bipartition(members, g.n)
        if kind in ("vcut", "hcut"):
            if not g.geometry or g.geometry[0] != "lattice":
                raise ValueError(f"{kind} needs a lattice graph")
            _, rows, cols = g.geometry
            fn = column_cut if kind == "vcut" else row_cut
            return fn(rows, cols, int(arg))
    except ValueError as exc:
        raise ValueError(f"bad partition spec {spec!r}: {exc}") from None
    raise ValueError(f"unknown partition kind {kind!r}")


def all_contiguous_cuts(g: Graph) -> list[Bipartition]:
    """Contiguous-block cuts: column and row slices for lattices, index cuts otherwise."""
    if g.geometry and g.geometry[0] == "lattice":
        _, rows, cols = g.geometry
        return ([column_cut(rows, cols, c) for c in range(cols - 1)]
                + [row_cut(rows, cols, r) for r in range(rows - 1)])
    return [contiguous_cut(g.n, i) for i in range(g.n - 1)]


def interior_sites(g: Graph) -> list[Bipartition]:
    """Single-site partitions for sites away from the open boundary.

    Lattices use the strict interior, chains drop both ends, stars use the
    hub. Graphs without a recorded geometry use every vertex of degree >= 2.
    """
    kind = g.geometry[0] if g.geometry else None
    if kind == "lattice":
        _, rows, cols = g.geometry
        sites = [i * cols + j for i in range(1, rows - 1) for j in range(1, cols - 1)]
    elif kind == "chain":
        sites = list(range(1, g.n - 1))
    elif kind == "star":
        sites = [0]
    else:
        sites = [v for v, d in enumerate(g.degrees()) if d >= 2]
    if not sites:
        # tiny graphs have no interior; fall back to every site
        sites = list(range(g.n)) if g.n >= 2 else []
    return [single_site_partition(g.n, v) for v in sites]


def crossing_edges(g: Graph, p: Bipartition) -> list[Edge]:
    p.check_against(g)
    a = p.side_a
    return [(i, j) for i, j in g.edges if (i in a) != (j in a)]


@dataclass(frozen=True)
class ReducedProblem:
    """Boundary system of a (graph, bipartition) pair.

    When no edge crosses the cut, ``reduced_graph`` and ``reduced_partition``
    are ``None`` and :attr:`disconnected` is true: the state is a product
    across the cut.
    """

    reduced_graph: Graph | None
    reduced_partition: Bipartition | None
    index_map: tuple[int, ...]

    @property
    def disconnected(self) -> bool:
        return self.reduced_graph is None

    @property
    def n(self) -> int:
        return len(self.index_map)


def boundary_reduce(g: Graph, p: Bipartition) -> ReducedProblem:
    cross = crossing_edges(g, p)
    if not cross:
        return ReducedProblem(None, None, ())
    keep = sorted({v for e in cross for v in e})
    local = {v: k for k, v in enumerate(keep)}
    graph = Graph.from_edges(len(keep), [(local[i], local[j]) for i, j in cross],
                             [g.couplings[v] for v in keep])
    side = frozenset(local[v] for v in keep if v in p.side_a)
    return ReducedProblem(graph, Bipartition(side, len(keep), p.label), tuple(keep))
