"""Graphs and clutters as exponent matrices."""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass

from .errors import TheoremViolation
from .field import FieldSpec
from .length import LengthCertificate
from .toric import ExponentMatrix


@dataclass(frozen=True)
class Clutter:
    """Edges are sets of 0-indexed vertices; no edge may contain another."""

    vertex_count: int
    edges: tuple[frozenset[int], ...]

    def __post_init__(self):
        edges = tuple(frozenset(e) for e in self.edges)
        object.__setattr__(self, "edges", edges)
        if self.vertex_count < 1:
            raise ValueError("a clutter needs at least one vertex")
        for i, e in enumerate(edges):
            if not e:
                raise ValueError(f"edge {i + 1} is empty")
            bad = [v + 1 for v in e if not 0 <= v < self.vertex_count]
            if bad:
                raise ValueError(f"edge {i + 1} uses unknown vertices {sorted(bad)}")
        for i, e in enumerate(edges):
            for j, f in enumerate(edges):
                if i < j and e == f:
                    raise ValueError(f"edges {i + 1} and {j + 1} coincide")
                if i != j and e < f:
                    raise ValueError(f"edge {i + 1} is contained in edge {j + 1}")

    @classmethod
    def from_one_indexed(cls, vertex_count: int, edges) -> Clutter:
        return cls(vertex_count, tuple(frozenset(v - 1 for v in e) for e in edges))

    @property
    def is_graph(self) -> bool:
        return all(len(e) == 2 for e in self.edges)

    @property
    def uniform_size(self) -> int | None:
        sizes = {len(e) for e in self.edges}
        return sizes.pop() if len(sizes) == 1 else None


def graph(vertex_count: int, edges) -> Clutter:
    """A simple graph from 1-indexed vertex pairs."""
    for e in edges:
        if len(e) != 2 or e[0] == e[1]:
            raise ValueError(f"not a simple edge: {tuple(e)}")
    return Clutter.from_one_indexed(vertex_count, edges)


def incidence_columns(C: Clutter) -> list[tuple[int, ...]]:
    """Characteristic vector of each edge, in edge order."""
    return [tuple(1 if v in e else 0 for v in range(C.vertex_count)) for e in C.edges]


def incidence_matrix(C: Clutter) -> ExponentMatrix:
    """Exponent matrix with one column per edge (needs at least two edges)."""
    return ExponentMatrix.from_columns(incidence_columns(C))


@dataclass(frozen=True)
class GraphProvenance:
    connected: bool
    bipartite: bool
    vertex_count: int
    edge_count: int


def classify_graph(C: Clutter) -> GraphProvenance:
    """Connectivity by breadth-first search, bipartiteness by 2-coloring."""
    if not C.is_graph:
        raise ValueError("classify_graph needs every edge to have two vertices")
    adj = [[] for _ in range(C.vertex_count)]
    for e in C.edges:
        u, v = sorted(e)
        adj[u].append(v)
        adj[v].append(u)
    color = [-1] * C.vertex_count
    bipartite = True
    components = 0
    for s in range(C.vertex_count):
        if color[s] >= 0:
            continue
        components += 1
        color[s] = 0
        queue = deque([s])
        while queue:
            u = queue.popleft()
            for v in adj[u]:
                if color[v] < 0:
                    color[v] = 1 - color[u]
                    queue.append(v)
                elif color[v] == color[u]:
                    bipartite = False
    return GraphProvenance(components == 1, bipartite, C.vertex_count, len(C.edges))


def uniformity(A: ExponentMatrix) -> int | None:
    return A.alpha


def disconnected_strict_check(C: Clutter, F: FieldSpec, cert: LengthCertificate) -> bool:
    """``|X| < (q-1)^(n-1)`` for a disconnected graph over a field of odd order."""
    prov = classify_graph(C)
    if prov.connected:
        raise ValueError("graph is connected")
    if F.q % 2 == 0:
        raise ValueError("needs odd q")
    bound = (F.q - 1) ** (C.vertex_count - 1)
    if not cert.x_size < bound:
        raise TheoremViolation(f"|X|={cert.x_size} is not below {bound}")
    return True
