"""Simple undirected graphs shared by the AG builder and the genus engine."""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterable, Optional

import networkx as nx
import numpy as np

__all__ = ["Graph", "GraphError", "graph_from_json", "complete_graph", "complete_bipartite_graph"]


class GraphError(ValueError):
    pass


@dataclass(frozen=True, eq=False)
class Graph:
    """Vertices are ``0..n-1``.  ``vertex_labels[i]`` is the external id of
    vertex ``i`` (a lattice ideal id for AG graphs, an element index for
    zero-divisor graphs) and ``names[i]`` its display string."""

    adjacency: np.ndarray = field(repr=False)
    vertex_labels: tuple = ()
    names: tuple = field(default=(), repr=False)
    kind: str = "plain"  # AG | ZDG | plain

    def __post_init__(self):
        A = np.asarray(self.adjacency, dtype=bool)
        if A.ndim != 2 or A.shape[0] != A.shape[1]:
            raise GraphError("adjacency must be square")
        if A.diagonal().any():
            raise GraphError("loops are not allowed")
        if not np.array_equal(A, A.T):
            raise GraphError("adjacency must be symmetric")
        A = A.copy()
        A.setflags(write=False)
        object.__setattr__(self, "adjacency", A)
        n = A.shape[0]
        if not self.vertex_labels:
            object.__setattr__(self, "vertex_labels", tuple(range(n)))
        if not self.names:
            object.__setattr__(self, "names", tuple(str(v) for v in self.vertex_labels))
        if len(self.vertex_labels) != n or len(self.names) != n:
            raise GraphError("label count does not match vertex count")

    @classmethod
    def from_edges(cls, n: int, edges: Iterable, kind: str = "plain", vertex_labels=(), names=()):
        A = np.zeros((n, n), dtype=bool)
        for u, v in edges:
            if not (0 <= u < n and 0 <= v < n):
                raise GraphError(f"edge ({u}, {v}) out of range for {n} vertices")
            if u == v:
                raise GraphError(f"loop at vertex {u}")
            A[u, v] = A[v, u] = True
        return cls(A, tuple(vertex_labels), tuple(names), kind)

    @property
    def n(self) -> int:
        return self.adjacency.shape[0]

    @cached_property
    def edge_list(self) -> tuple:
        iu, ju = np.nonzero(np.triu(self.adjacency, 1))
        return tuple(zip(iu.tolist(), ju.tolist()))

    def edges(self) -> list:
        return list(self.edge_list)

    @property
    def edge_count(self) -> int:
        return len(self.edge_list)

    @cached_property
    def _nbrs(self) -> tuple:
        return tuple(tuple(np.flatnonzero(row).tolist()) for row in self.adjacency)

    def neighbors(self, v: int) -> tuple:
        return self._nbrs[v]

    def degree(self, v: int) -> int:
        return len(self._nbrs[v])

    def has_edge(self, u: int, v: int) -> bool:
        return bool(self.adjacency[u, v])

    @cached_property
    def index(self) -> dict:
        """External id to vertex position."""
        return {lab: i for i, lab in enumerate(self.vertex_labels)}

    def induced(self, vertices) -> "Graph":
        vs = list(vertices)
        return Graph(self.adjacency[np.ix_(vs, vs)], tuple(self.vertex_labels[v] for v in vs),
                     tuple(self.names[v] for v in vs), self.kind)

    def to_networkx(self) -> nx.Graph:
        g = nx.Graph()
        g.add_nodes_from(range(self.n))
        g.add_edges_from(self.edge_list)
        return g

    def is_complete(self) -> bool:
        return self.edge_count == self.n * (self.n - 1) // 2

    def to_json(self) -> dict:
        return {
            "schema": 1,
            "kind": self.kind,
            "vertices": list(range(self.n)),
            "labels": list(self.names),
            "edges": [list(e) for e in self.edge_list],
        }


def graph_from_json(doc) -> Graph:
    """Accept the exported JSON form (a dict or a JSON string).

    ``vertices`` must be ``0..n-1``; ``labels`` is optional.
    """
    if isinstance(doc, (str, bytes)):
        doc = json.loads(doc)
    try:
        verts = list(doc["vertices"])
        edges = [tuple(e) for e in doc["edges"]]
    except (KeyError, TypeError) as exc:
        raise GraphError(f"graph JSON needs 'vertices' and 'edges': {exc}") from None
    if verts != list(range(len(verts))):
        raise GraphError("vertices must be the integers 0..n-1 in order")
    for e in edges:
        if len(e) != 2 or not all(isinstance(x, int) for x in e):
            raise GraphError(f"malformed edge {e!r}")
    labels = tuple(doc.get("labels") or ())
    return Graph.from_edges(len(verts), edges, kind=doc.get("kind", "plain"), names=labels)


def complete_graph(n: int) -> Graph:
    A = ~np.eye(n, dtype=bool)
    return Graph(A)


def complete_bipartite_graph(m: int, n: int) -> Graph:
    A = np.zeros((m + n, m + n), dtype=bool)
    A[:m, m:] = True
    A[m:, :m] = True
    return Graph(A)
