"""Annihilating-ideal graphs, zero-divisor graphs and subgraph witnesses.

A witness is a complete or complete bipartite subgraph found from ideal
identities (I^2 = 0, or IJ = 0).  Its genus is known in closed form, so it
certifies a lower bound for the genus of the host graph.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from typing import Optional, Sequence, Union

import numpy as np

from .genus import GenusHint, genus_complete, genus_complete_bipartite
from .graph import Graph
from .ideals import (
    Ideal,
    IdealLattice,
    LocalStructure,
    ideal_product,
    ideal_sum,
    principal_ideal,
)
from .rings import FiniteRing, zero_divisors

__all__ = [
    "build_ag",
    "build_zdg",
    "GraphTooLarge",
    "MAX_AG_VERTICES",
    "ag_vertex_ids",
    "lemma21_vertex_check",
    "SubgraphWitness",
    "WitnessError",
    "HypothesisNotMet",
    "square_zero_clique_witnesses",
    "zero_product_bipartite_witnesses",
    "lemma28_witness",
    "genus_lower_from_witnesses",
    "export_graph",
]


def ag_vertex_ids(L: IdealLattice) -> list:
    """Lattice ids of the nonzero ideals with nonzero annihilator."""
    return [k for k, I in enumerate(L.ideals) if not I.is_zero and not L.annihilator(I).is_zero]


MAX_AG_VERTICES = 8192  # the adjacency matrix is dense


class GraphTooLarge(ValueError):
    pass


def build_ag(R: FiniteRing, L: IdealLattice, max_vertices: int = MAX_AG_VERTICES) -> Graph:
    """AG(R): nonzero ideals with nonzero annihilator; I ~ J iff I != J and IJ = 0.

    IJ = 0 exactly when I lies inside Ann(J), so edges come straight from the
    containment relation.  Raises :class:`GraphTooLarge` above ``max_vertices``;
    witnesses can still be checked against the lattice in that case.
    """
    if L.ring.uid != R.uid:
        raise ValueError("lattice belongs to a different ring")
    verts = ag_vertex_ids(L)
    if len(verts) > max_vertices:
        raise GraphTooLarge(f"AG(R) has {len(verts)} vertices, above the limit of {max_vertices}")
    ann = [L.id_of(L.annihilator(L.ideals[k])) for k in verts]
    A = np.stack([L.column(a)[verts] for a in ann], axis=1) if verts else np.zeros((0, 0), bool)
    np.fill_diagonal(A, False)
    return Graph(A, tuple(verts), tuple(L.label(L.ideals[k]) for k in verts), "AG")


def build_zdg(R: FiniteRing) -> Graph:
    """Zero-divisor graph on Z(R) minus 0; x ~ y iff x != y and xy = 0."""
    zd = zero_divisors(R)
    A = R.mul[np.ix_(zd, zd)] == R.zero
    if len(zd):
        np.fill_diagonal(A, False)
    return Graph(A, tuple(zd), tuple(R.element_names[a] for a in zd), "ZDG")


def lemma21_vertex_check(R: FiniteRing, L: IdealLattice, G: Optional[Graph] = None) -> bool:
    """Every nonzero proper ideal is an AG vertex, and nothing else is.

    With ``G`` the graph's vertex set is compared; without it the vertex
    criterion (nonzero annihilator) is evaluated on the lattice directly,
    which avoids materialising the edge set of very large lattices.
    """
    proper = [k for k, I in enumerate(L.ideals) if not I.is_zero and not I.is_unit]
    verts = list(G.vertex_labels) if G is not None else ag_vertex_ids(L)
    return sorted(verts) == proper


class WitnessError(ValueError):
    """A claimed witness is not a subgraph of its host."""


@dataclass(frozen=True)
class SubgraphWitness:
    """A K_n (``parts`` has one list) or K_{m,n} (two disjoint lists).

    Vertices are lattice ideal ids, or positions in ``vertex_ideals`` for
    witnesses built without a lattice.  ``certificate`` names the ideals in
    the identity that forces the edges: ``(I,)`` with I^2 = 0 or ``(I, J)``
    with IJ = 0.  Construct through :meth:`verified`, which checks every
    claimed edge against the host: a graph, a lattice, or the ideal list.
    """

    shape: tuple  # ("complete", n) | ("bipartite", m, n)
    parts: tuple
    certificate: tuple
    vertex_ideals: tuple = field(default=(), compare=False, repr=False)

    @classmethod
    def verified(cls, host: Union[Graph, IdealLattice, Sequence[Ideal]], parts, certificate) -> "SubgraphWitness":
        parts = tuple(tuple(int(x) for x in p) for p in parts)
        if len(parts) == 1:
            shape = ("complete", len(parts[0]))
        elif len(parts) == 2:
            shape = ("bipartite", len(parts[0]), len(parts[1]))
        else:
            raise WitnessError("a witness has one or two parts")
        listed = tuple(host) if not isinstance(host, (Graph, IdealLattice)) else ()
        w = cls(shape, parts, tuple(int(c) for c in certificate), listed)
        w.check(host)
        return w

    def edges(self) -> list:
        if self.shape[0] == "complete":
            p = self.parts[0]
            return [(p[i], p[j]) for i in range(len(p)) for j in range(i + 1, len(p))]
        return [(a, b) for a in self.parts[0] for b in self.parts[1]]

    def check(self, host) -> None:
        for p in self.parts:
            if len(set(p)) != len(p):
                raise WitnessError("repeated vertex in a part")
        if len(self.parts) == 2 and set(self.parts[0]) & set(self.parts[1]):
            raise WitnessError("bipartite parts overlap")
        if isinstance(host, Graph):
            idx = host.index
            for a, b in self.edges():
                if a not in idx or b not in idx or not host.has_edge(idx[a], idx[b]):
                    raise WitnessError(f"edge {a}-{b} missing from host graph")
        else:
            ideals = host.ideals if isinstance(host, IdealLattice) else list(host)
            for a, b in self.edges():
                I, J = ideals[a], ideals[b]
                if I.is_zero or J.is_zero or not ideal_product(I, J).is_zero:
                    raise WitnessError(f"ideals {a} and {b} do not multiply to zero")

    @property
    def genus_bound(self) -> int:
        if self.shape[0] == "complete":
            n = self.shape[1]
            return genus_complete(n) if n >= 1 else 0
        m, n = self.shape[1], self.shape[2]
        return genus_complete_bipartite(m, n) if m and n else 0

    def name(self) -> str:
        if self.shape[0] == "complete":
            return f"K{self.shape[1]}"
        return f"K{self.shape[1]},{self.shape[2]}"

    def hint(self, G: Graph) -> GenusHint:
        """The witness as a genus hint in ``G``'s vertex numbering."""
        idx = G.index
        verts = tuple(sorted(idx[v] for p in self.parts for v in p))
        return GenusHint(verts, self.genus_bound, f"{self.name()} witness")

    def summary(self, L: Optional[IdealLattice] = None) -> dict:
        out = {"shape": self.name(), "genus_bound": self.genus_bound}
        if L is not None:
            label = lambda k: L.label(L.ideals[k])  # noqa: E731
        elif self.vertex_ideals:
            label = lambda k: self.vertex_ideals[k].label()  # noqa: E731
        else:
            return out
        out["parts"] = [[label(k) for k in p] for p in self.parts]
        out["certificate"] = [label(k) for k in self.certificate]
        return out


def _nonzero_inside(L: IdealLattice, k: int) -> list:
    col = L.column(k).copy()
    col[L.id_of(L.zero)] = False
    return np.flatnonzero(col).tolist()


def square_zero_clique_witnesses(L: IdealLattice, G: Graph) -> list:
    """K_n on the nonzero ideals inside each maximal square-zero ideal I (n >= 2)."""
    sq = []
    for k, I in enumerate(L.ideals):
        if not I.is_zero and I <= L.annihilator(I):
            sq.append(k)
    maximal = [k for k in sq if not any(j != k and L.ideals[k] <= L.ideals[j] for j in sq)]
    out = []
    for k in maximal:
        inside = _nonzero_inside(L, k)
        if len(inside) >= 2:
            out.append(SubgraphWitness.verified(G, [inside], [k]))
    return out


def zero_product_bipartite_witnesses(L: IdealLattice, G: Graph) -> list:
    """Pareto-maximal K_{|A|,|B|} from pairs with IJ = 0.

    A is the set of nonzero ideals inside I and B the nonzero ideals inside
    J that are not inside I.  For a fixed I, B only grows with J, and every
    J with IJ = 0 lies inside Ann(I), so J = Ann(I) dominates all other
    partners of I.  The scan therefore visits one candidate per ideal and
    yields the same Pareto front as the scan over all pairs.
    """
    cands = []
    for k, I in enumerate(L.ideals):
        if I.is_zero or I.is_unit:
            continue
        j = L.id_of(L.annihilator(I))
        if j == k or L.ideals[j].is_zero:
            continue
        A = _nonzero_inside(L, k)
        inside_i = set(A)
        B = [b for b in _nonzero_inside(L, j) if b not in inside_i]
        if len(A) >= 2 and len(B) >= 2:
            cands.append((len(A), len(B), k, j, A, B))
    cands.sort(key=lambda c: (-c[0], -c[1], c[2], c[3]))
    front = []
    seen = set()
    for a, b, k, j, A, B in cands:
        if (a, b) in seen:
            continue
        if any(a2 >= a and b2 >= b for a2, b2, *_ in front):
            continue
        seen.add((a, b))
        front.append((a, b, k, j, A, B))
    return [SubgraphWitness.verified(G, [A, B], [k, j]) for a, b, k, j, A, B in front]


@dataclass(frozen=True)
class HypothesisNotMet:
    """Why a construction does not apply."""

    reason: str

    def __bool__(self):
        return False


@dataclass(frozen=True)
class Lemma28Witness:
    witness: SubgraphWitness
    k: int
    bound: int  # k - 6
    x1: int
    x2: int

    def __bool__(self):
        return True


def _basis_mod(R: FiniteRing, members, floor: Ideal) -> list:
    """Elements whose principal ideals, added to ``floor``, span the members greedily."""
    span = floor
    basis = []
    for x in members:
        x = int(x)
        if x not in span:
            span = ideal_sum(span, principal_ideal(R, x))
            basis.append(x)
    return basis


def lemma28_witness(R: FiniteRing, L: Optional[IdealLattice], S) -> Union[Lemma28Witness, HypothesisNotMet]:
    """K_{3, r} with parts {Rx1, Rx2, m^2} and {Rw_1, ..., Rw_r}.

    Hypotheses: local, Gorenstein, m^2 != 0, m^3 = 0 and k = v.dim m/m^2 > 6.
    x1, x2 run over a basis of m modulo m^2 and the w_i over a basis of
    (Ann(x1) cap Ann(x2)) modulo m^2, skipping any Rw_i already in the first
    part.  The first pair reaching r >= k - 6 is used, else the best pair.
    With ``L`` the vertices are lattice ids; with ``L = None`` they index
    ``witness.vertex_ideals`` and the edges are checked by ideal products.
    """
    if not isinstance(S, LocalStructure):
        return HypothesisNotMet("ring is not local")
    if not S.gorenstein or S.is_field:
        return HypothesisNotMet("ring is not Gorenstein" if not S.is_field else "ring is a field")
    if S.t != 2:
        return HypothesisNotMet("m^2 = (0)" if S.t < 2 else "m^3 != (0)")
    k = S.embedding_dim
    if k <= 6:
        return HypothesisNotMet(f"v.dim m/m^2 = {k} <= 6")
    m, m2 = S.powers[1], S.powers[2]
    basis = _basis_mod(R, m.members, m2)
    need = k - 6
    pool = []  # lattice-free vertex list

    def vid(I: Ideal) -> int:
        if L is not None:
            return L.id_of(I)
        if I not in pool:
            pool.append(I)
        return pool.index(I)

    best = None
    for a in range(len(basis)):
        for b in range(a + 1, len(basis)):
            x1, x2 = basis[a], basis[b]
            w_bits = (R.mul[x1] == R.zero) & (R.mul[x2] == R.zero)
            W = np.flatnonzero(w_bits)
            first = [vid(principal_ideal(R, x1)), vid(principal_ideal(R, x2)), vid(m2)]
            second = []
            for w in _basis_mod(R, W, m2):
                wid = vid(principal_ideal(R, w))
                if wid not in first and wid not in second:
                    second.append(wid)
            if best is None or len(second) > len(best[1]):
                best = (first, second, x1, x2)
            if len(second) >= need:
                break
        if best is not None and len(best[1]) >= need:
            break
    if best is None or len(best[1]) < need:
        return HypothesisNotMet(f"no pair found with a second part of size >= {need}")
    first, second, x1, x2 = best
    host = L if L is not None else pool
    w = SubgraphWitness.verified(host, [first, second], [first[0], first[1]])
    return Lemma28Witness(w, k, need, x1, x2)


def genus_lower_from_witnesses(ws) -> int:
    """Largest closed-form genus among the witnesses (0 for none)."""
    return max((w.genus_bound for w in ws), default=0)


def _dot_quote(s: str) -> str:
    return '"' + s.replace("\\", "\\\\").replace('"', '\\"') + '"'


def export_graph(G: Graph, fmt: str = "dot") -> str:
    """Deterministic DOT or JSON text for ``G``."""
    if fmt == "json":
        return json.dumps(G.to_json(), sort_keys=True)
    if fmt == "dot":
        name = {"AG": "AG", "ZDG": "ZDG"}.get(G.kind, "G")
        lines = [f"graph {name} {{"]
        for v in range(G.n):
            lines.append(f"  {v} [label={_dot_quote(G.names[v])}];")
        for u, v in G.edge_list:
            lines.append(f"  {u} -- {v};")
        lines.append("}")
        return "\n".join(lines) + "\n"
    raise ValueError(f"unsupported graph format {fmt!r}; use 'dot' or 'json'")
