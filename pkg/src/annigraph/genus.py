"""Orientable genus of simple graphs.

An embedding is described by a rotation system: a cyclic order of the
neighbours around each vertex.  Faces are the orbits of the dart map
``(u, v) -> (v, w)`` where ``w`` follows ``u`` in the rotation at ``v``, and
a connected graph embedded with ``F`` faces has genus ``(2 - V + E - F) / 2``.

Exact genus is found block by block (genus is additive over connected
components and over biconnected blocks).  For each non-planar block the
engine first looks for a good embedding by local search, then runs a
branch-and-bound that builds faces one at a time and prunes a partial
rotation system as soon as the faces still obtainable cannot reach the
target count.
"""

from __future__ import annotations

import os
import random
import sys
import time
from dataclasses import dataclass, field
from typing import Iterable, Optional, Sequence

import networkx as nx

from .graph import Graph

__all__ = [
    "DEFAULT_BUDGET_MS",
    "budget_from_env",
    "genus_complete",
    "genus_complete_bipartite",
    "euler_lower_bound",
    "girth",
    "RotationSystem",
    "RotationError",
    "trace_faces",
    "face_walks",
    "embedding_genus",
    "KuratowskiCertificate",
    "PlanarityResult",
    "is_planar",
    "genus_upper_search",
    "GenusHint",
    "GenusResult",
    "genus_exact",
]

DEFAULT_BUDGET_MS = 60_000


def budget_from_env(default: int = DEFAULT_BUDGET_MS) -> int:
    """Per-graph budget in ms, overridable with ``ANNIGRAPH_BUDGET_MS``."""
    raw = os.environ.get("ANNIGRAPH_BUDGET_MS")
    if raw is None or not raw.strip():
        return default
    try:
        value = int(raw)
    except ValueError:
        raise ValueError(f"ANNIGRAPH_BUDGET_MS must be an integer, got {raw!r}") from None
    if value < 0:
        raise ValueError("ANNIGRAPH_BUDGET_MS must be >= 0")
    return value


def _ceil_div(a: int, b: int) -> int:
    return -(-a // b)


def genus_complete(n: int) -> int:
    """Genus of K_n: ceil((n-3)(n-4)/12) for n >= 3, else 0."""
    if n < 1:
        raise ValueError("n must be >= 1")
    if n < 3:
        return 0
    return _ceil_div((n - 3) * (n - 4), 12)


def genus_complete_bipartite(m: int, n: int) -> int:
    """Genus of K_{m,n}: ceil((m-2)(n-2)/4) for m, n >= 2, else 0."""
    if m < 1 or n < 1:
        raise ValueError("part sizes must be >= 1")
    if min(m, n) < 2:
        return 0
    return _ceil_div((m - 2) * (n - 2), 4)


# --------------------------------------------------------------------------
# Euler bounds
# --------------------------------------------------------------------------


def _adjacency_lists(G: Graph) -> list:
    return [list(G.neighbors(v)) for v in range(G.n)]


def girth(nbrs: Sequence[Sequence[int]]) -> Optional[int]:
    """Length of a shortest cycle, or None for a forest."""
    best = None
    n = len(nbrs)
    for s in range(n):
        dist = {s: 0}
        parent = {s: -1}
        queue = [s]
        head = 0
        while head < len(queue):
            u = queue[head]
            head += 1
            if best is not None and 2 * dist[u] + 1 >= best:
                break
            for w in nbrs[u]:
                if w not in dist:
                    dist[w] = dist[u] + 1
                    parent[w] = u
                    queue.append(w)
                elif parent[u] != w:
                    cyc = dist[u] + dist[w] + 1
                    if best is None or cyc < best:
                        best = cyc
    return best


def _euler_bound(v: int, e: int, min_face: int) -> int:
    """Least g with some F <= 2E/min_face satisfying V - E + F = 2 - 2g."""
    if v < 3 or e < 1:
        return 0
    # F <= 2E/f  =>  g >= (E(f-2)/f - V + 2)/2 = (E(f-2) - f(V-2)) / 2f
    f = min_face
    return max(0, _ceil_div(e * (f - 2) - f * (v - 2), 2 * f))


def _component_bound(nbrs, verts) -> int:
    vset = set(verts)
    sub = [[w for w in nbrs[v] if w in vset] for v in verts]
    pos = {v: i for i, v in enumerate(verts)}
    sub = [[pos[w] for w in ws] for ws in sub]
    e = sum(len(ws) for ws in sub) // 2
    g = girth(sub)
    min_face = 4 if g is not None and g >= 4 else 3
    return _euler_bound(len(verts), e, min_face)


def euler_lower_bound(G: Graph) -> int:
    """Sum over connected components of the Euler-formula bound.

    Components with no triangle use faces of length >= 4.
    """
    nbrs = _adjacency_lists(G)
    return sum(_component_bound(nbrs, sorted(c)) for c in nx.connected_components(G.to_networkx()))


# --------------------------------------------------------------------------
# rotation systems and face tracing
# --------------------------------------------------------------------------


class RotationError(ValueError):
    """A rotation system that does not match its graph."""


@dataclass(frozen=True)
class RotationSystem:
    """``order[v]`` is the cyclic order of the neighbours of ``v``."""

    order: tuple

    @classmethod
    def of(cls, lists) -> "RotationSystem":
        return cls(tuple(tuple(int(x) for x in row) for row in lists))

    def validate(self, G: Graph) -> None:
        if len(self.order) != G.n:
            raise RotationError(f"rotation covers {len(self.order)} vertices, graph has {G.n}")
        for v, row in enumerate(self.order):
            if sorted(row) != sorted(G.neighbors(v)) or len(set(row)) != len(row):
                raise RotationError(f"rotation at vertex {v} is not a permutation of its neighbours")

    def to_json(self) -> list:
        return [list(r) for r in self.order]


def face_walks(G: Graph, rot: RotationSystem) -> list:
    """Faces as lists of darts ``(u, v)``; an isolated vertex is one empty face."""
    rot.validate(G)
    nxt = []
    for v, row in enumerate(rot.order):
        d = len(row)
        nxt.append({row[k]: row[(k + 1) % d] for k in range(d)})
    seen = set()
    faces = []
    for u in range(G.n):
        if not rot.order[u]:
            faces.append([])
            continue
        for v in rot.order[u]:
            if (u, v) in seen:
                continue
            face = []
            a, b = u, v
            while (a, b) not in seen:
                seen.add((a, b))
                face.append((a, b))
                a, b = b, nxt[b][a]
            faces.append(face)
    return faces


def trace_faces(G: Graph, rot: RotationSystem) -> int:
    """Number of faces of the embedding given by ``rot``."""
    return len(face_walks(G, rot))


def embedding_genus(G: Graph, rot: RotationSystem) -> int:
    """Genus of the embedding, summed over connected components."""
    c = nx.number_connected_components(G.to_networkx())
    twice = 2 * c - G.n + G.edge_count - trace_faces(G, rot)
    assert twice >= 0 and twice % 2 == 0, twice
    return twice // 2


# --------------------------------------------------------------------------
# planarity
# --------------------------------------------------------------------------


@dataclass(frozen=True)
class KuratowskiCertificate:
    """A subdivision of K5 or K3,3 inside the graph.

    ``branch`` holds the five branch vertices (K5) or the two sides of three
    (K3,3); ``edges`` is the full edge set of the subdivision.
    """

    kind: str
    branch: tuple
    edges: tuple

    def verify(self, G: Graph) -> bool:
        if not all(G.has_edge(u, v) for u, v in self.edges):
            return False
        return _classify(self.edges) == (self.kind, self.branch)


def _classify(edges) -> tuple:
    H = nx.Graph()
    H.add_edges_from(edges)
    branch = sorted(v for v in H if H.degree(v) >= 3)
    bset = set(branch)
    contracted = nx.MultiGraph()
    contracted.add_nodes_from(branch)
    for b in branch:
        for w in H[b]:
            prev, cur = b, w
            while cur not in bset:
                step = [x for x in H[cur] if x != prev]
                if len(step) != 1:
                    raise ValueError("subgraph is not a subdivision")
                prev, cur = cur, step[0]
            if b < cur:
                contracted.add_edge(b, cur)
    simple = nx.Graph(contracted)
    if simple.number_of_edges() != contracted.number_of_edges():
        raise ValueError("subdivision has parallel branch paths")
    if len(branch) == 5 and simple.number_of_edges() == 10:
        return "K5", tuple(branch)
    if len(branch) == 6 and simple.number_of_edges() == 9 and nx.is_bipartite(simple):
        left, right = nx.bipartite.sets(simple)
        sides = sorted([tuple(sorted(left)), tuple(sorted(right))])
        if len(sides[0]) == 3:
            return "K3,3", tuple(sides)
    raise ValueError("subgraph is neither a K5 nor a K3,3 subdivision")


@dataclass(frozen=True)
class PlanarityResult:
    planar: bool
    rotation: Optional[RotationSystem] = None
    certificate: Optional[KuratowskiCertificate] = None

    def __bool__(self):
        return self.planar


def is_planar(G: Graph) -> PlanarityResult:
    """Planarity with a certificate: a genus-0 rotation system or a Kuratowski subdivision."""
    H = G.to_networkx()
    planar, cert = nx.check_planarity(H, counterexample=True)
    if planar:
        rot = RotationSystem.of([list(cert.neighbors_cw_order(v)) if H.degree(v) else [] for v in range(G.n)])
        assert embedding_genus(G, rot) == 0
        return PlanarityResult(True, rotation=rot)
    edges = tuple(sorted(tuple(sorted(e)) for e in cert.edges()))
    kind, branch = _classify(edges)
    return PlanarityResult(False, certificate=KuratowskiCertificate(kind, branch, edges))


# --------------------------------------------------------------------------
# search machinery on one connected piece
# --------------------------------------------------------------------------


class _Timeout(Exception):
    pass


class _Piece:
    """A connected graph on local vertices 0..n-1 with dart bookkeeping.

    Dart ``out[v][k]`` leaves ``v`` towards its k-th neighbour; ``rev`` maps a
    dart to its reverse and ``slot`` gives the position of a dart's tail in
    the neighbour list of its head (``outslot`` the position of its head in
    the neighbour list of its tail).
    """

    def __init__(self, nbrs):
        self.nbrs = [list(ws) for ws in nbrs]
        self.n = len(nbrs)
        self.out = []
        tail, head = [], []
        for v, ws in enumerate(self.nbrs):
            row = []
            for w in ws:
                row.append(len(tail))
                tail.append(v)
                head.append(w)
            self.out.append(row)
        self.tail, self.head = tail, head
        self.ndarts = len(tail)
        self.e = self.ndarts // 2
        pos = [{w: k for k, w in enumerate(ws)} for ws in self.nbrs]
        self.rev = [self.out[head[d]][pos[head[d]][tail[d]]] for d in range(self.ndarts)]
        self.slot = [pos[head[d]][tail[d]] for d in range(self.ndarts)]
        self.outslot = [pos[tail[d]][head[d]] for d in range(self.ndarts)]

    def faces_of(self, cyc) -> int:
        """Face count for cyclic orders ``cyc[v]`` given as lists of local slots."""
        nxt_out = [0] * self.ndarts
        for v, order in enumerate(cyc):
            d = len(order)
            for k in range(d):
                nxt_out[self.out[v][order[k]]] = self.out[v][order[(k + 1) % d]]
        return self._count(nxt_out)

    def _count(self, nxt_out) -> int:
        rev = self.rev
        seen = bytearray(self.ndarts)
        faces = 0
        for d0 in range(self.ndarts):
            if seen[d0]:
                continue
            faces += 1
            d = d0
            while not seen[d]:
                seen[d] = 1
                d = nxt_out[rev[d]]
        return faces + sum(1 for ws in self.nbrs if not ws)

    def rotation(self, cyc) -> list:
        return [[self.nbrs[v][k] for k in order] for v, order in enumerate(cyc)]

    def target_faces(self, g: int) -> int:
        return 2 - self.n + self.e - 2 * g

    def genus_of_faces(self, f: int) -> int:
        return (2 - self.n + self.e - f) // 2


def _hill_climb(piece: _Piece, target: int, deadline: float, seed: int,
                max_iters: Optional[int] = None) -> tuple:
    """Local search for many faces; returns ``(faces, cyclic orders)``."""
    rng = random.Random(seed)
    movable = [v for v in range(piece.n) if len(piece.nbrs[v]) >= 3]
    cyc = [list(range(len(ws))) for ws in piece.nbrs]
    best_f = piece.faces_of(cyc)
    best = [list(c) for c in cyc]
    if not movable or best_f >= target:
        return best_f, best
    iters = 0
    restart_after = 40 * piece.ndarts + 200
    while best_f < target:
        for c in cyc:
            rng.shuffle(c)
        cur = piece.faces_of(cyc)
        stall = 0
        while stall < restart_after and cur < target:
            iters += 1
            if iters & 255 == 0 and time.monotonic() > deadline:
                return best_f, best
            if max_iters is not None and iters > max_iters:
                return best_f, best
            v = rng.choice(movable)
            c = cyc[v]
            i = rng.randrange(len(c))
            j = rng.randrange(len(c) - 1)
            x = c.pop(i)
            c.insert(j, x)
            f = piece.faces_of(cyc)
            if f >= cur:
                stall = 0 if f > cur else stall + 1
                cur = f
                if f > best_f:
                    best_f, best = f, [list(cc) for cc in cyc]
            else:
                c.pop(j)
                c.insert(i, x)
                stall += 1
        if cur > best_f:
            best_f, best = cur, [list(cc) for cc in cyc]
    return best_f, best


class _FaceSearch:
    """Branch-and-bound over rotation systems of a 2-connected piece.

    Faces are grown one dart at a time.  Extending the current face from dart
    ``(u, v)`` picks the successor of ``u`` in the rotation at ``v``; the
    partial rotation at each vertex is a set of disjoint chains that may
    close into a cycle only once it covers every neighbour.  A branch is cut
    when ``closed + 1 + floor(unused darts / shortest face)`` falls below the
    target face count.  One reflection is fixed at the vertex of highest
    degree, since reversing every rotation preserves the face count.
    """

    CHECK_EVERY = 2048

    def __init__(self, piece: _Piece, min_face: int, deadline: float):
        self.p = piece
        self.min_face = min_face
        self.deadline = deadline
        n = piece.n
        self.deg = [len(ws) for ws in piece.nbrs]
        self.succ = [[-1] * d for d in self.deg]
        self.pred = [[-1] * d for d in self.deg]
        self.start_of = [list(range(d)) for d in self.deg]  # valid at chain ends
        self.end_of = [list(range(d)) for d in self.deg]  # valid at chain starts
        self.count = [0] * n
        self.used = bytearray(piece.ndarts)
        self.nodes = 0
        self.anchor = max(range(n), key=lambda v: (self.deg[v], -v))
        if self.deg[self.anchor] < 3:
            self.anchor = -1
        self.solution = None

    def _assign(self, v, i, j):
        """Set succ_v(i) = j; returns an undo record or None if illegal."""
        s = self.start_of[v][i]
        e = self.end_of[v][j]
        if s == j and self.count[v] != self.deg[v] - 1:
            return None
        succ, pred = self.succ[v], self.pred[v]
        succ[i] = j
        pred[j] = i
        if v == self.anchor and succ[0] >= 0 and pred[0] >= 0 and succ[0] > pred[0]:
            succ[i] = -1
            pred[j] = -1
            return None
        self.count[v] += 1
        rec = (v, i, j, s, e, self.end_of[v][s], self.start_of[v][e])
        if s != j:
            self.end_of[v][s] = e
            self.start_of[v][e] = s
        return rec

    def _undo(self, rec):
        v, i, j, s, e, old_end, old_start = rec
        self.succ[v][i] = -1
        self.pred[v][j] = -1
        self.count[v] -= 1
        self.end_of[v][s] = old_end
        self.start_of[v][e] = old_start

    def feasible(self, target: int) -> bool:
        """Whether some rotation system has at least ``target`` faces."""
        self.target = target
        self.nd = self.p.ndarts
        limit = sys.getrecursionlimit()
        need = 4 * self.nd + 200
        if limit < need:
            sys.setrecursionlimit(need)
        try:
            return self._close(0, 0)
        finally:
            if limit < need:
                sys.setrecursionlimit(limit)

    def _tick(self):
        self.nodes += 1
        if self.nodes % self.CHECK_EVERY == 0 and time.monotonic() > self.deadline:
            raise _Timeout

    def _close(self, faces: int, used: int) -> bool:
        if used == self.nd:
            if faces >= self.target:
                self.solution = [self._cycle(v) for v in range(self.p.n)]
                return True
            return False
        if faces + (self.nd - used) // self.min_face < self.target:
            return False
        d0 = self.used.index(0)
        self.used[d0] = 1
        ok = self._walk(d0, d0, faces, used + 1, 1)
        self.used[d0] = 0
        return ok

    def _walk(self, d0, d, faces, used, length) -> bool:
        self._tick()
        p = self.p
        v = p.head[d]
        i = p.slot[d]
        j = self.succ[v][i]
        if j >= 0:
            nd = p.out[v][j]
            if nd == d0:
                return self._close(faces + 1, used)
            self.used[nd] = 1
            ok = self._walk(d0, nd, faces, used + 1, length + 1)
            self.used[nd] = 0
            return ok
        rest = self.nd - used - max(0, self.min_face - length)
        if faces + 1 + rest // self.min_face < self.target:
            return False
        closing = p.outslot[d0] if p.tail[d0] == v else -1
        order = list(range(self.deg[v]))
        if closing >= 0:
            order.remove(closing)
            order.insert(0, closing)
        pred = self.pred[v]
        for jj in order:
            if pred[jj] >= 0:
                continue
            rec = self._assign(v, i, jj)
            if rec is None:
                continue
            nd = p.out[v][jj]
            if nd == d0:
                ok = self._close(faces + 1, used)
            else:
                self.used[nd] = 1
                ok = self._walk(d0, nd, faces, used + 1, length + 1)
                self.used[nd] = 0
            self._undo(rec)
            if ok:
                return True
        return False

    def _cycle(self, v) -> list:
        if self.deg[v] == 0:
            return []
        out = [0]
        while len(out) < self.deg[v]:
            out.append(self.succ[v][out[-1]])
        return out


# --------------------------------------------------------------------------
# results
# --------------------------------------------------------------------------


@dataclass(frozen=True)
class GenusHint:
    """A caller-supplied lower bound: the vertices of a subgraph of known genus."""

    vertices: tuple
    genus: int
    description: str = "witness"


@dataclass
class GenusResult:
    lower: int
    upper: Optional[int]
    status: str  # exact | bounds | timeout
    evidence: str
    rotation: Optional[RotationSystem] = None
    elapsed: float = 0.0
    blocks: list = field(default_factory=list)
    certificate: Optional[KuratowskiCertificate] = None

    def __post_init__(self):
        if self.status == "exact" and self.lower != self.upper:
            raise ValueError("exact status requires lower == upper")

    @property
    def value(self) -> Optional[int]:
        return self.lower if self.status == "exact" else None

    def to_json(self) -> dict:
        return {
            "lower": self.lower,
            "upper": self.upper,
            "status": self.status,
            "evidence": self.evidence,
            "ms": round(self.elapsed * 1000, 3),
            "schema": 1,
        }


@dataclass
class _BlockOutcome:
    vertices: list  # global ids
    edges: int
    lower: int
    upper: int
    lower_source: str
    rotation: list  # per local vertex, global neighbour ids
    faces: int
    timed_out: bool = False

    def summary(self) -> dict:
        return {"vertices": len(self.vertices), "edges": self.edges, "lower": self.lower,
                "upper": self.upper, "lower_source": self.lower_source, "faces": self.faces}


def _solve_block(G: Graph, verts: list, hints: list, deadline: float, seed: int,
                 certificate_out: list) -> _BlockOutcome:
    pos = {v: i for i, v in enumerate(verts)}
    vset = set(verts)
    nbrs = [[pos[w] for w in G.neighbors(v) if w in vset] for v in verts]
    piece = _Piece(nbrs)
    E = piece.e

    def glob(cyc):
        return [[verts[w] for w in row] for row in piece.rotation(cyc)]

    if E <= 2 or E == piece.n:  # a single edge or a cycle
        cyc = [list(range(len(ws))) for ws in nbrs]
        return _BlockOutcome(verts, E, 0, 0, "planar", glob(cyc), piece.faces_of(cyc))

    sub = Graph.from_edges(piece.n, [(a, b) for a in range(piece.n) for b in nbrs[a] if a < b])
    pl = is_planar(sub)
    if pl.planar:
        slot = [{w: k for k, w in enumerate(ws)} for ws in nbrs]
        cyc = [[slot[v][w] for w in row] for v, row in enumerate(pl.rotation.order)]
        return _BlockOutcome(verts, E, 0, 0, "planar", glob(cyc), piece.faces_of(cyc))
    cert = pl.certificate
    certificate_out.append(KuratowskiCertificate(
        cert.kind,
        tuple(tuple(verts[x] for x in side) for side in cert.branch) if cert.kind == "K3,3"
        else tuple(verts[x] for x in cert.branch),
        tuple(tuple(sorted((verts[a], verts[b]))) for a, b in cert.edges),
    ))

    g_girth = girth(nbrs)
    min_face = 4 if g_girth >= 4 else 3
    lower, source = 1, f"{cert.kind} subdivision"
    eb = _euler_bound(piece.n, E, min_face)
    if eb > lower:
        lower, source = eb, "Euler" + (" (triangle-free)" if min_face == 4 else "")
    for h in hints:  # a named witness is preferred over the Kuratowski certificate on ties
        if h.genus > lower or (h.genus == lower and source == f"{cert.kind} subdivision"):
            lower, source = h.genus, h.description

    f, cyc = _hill_climb(piece, piece.target_faces(lower), deadline, seed)
    upper = piece.genus_of_faces(f)
    timed_out = False
    search = _FaceSearch(piece, min_face, deadline)
    try:
        while lower < upper:
            if search.feasible(piece.target_faces(lower)):
                cyc = search.solution
                f = piece.faces_of(cyc)
                upper = piece.genus_of_faces(f)
            else:
                lower += 1
                source = "exhaustive search"
            search = _FaceSearch(piece, min_face, deadline)
    except _Timeout:
        timed_out = True
    return _BlockOutcome(verts, E, lower, upper, source, glob(cyc), f, timed_out)


def genus_exact(G: Graph, budget_ms: Optional[int] = None, hints: Iterable[GenusHint] = (),
                seed: int = 0) -> GenusResult:
    """Exact genus of ``G`` within a time budget, or certified bounds on timeout.

    ``hints`` carry subgraph lower bounds.  Each hint is credited to the one
    block containing all of its vertices (a 2-connected subgraph cannot span
    two blocks); hints not inside a single block are ignored.
    """
    t0 = time.monotonic()
    if budget_ms is None:
        budget_ms = budget_from_env()
    deadline = t0 + budget_ms / 1000.0
    hints = list(hints)
    H = G.to_networkx()
    blocks_out = []
    certs = []
    for comp in sorted(nx.connected_components(H), key=min):
        if len(comp) == 1:
            continue
        for k, bedges in enumerate(sorted(
                (sorted(tuple(sorted(e)) for e in b) for b in nx.biconnected_component_edges(H.subgraph(comp))),
                key=lambda es: es[0])):
            verts = sorted({x for e in bedges for x in e})
            vset = set(verts)
            local_hints = [h for h in hints if h.vertices and set(h.vertices) <= vset]
            blocks_out.append(_solve_block(G, verts, local_hints, deadline, seed + k, certs))

    rot_lists = [[] for _ in range(G.n)]
    for b in blocks_out:
        for v, row in zip(b.vertices, b.rotation):
            rot_lists[v].extend(row)
    rot = RotationSystem.of(rot_lists)

    lower = sum(b.lower for b in blocks_out)
    upper = sum(b.upper for b in blocks_out)
    assert embedding_genus(G, rot) == upper, "merged rotation does not realize the upper bound"
    if lower == upper:
        status = "exact"
    elif any(b.timed_out for b in blocks_out):
        status = "timeout"
    else:
        status = "bounds"
    evidence = _evidence(G, blocks_out, rot, lower, upper)
    return GenusResult(lower, upper, status, evidence, rot, time.monotonic() - t0,
                       [b.summary() for b in blocks_out], certs[0] if certs else None)


def _evidence(G, blocks, rot, lower, upper) -> str:
    sources = sorted({b.lower_source for b in blocks if b.lower > 0})
    low = "planar" if lower == 0 else "lower " + str(lower) + " from " + ", ".join(sources)
    f = trace_faces(G, rot)
    return f"{low}; upper {upper} from a rotation with F={f} (V={G.n}, E={G.edge_count})"


def genus_upper_search(G: Graph, budget_ms: int = 2000, seed: int = 0):
    """Best embedding found by local search within the budget.

    Returns ``(upper, RotationSystem)``; ``None`` when no component with a
    cycle got beyond a single face.
    """
    deadline = time.monotonic() + budget_ms / 1000.0
    H = G.to_networkx()
    rot_lists = [[] for _ in range(G.n)]
    improved = True
    for comp in sorted(nx.connected_components(H), key=min):
        verts = sorted(comp)
        pos = {v: i for i, v in enumerate(verts)}
        piece = _Piece([[pos[w] for w in G.neighbors(v)] for v in verts])
        lower = _component_bound([list(ws) for ws in piece.nbrs], list(range(piece.n)))
        f, cyc = _hill_climb(piece, piece.target_faces(lower), deadline, seed)
        if piece.e >= piece.n and f <= 1:
            improved = False
        for v, row in zip(verts, piece.rotation(cyc)):
            rot_lists[v] = [verts[w] for w in row]
    if not improved:
        return None
    rot = RotationSystem.of(rot_lists)
    return embedding_genus(G, rot), rot
