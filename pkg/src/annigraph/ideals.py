"""Ideals, the ideal lattice, and local-ring invariants.

An :class:`Ideal` is a set of element indices stored as a Python ``int``
bitmask, so containment, intersection and equality are plain integer ops.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property
from typing import Optional

import numpy as np

from .rings import FiniteRing, maximal_ideal_masks, span_with

__all__ = [
    "Ideal",
    "IdealLattice",
    "LatticeLimitError",
    "LocalStructure",
    "NotLocal",
    "Lemma29Report",
    "principal_ideal",
    "ideal_sum",
    "ideal_product",
    "ideal_power",
    "ideal_intersection",
    "all_ideals",
    "annihilator",
    "ideals_contained_in",
    "maximal_ideals",
    "jacobson_radical",
    "local_structure",
    "check_special_principal_chain",
    "power_chain_below",
    "lemma29_check",
    "lattice_to_json",
    "DEFAULT_LATTICE_LIMIT",
]

DEFAULT_LATTICE_LIMIT = 2**20


class LatticeLimitError(RuntimeError):
    pass


def _bits_to_mask(bits: np.ndarray) -> int:
    return int.from_bytes(np.packbits(bits, bitorder="little").tobytes(), "little")


def _mask_to_bits(mask: int, n: int) -> np.ndarray:
    raw = np.frombuffer(mask.to_bytes((n + 7) // 8, "little"), dtype=np.uint8)
    return np.unpackbits(raw, bitorder="little")[:n].astype(bool)


@dataclass(frozen=True, eq=False)
class Ideal:
    mask: int
    ring: FiniteRing = field(repr=False)

    @classmethod
    def from_bits(cls, ring: FiniteRing, bits: np.ndarray) -> "Ideal":
        return cls(_bits_to_mask(bits), ring)

    @property
    def ring_id(self) -> int:
        return self.ring.uid

    def __eq__(self, other):
        if not isinstance(other, Ideal):
            return NotImplemented
        return self.ring.uid == other.ring.uid and self.mask == other.mask

    def __hash__(self):
        return hash((self.ring.uid, self.mask))

    def __le__(self, other: "Ideal") -> bool:
        return self.mask & ~other.mask == 0

    def __lt__(self, other: "Ideal") -> bool:
        return self <= other and self.mask != other.mask

    def __contains__(self, a: int) -> bool:
        return bool(self.mask >> a & 1)

    def __len__(self):
        return self.size

    def __repr__(self):
        return f"Ideal({self.label()}, size={self.size})"

    @cached_property
    def bits(self) -> np.ndarray:
        b = _mask_to_bits(self.mask, self.ring.order)
        b.setflags(write=False)
        return b

    @cached_property
    def members(self) -> np.ndarray:
        return np.flatnonzero(self.bits)

    @cached_property
    def size(self) -> int:
        return self.mask.bit_count()

    @property
    def is_zero(self) -> bool:
        return self.mask == 1 << self.ring.zero

    @property
    def is_unit(self) -> bool:
        return self.size == self.ring.order

    @cached_property
    def additive_generators(self) -> tuple:
        R = self.ring
        span = np.zeros(R.order, dtype=bool)
        span[R.zero] = True
        gens = []
        for x in self.members:
            if not span[x]:
                span = span_with(R.add, span, int(x))
                gens.append(int(x))
        return tuple(gens)

    @cached_property
    def generators(self) -> tuple:
        """A small ideal-generating set, chosen greedily in index order."""
        cur = zero_ideal(self.ring)
        gens = []
        for x in self.members:
            if int(x) not in cur:
                cur = ideal_sum(cur, principal_ideal(self.ring, int(x)))
                gens.append(int(x))
                if cur.mask == self.mask:
                    break
        return tuple(gens)

    def label(self) -> str:
        if self.is_zero:
            return "(0)"
        names = self.ring.element_names
        return "(" + ",".join(names[g] for g in self.generators) + ")"


def zero_ideal(R: FiniteRing) -> Ideal:
    return Ideal(1 << R.zero, R)


def unit_ideal(R: FiniteRing) -> Ideal:
    return Ideal((1 << R.order) - 1, R)


def principal_ideal(R: FiniteRing, a: int) -> Ideal:
    """The ideal Ra = {r*a}; already closed under addition since R has 1."""
    if not 0 <= a < R.order:
        raise IndexError(f"element {a} out of range for order {R.order}")
    bits = np.zeros(R.order, dtype=bool)
    bits[R.mul[a]] = True
    return Ideal.from_bits(R, bits)


def _same_ring(I: Ideal, J: Ideal):
    if I.ring.uid != J.ring.uid:
        raise ValueError("ideals belong to different rings")


def ideal_sum(I: Ideal, J: Ideal) -> Ideal:
    _same_ring(I, J)
    if J <= I:
        return I
    if I <= J:
        return J
    bits = I.bits.copy()
    for x in J.additive_generators:
        bits = span_with(I.ring.add, bits, x)
    return Ideal.from_bits(I.ring, bits)


def ideal_intersection(I: Ideal, J: Ideal) -> Ideal:
    _same_ring(I, J)
    return Ideal(I.mask & J.mask, I.ring)


def ideal_product(I: Ideal, J: Ideal) -> Ideal:
    """IJ, generated by products of generators of I and J."""
    _same_ring(I, J)
    R = I.ring
    out = zero_ideal(R)
    if I.is_zero or J.is_zero:
        return out
    if I.is_unit:
        return J
    if J.is_unit:
        return I
    for g in I.generators:
        for h in J.generators:
            out = ideal_sum(out, principal_ideal(R, int(R.mul[g, h])))
    return out


def ideal_power(I: Ideal, k: int) -> Ideal:
    if k < 0:
        raise ValueError("exponent must be >= 0")
    out = unit_ideal(I.ring)
    for _ in range(k):
        nxt = ideal_product(I, out)
        if nxt == out:
            break
        out = nxt
    return out


def element_annihilator_bits(R: FiniteRing, a: int) -> np.ndarray:
    return R.mul[a] == R.zero


def _annihilator(I: Ideal) -> Ideal:
    R = I.ring
    bits = np.ones(R.order, dtype=bool)
    for g in I.generators:
        bits &= R.mul[g] == R.zero
    return Ideal.from_bits(R, bits)


DENSE_CONTAINMENT_LIMIT = 4096


class IdealLattice:
    """The ideals of a ring, ordered by size then lexicographic member list.

    ``covers[k]`` lists the ids of ideals covering ideal ``k`` (the Hasse
    diagram).  The containment relation is precomputed as a dense matrix up
    to ``DENSE_CONTAINMENT_LIMIT`` ideals; above that, columns are computed
    on demand from the member bitmap.
    """

    def __init__(self, ring: FiniteRing, ideals: list, covers: list, principal_of: list):
        self.ring = ring
        self.ideals = ideals
        self.covers = covers
        self.principal_of = principal_of
        self.index = {I.mask: k for k, I in enumerate(ideals)}
        self.zero = ideals[0]
        self.unit = ideals[-1]
        self._ann = {}
        self._members = np.stack([I.bits for I in ideals])
        self._dense = None
        if len(ideals) <= DENSE_CONTAINMENT_LIMIT:
            self._dense = self._compute_containment()

    def __repr__(self):
        return f"IdealLattice({self.ring}, {len(self.ideals)} ideals)"

    def __len__(self):
        return len(self.ideals)

    def __iter__(self):
        return iter(self.ideals)

    def __contains__(self, I: Ideal) -> bool:
        return I.ring.uid == self.ring.uid and I.mask in self.index

    def _compute_containment(self) -> np.ndarray:
        B = self._members.astype(np.float32)
        C = (B @ (1.0 - B).T) == 0
        C.setflags(write=False)
        return C

    @property
    def containment(self) -> np.ndarray:
        """``containment[i, j]`` is True iff ideal i is a subset of ideal j."""
        if self._dense is None:
            self._dense = self._compute_containment()
        return self._dense

    def column(self, j: int) -> np.ndarray:
        """Bool vector over ideals: which are contained in ideal ``j``."""
        if self._dense is not None:
            return self._dense[:, j]
        outside = ~self.ideals[j].bits
        return ~(self._members[:, outside]).any(axis=1)

    def id_of(self, I: Ideal) -> int:
        try:
            return self.index[I.mask]
        except KeyError:
            raise KeyError(f"{I!r} is not in the lattice") from None

    def canonical(self, I: Ideal) -> Ideal:
        """The lattice's own instance equal to ``I`` (shares cached data)."""
        return self.ideals[self.id_of(I)]

    def annihilator(self, I: Ideal) -> Ideal:
        k = self.id_of(I)
        if k not in self._ann:
            self._ann[k] = self.canonical(_annihilator(I))
        return self._ann[k]

    def contained_in(self, J: Ideal) -> list:
        return [self.ideals[i] for i in np.flatnonzero(self.column(self.id_of(J)))]

    def count_in(self, J: Ideal) -> int:
        return int(self.column(self.id_of(J)).sum())

    def label(self, I: Ideal) -> str:
        g = self.principal_of[self.id_of(I)]
        if g is not None:
            return "(0)" if I.is_zero else f"({self.ring.element_names[g]})"
        return I.label()


def all_ideals(R: FiniteRing, limit: int = DEFAULT_LATTICE_LIMIT) -> IdealLattice:
    """Every ideal of ``R``.

    Breadth-first from (0) through the cover relation: the ideals covering I
    are exactly the sums I + Rx with x outside I and Mx inside I for some
    maximal ideal M.  Each cover found retires all of its new elements as
    candidate generators, so every Hasse edge is computed once.
    """
    principal = {}
    pideal = {}
    for a in range(R.order):
        bits = np.zeros(R.order, dtype=bool)
        bits[R.mul[a]] = True
        mask = _bits_to_mask(bits)
        if mask not in principal:
            principal[mask] = a
            pideal[mask] = Ideal(mask, R)
        pideal[a] = pideal[mask]
    max_gens = []
    for mbits in maximal_ideal_masks(R):
        M = Ideal.from_bits(R, mbits)
        max_gens.append(M.generators)

    zero = zero_ideal(R)
    found = {zero.mask: zero}
    edges = {zero.mask: []}
    frontier = [zero]
    while frontier:
        nxt = []
        for I in frontier:
            Ibits = I.bits
            cand = np.zeros(R.order, dtype=bool)
            for gens in max_gens:
                colon = np.ones(R.order, dtype=bool)
                for g in gens:
                    colon &= Ibits[R.mul[:, g]]
                cand |= colon
            cand &= ~Ibits
            ups = []
            while cand.any():
                x = int(cand.argmax())
                P = pideal[x]
                bits = Ibits.copy()
                for y in P.additive_generators:
                    bits = span_with(R.add, bits, y)
                cand &= ~bits
                mask = _bits_to_mask(bits)
                S = found.get(mask)
                if S is None:
                    S = Ideal(mask, R)
                    found[mask] = S
                    edges[mask] = []
                    nxt.append(S)
                    if len(found) > limit:
                        raise LatticeLimitError(f"more than {limit} ideals")
                ups.append(mask)
            edges[I.mask] = ups
        frontier = nxt

    ideals = sorted(found.values(), key=lambda I: (I.size, tuple(I.members.tolist())))
    pos = {I.mask: k for k, I in enumerate(ideals)}
    covers = [sorted(pos[m] for m in edges[I.mask]) for I in ideals]
    principal_of = [principal.get(I.mask) for I in ideals]
    return IdealLattice(R, ideals, covers, principal_of)


def annihilator(L: IdealLattice, I: Ideal) -> Ideal:
    """Ann(I) = {a : a*x = 0 for all x in I}, as a lattice member."""
    return L.annihilator(I)


def ideals_contained_in(L: IdealLattice, J: Ideal) -> list:
    """All lattice members I with I <= J, including (0) and J."""
    return L.contained_in(J)


def maximal_ideals(L: IdealLattice) -> list:
    """Proper ideals whose only cover is R."""
    top = len(L.ideals) - 1
    return [I for k, I in enumerate(L.ideals) if k != top and L.covers[k] == [top]]


def jacobson_radical(L: IdealLattice) -> Ideal:
    mask = L.unit.mask
    for M in maximal_ideals(L):
        mask &= M.mask
    return L.canonical(Ideal(mask, L.ring))


def _exact_log(x: int, q: int) -> int:
    e = 0
    while x > 1:
        if x % q:
            raise ArithmeticError(f"{x} is not a power of {q}")
        x //= q
        e += 1
    return e


def _is_prime_power(q: int) -> bool:
    if q < 2:
        return False
    p = next(d for d in range(2, q + 1) if q % d == 0)
    while q % p == 0:
        q //= p
    return q == 1


@dataclass(frozen=True)
class NotLocal:
    maximal_count: int

    def __bool__(self):
        return False


@dataclass(frozen=True, eq=False)
class LocalStructure:
    m: Ideal
    q: int
    t: int
    powers: tuple  # m^0, m^1, ..., m^(t+1)
    socle: Ideal
    vdim_steps: tuple  # vdim of m^i / m^(i+1), i = 0..t
    gorenstein: bool
    special_principal: bool

    @property
    def is_field(self) -> bool:
        return self.t == 0

    @property
    def embedding_dim(self) -> int:
        """v.dim m/m^2."""
        return self.vdim_steps[1] if self.t >= 1 else 0

    def summary(self) -> dict:
        return {
            "q": self.q,
            "t": self.t,
            "m_size": self.m.size,
            "socle_size": self.socle.size,
            "vdim_steps": list(self.vdim_steps),
            "gorenstein": self.gorenstein,
            "special_principal": self.special_principal,
            "field": self.is_field,
        }


def local_structure(R: FiniteRing, L: Optional[IdealLattice] = None):
    """Invariants of a local ring, or :class:`NotLocal` with the maximal-ideal count.

    Fields get ``t = 0``, ``socle = (0)`` and ``gorenstein = True`` by convention.
    Without a lattice, m comes from the idempotent split and the special
    principal flag is read off as v.dim m/m^2 <= 1 (a local Artinian ring
    with principal maximal ideal has only the ideals m^i).
    """
    if L is not None:
        maxes = maximal_ideals(L)
    else:
        maxes = [Ideal.from_bits(R, b) for b in maximal_ideal_masks(R)]
    if len(maxes) != 1:
        return NotLocal(len(maxes))
    canon = L.canonical if L is not None else (lambda I: I)
    m = maxes[0]
    q = R.order // m.size
    assert _is_prime_power(q), q
    powers = [canon(unit_ideal(R))]
    while not powers[-1].is_zero:
        powers.append(canon(ideal_product(m, powers[-1])))
    t = len(powers) - 2
    if t == 0:
        socle = canon(zero_ideal(R))
        gorenstein = True
    else:
        socle = L.annihilator(m) if L is not None else _annihilator(m)
        gorenstein = socle.size == q
    steps = tuple(_exact_log(powers[i].size // powers[i + 1].size, q) for i in range(t + 1))
    if L is not None:
        chain = {P.mask for P in powers}
        special = all(I.mask in chain for I in L.ideals)
    else:
        special = t == 0 or steps[1] <= 1
    return LocalStructure(m, q, t, tuple(powers), socle, steps, gorenstein, special)


def check_special_principal_chain(S: LocalStructure, L: IdealLattice) -> bool:
    """v.dim m/m^2 <= 1 and the lattice is exactly {m^0, ..., m^(t+1)}."""
    if S.embedding_dim > 1:
        return False
    return {I.mask for I in L.ideals} == {P.mask for P in S.powers}


def power_chain_below(S: LocalStructure, L: IdealLattice, n: int) -> bool:
    """Whether the ideals inside m^n are exactly m^n, m^(n+1), ..., m^(t+1)."""
    if not 0 <= n <= S.t + 1:
        raise ValueError(f"n must lie in 0..{S.t + 1}")
    inside = {I.mask for I in L.contained_in(S.powers[n])}
    return inside == {P.mask for P in S.powers[n:]}


@dataclass
class Lemma29Report:
    ok: bool
    rows: list  # (label, |X|, |I(X)|, log_q |X|, holds)
    violating: Optional[str] = None

    def __bool__(self):
        return self.ok


def lemma29_check(S: LocalStructure, L: IdealLattice) -> Lemma29Report:
    """|m^i| <= q^|I(m^i)| for 1 <= i <= t, and |R| <= q^|I(R)|.

    Ideals of a local ring have q-power order, so the comparison is made on
    exponents; q^|I(X)| itself can run to thousands of digits.
    """
    rows = []
    targets = [(f"m^{i}", S.powers[i]) for i in range(1, S.t + 1)] + [("R", L.unit)]
    violating = None
    for name, X in targets:
        count = L.count_in(X)
        exponent = _exact_log(X.size, S.q)
        holds = exponent <= count
        rows.append((name, X.size, count, exponent, holds))
        if not holds and violating is None:
            violating = name
    return Lemma29Report(violating is None, rows, violating)


def lattice_to_json(L: IdealLattice, spec_text: str = "") -> dict:
    """JSON form of the lattice.  The dense containment matrix is included only
    for lattices small enough to hold it; the cover lists are always present."""
    out = {
        "schema": 1,
        "ring": spec_text or L.ring.label,
        "ideals": [
            {"id": k, "mask": [int(x) for x in I.members], "principal": L.principal_of[k],
             "label": L.label(I)}
            for k, I in enumerate(L.ideals)
        ],
        "covers": L.covers,
    }
    if len(L) <= DENSE_CONTAINMENT_LIMIT:
        out["containment"] = L.containment.tolist()
    return out
