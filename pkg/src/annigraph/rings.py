"""Finite commutative rings as dense operation tables.

Elements are the integers ``0..order-1``.  ``add[a, b]`` and ``mul[a, b]``
hold the index of the sum and product.  Every constructed ring has its
axioms certified before it is handed out (see :func:`verify_axioms`).
"""

from __future__ import annotations

import itertools
import json
from dataclasses import dataclass, field
from math import prod
from pathlib import Path
from typing import Optional, Union

import numpy as np

from .galois import galois_tables
from .spec import Relation, RingSpec, RingSpecError, parse_ring_spec

__all__ = [
    "RingAxiomError",
    "FiniteRing",
    "realize",
    "ring_from_tables",
    "verify_axioms",
    "verify_axioms_naive",
    "span_with",
    "is_zero_divisor",
    "zero_divisors",
    "idempotents",
    "primitive_idempotents",
    "unit_mask",
    "is_local_ring",
    "maximal_ideal_masks",
    "DEFAULT_MAX_ORDER",
    "DEFAULT_DEGREE_BOUND",
    "EXHAUSTIVE_LIMIT",
]

DEFAULT_MAX_ORDER = 8192  # two dense n x n int32 tables: 512 MB at this size
DEFAULT_DEGREE_BOUND = 16
EXHAUSTIVE_LIMIT = 4096
SAMPLED_TRIPLES = 100_000

_uid = itertools.count(1)


class RingAxiomError(ValueError):
    """The tables do not define a commutative ring with identity."""


@dataclass(frozen=True, eq=False)
class FiniteRing:
    order: int
    add: np.ndarray = field(repr=False)
    mul: np.ndarray = field(repr=False)
    zero: int
    one: int
    element_names: tuple = field(repr=False)
    label: str = ""
    verification: dict = field(default_factory=dict, repr=False)
    uid: int = field(default_factory=lambda: next(_uid), repr=False)

    def __post_init__(self):
        self.add.setflags(write=False)
        self.mul.setflags(write=False)

    def __str__(self):
        return self.label or f"<ring of order {self.order}>"

    def name(self, a: int) -> str:
        return self.element_names[a]

    def index_of(self, name: str) -> int:
        """Element index from its display name (whitespace ignored)."""
        key = name.replace(" ", "")
        for i, n in enumerate(self.element_names):
            if n.replace(" ", "") == key:
                return i
        raise KeyError(name)

    def from_int(self, c: int) -> int:
        """Image of the integer ``c`` under Z -> R."""
        result, base, c0 = self.zero, self.one, c
        c = abs(c)
        while c:
            if c & 1:
                result = int(self.add[result, base])
            base = int(self.add[base, base])
            c >>= 1
        if c0 < 0:
            result = int(np.flatnonzero(self.add[result] == self.zero)[0])
        return result

    def is_unit(self, a: int) -> bool:
        return bool((self.mul[a] == self.one).any())


# --------------------------------------------------------------------------
# axiom verification
# --------------------------------------------------------------------------


def _additive_generators(add: np.ndarray, zero: int) -> list:
    """Greedy generating set S with every element a left-nested sum of S."""
    n = add.shape[0]
    reached = np.zeros(n, dtype=bool)
    reached[zero] = True
    gens = []
    while not reached.all():
        s = int(np.flatnonzero(~reached)[0])
        gens.append(s)
        while True:
            idx = np.flatnonzero(reached)
            nxt = add[np.ix_(idx, gens)].ravel()
            if reached[nxt].all():
                break
            reached[nxt] = True
    return gens


def verify_axioms(add, mul, zero, one, exhaustive_limit=EXHAUSTIVE_LIMIT,
                  samples=SAMPLED_TRIPLES, seed=0) -> dict:
    """Certify that ``(add, mul)`` is a commutative ring with ``one != zero``.

    Up to ``exhaustive_limit`` elements the check covers all triples: addition
    associativity by Light's test over an additive generating set S, then
    distributivity as "x -> a*x is additive" on all a, b and s in S, then
    multiplicative associativity on S^3 (trilinearity extends it).  Cost is
    O(n^2 |S|).  Above the limit the triple identities are sampled.
    Raises :class:`RingAxiomError` on the first violation.
    """
    add = np.asarray(add)
    mul = np.asarray(mul)
    n = add.shape[0]
    if add.shape != (n, n) or mul.shape != (n, n):
        raise RingAxiomError("tables must be square and of equal size")
    if n < 2:
        raise RingAxiomError("ring must have 1 != 0")
    if add.min() < 0 or add.max() >= n or mul.min() < 0 or mul.max() >= n:
        raise RingAxiomError("table entry out of range")
    if not (0 <= zero < n and 0 <= one < n) or zero == one:
        raise RingAxiomError("ring must have 1 != 0")
    idx = np.arange(n)
    if not np.array_equal(add, add.T):
        raise RingAxiomError("addition is not commutative")
    if not np.array_equal(mul, mul.T):
        raise RingAxiomError("multiplication is not commutative")
    if not np.array_equal(add[zero], idx):
        raise RingAxiomError("zero is not an additive identity")
    if not np.array_equal(mul[one], idx):
        raise RingAxiomError("one is not a multiplicative identity")
    if not (add == zero).any(axis=1).all():
        raise RingAxiomError("some element has no additive inverse")
    if not (mul[:, zero] == zero).all():
        raise RingAxiomError("a*0 != 0 for some a")

    if n > exhaustive_limit:
        rng = np.random.default_rng(seed)
        a, b, c = rng.integers(0, n, size=(3, samples))
        if not np.array_equal(add[add[a, b], c], add[a, add[b, c]]):
            raise RingAxiomError("addition is not associative (sampled)")
        if not np.array_equal(mul[mul[a, b], c], mul[a, mul[b, c]]):
            raise RingAxiomError("multiplication is not associative (sampled)")
        if not np.array_equal(mul[a, add[b, c]], add[mul[a, b], mul[a, c]]):
            raise RingAxiomError("distributivity fails (sampled)")
        return {"mode": "sampled", "triples": int(samples), "threshold": exhaustive_limit}

    gens = _additive_generators(add, zero)
    for s in gens:
        # Light's associativity test: (x+s)+y == x+(s+y)
        if not np.array_equal(add[add[:, s]], add[:, add[s]]):
            raise RingAxiomError("addition is not associative")
    for s in gens:
        # a*(b+s) == a*b + a*s
        if not np.array_equal(mul[:, add[:, s]], add[mul, mul[:, s][:, None]]):
            raise RingAxiomError("distributivity fails")
    for s1, s2, s3 in itertools.product(gens, repeat=3):
        if mul[mul[s1, s2], s3] != mul[s1, mul[s2, s3]]:
            raise RingAxiomError("multiplication is not associative")
    return {"mode": "exhaustive", "generators": len(gens), "threshold": exhaustive_limit}


def verify_axioms_naive(add, mul, zero, one) -> bool:
    """Direct O(n^3) check of every ring identity on every triple."""
    add = np.asarray(add)
    mul = np.asarray(mul)
    n = add.shape[0]
    if zero == one:
        return False
    idx = np.arange(n)
    if not (np.array_equal(add, add.T) and np.array_equal(mul, mul.T)):
        return False
    if not (np.array_equal(add[zero], idx) and np.array_equal(mul[one], idx)):
        return False
    if not (add == zero).any(axis=1).all():
        return False
    for a in range(n):
        if not np.array_equal(add[add[a]], add[a][add]):
            return False
        if not np.array_equal(mul[mul[a]], mul[a][mul]):
            return False
        row = mul[a]
        if not np.array_equal(row[add], add[row[:, None], row[None, :]]):
            return False
    return True


def ring_from_tables(add, mul, zero=0, one=1, names=None, label="",
                     exhaustive_limit=EXHAUSTIVE_LIMIT) -> FiniteRing:
    """Build a :class:`FiniteRing` from explicit tables, verifying the axioms."""
    add = np.ascontiguousarray(add, dtype=np.int32)
    mul = np.ascontiguousarray(mul, dtype=np.int32)
    info = verify_axioms(add, mul, zero, one, exhaustive_limit=exhaustive_limit)
    n = add.shape[0]
    if names is None:
        names = [str(i) for i in range(n)]
    if len(names) != n:
        raise RingAxiomError("names length does not match order")
    return FiniteRing(n, add, mul, int(zero), int(one), tuple(names), label, info)


# --------------------------------------------------------------------------
# realization
# --------------------------------------------------------------------------


def realize(spec: Union[RingSpec, str], max_order: int = DEFAULT_MAX_ORDER,
            degree_bound: int = DEFAULT_DEGREE_BOUND,
            exhaustive_limit: int = EXHAUSTIVE_LIMIT) -> FiniteRing:
    """Turn a ring spec (or spec string) into a verified :class:`FiniteRing`."""
    if isinstance(spec, str):
        spec = parse_ring_spec(spec)
    kw = dict(max_order=max_order, degree_bound=degree_bound, exhaustive_limit=exhaustive_limit)
    label = spec.source_text
    if spec.kind == "modular":
        n = spec.modulus
        _check_order(n, max_order)
        idx = np.arange(n)
        return ring_from_tables((idx[:, None] + idx) % n, (idx[:, None] * idx) % n,
                                label=label, exhaustive_limit=exhaustive_limit)
    if spec.kind == "galois":
        _check_order(spec.p**spec.k, max_order)
        add, mul, names = galois_tables(spec.p, spec.k)
        return ring_from_tables(add, mul, names=names, label=label, exhaustive_limit=exhaustive_limit)
    if spec.kind == "product":
        hint = prod(_order_hint(f) for f in spec.factors)
        if hint > max_order:
            raise RingSpecError(f"ring order {hint} exceeds the configured maximum {max_order}")
        factors = [realize(f, **kw) for f in spec.factors]
        return _product(factors, label, max_order, exhaustive_limit)
    if spec.kind == "quotient":
        return _quotient(spec, **kw)
    if spec.kind == "table":
        try:
            doc = json.loads(Path(spec.path).read_text())
        except (OSError, json.JSONDecodeError) as exc:
            raise RingSpecError(f"cannot load table {spec.path!r}: {exc}") from exc
        n = doc.get("order")
        _check_order(n, max_order)
        add = np.asarray(doc["add"])
        mul = np.asarray(doc["mul"])
        if add.shape != (n, n) or mul.shape != (n, n):
            raise RingAxiomError(f"table shapes do not match order {n}")
        names = doc.get("names")
        zero = doc.get("zero", 0)
        one = doc.get("one", 1)
        return ring_from_tables(add, mul, zero, one, names, label, exhaustive_limit)
    raise RingSpecError(f"unknown spec kind {spec.kind!r}")


def _order_hint(spec: RingSpec) -> int:
    """Cheap lower-or-exact order estimate used to fail fast on products."""
    if spec.kind == "modular":
        return spec.modulus
    if spec.kind == "galois":
        return spec.p**spec.k
    if spec.kind == "product":
        return prod(_order_hint(f) for f in spec.factors)
    return 1


def _check_order(n, max_order):
    if not isinstance(n, int) or n < 2:
        raise RingSpecError(f"invalid ring order {n!r}")
    if n > max_order:
        raise RingSpecError(f"ring order {n} exceeds the configured maximum {max_order}")


def _product(factors, label, max_order, exhaustive_limit) -> FiniteRing:
    sizes = [f.order for f in factors]
    n = prod(sizes)
    _check_order(n, max_order)
    strides = np.cumprod([1] + sizes[:-1])
    idx = np.arange(n)
    coords = [(idx // s) % m for s, m in zip(strides, sizes)]
    add = np.zeros((n, n), dtype=np.int32)
    mul = np.zeros((n, n), dtype=np.int32)
    for f, c, s in zip(factors, coords, strides):
        add += np.int32(s) * f.add[c[:, None], c[None, :]]
        mul += np.int32(s) * f.mul[c[:, None], c[None, :]]
    zero = int(sum(s * f.zero for f, s in zip(factors, strides)))
    one = int(sum(s * f.one for f, s in zip(factors, strides)))
    names = [
        "(" + ",".join(f.element_names[int(c[i])] for f, c in zip(factors, coords)) + ")"
        for i in range(n)
    ]
    return ring_from_tables(add, mul, zero, one, names, label, exhaustive_limit)


def _divides(u, m):
    return all(a <= b for a, b in zip(u, m))


def _mono_name(mono, variables):
    parts = []
    for v, e in zip(variables, mono):
        if e == 1:
            parts.append(v)
        elif e > 1:
            parts.append(f"{v}^{e}")
    return "*".join(parts) or "1"


def span_with(add: np.ndarray, mask: np.ndarray, x: int) -> np.ndarray:
    """Additive subgroup generated by subgroup ``mask`` and element ``x``.

    Union of the cosets H + kx until kx falls back into H.
    """
    if mask[x]:
        return mask
    members = np.flatnonzero(mask)
    out = mask.copy()
    y = x
    while not mask[y]:
        out[add[members, y]] = True
        y = add[y, x]
    return out


def _principal_sum(base: FiniteRing, consts) -> np.ndarray:
    """Ideal of ``base`` generated by the given elements, as a bool mask."""
    mask = np.zeros(base.order, dtype=bool)
    mask[base.zero] = True
    for c in consts:
        for x in np.unique(base.mul[c]):
            mask = span_with(base.add, mask, int(x))
    return mask


class _Presentation:
    """Normal monomials and rewriting for a quotient presentation."""

    def __init__(self, spec: RingSpec, base: FiniteRing, degree_bound: int):
        self.spec = spec
        self.base = base
        self.nvars = len(spec.variables)
        self.degree_bound = degree_bound
        self.kills = []  # monomials rewritten to 0
        self.rewrites = []  # (lhs, coeff index, rhs)
        self.annihilators = []  # (lhs, coeff index): coeff*lhs = 0
        for rel in spec.relations:
            self._add_relation(rel)
        self.monomials, self.coeff_ideals = self._enumerate()
        self.position = {m: i for i, m in enumerate(self.monomials)}

    def _add_relation(self, rel: Relation):
        c = self.base.from_int(rel.coeff)
        if rel.kind == "zero":
            if self.base.is_unit(c):
                self.kills.append(rel.lhs)
            elif c != self.base.zero:
                self.annihilators.append((rel.lhs, c))
        else:
            if c == self.base.zero:
                self.kills.append(rel.lhs)
            else:
                self.rewrites.append((rel.lhs, c, rel.rhs))

    def reducible(self, m) -> bool:
        return any(_divides(u, m) for u in self.kills) or any(
            _divides(u, m) for u, _, _ in self.rewrites)

    def coeff_ideal(self, m) -> np.ndarray:
        return _principal_sum(self.base, [c for u, c in self.annihilators if _divides(u, m)])

    def _enumerate(self):
        one = (0,) * self.nvars
        monos, ideals = [one], [self.coeff_ideal(one)]
        if ideals[0].all():
            raise RingSpecError("presentation collapses to the zero ring")
        seen = {one}
        frontier = [one]
        while frontier:
            nxt = []
            for m in frontier:
                for v in range(self.nvars):
                    m2 = tuple(e + (i == v) for i, e in enumerate(m))
                    if m2 in seen or self.reducible(m2):
                        continue
                    seen.add(m2)
                    if sum(m2) > self.degree_bound:
                        raise RingSpecError(
                            f"normal monomials exceed degree bound {self.degree_bound}; "
                            "the presentation is infinite or needs a larger bound")
                    ideal = self.coeff_ideal(m2)
                    if ideal.all():
                        continue
                    monos.append(m2)
                    ideals.append(ideal)
                    nxt.append(m2)
            frontier = nxt
        return monos, ideals

    def normal_form(self, m):
        """Rewrite monomial ``m`` to ``(coeff, position)`` or None for zero."""
        coeff = self.base.one
        for _ in range(10_000):
            if any(_divides(u, m) for u in self.kills):
                return None
            for u, c, v in self.rewrites:
                if _divides(u, m):
                    m = tuple(a - b + d for a, b, d in zip(m, u, v))
                    coeff = int(self.base.mul[coeff, c])
                    break
            else:
                pos = self.position.get(m)
                return None if pos is None else (coeff, pos)
            if coeff == self.base.zero:
                return None
            if sum(m) > self.degree_bound:
                raise RingSpecError(f"rewriting exceeds degree bound {self.degree_bound}")
        raise RingSpecError("rewriting does not terminate")


def _quotient(spec: RingSpec, max_order, degree_bound, exhaustive_limit) -> FiniteRing:
    if spec.base.kind not in ("modular", "galois"):
        raise RingSpecError("quotient base must be Z<n> or GF(p^k)")
    base = realize(spec.base, max_order=max_order, exhaustive_limit=exhaustive_limit)
    pres = _Presentation(spec, base, degree_bound)
    d = len(pres.monomials)

    # coset representatives of base / I_m for each monomial
    reps, rank, rep_of = [], [], []
    for ideal in pres.coeff_ideals:
        members = np.flatnonzero(ideal)
        r = base.add[:, members].min(axis=1)
        uniq = np.unique(r)
        rk = np.full(base.order, -1, dtype=np.int64)
        rk[uniq] = np.arange(len(uniq))
        reps.append(uniq)
        rep_of.append(r)
        rank.append(rk)
    sizes = [len(r) for r in reps]
    n = prod(sizes)
    _check_order(n, max_order)
    strides = np.cumprod([1] + sizes[:-1])
    idx = np.arange(n)
    coords = np.stack([reps[k][(idx // strides[k]) % sizes[k]] for k in range(d)], axis=1)

    def encode(acc):
        out = np.zeros((n, n), dtype=np.int64)
        for k in range(d):
            out += strides[k] * rank[k][rep_of[k][acc[k]]]
        return out

    add_acc = [base.add[coords[:, None, k], coords[None, :, k]] for k in range(d)]
    mul_acc = [np.full((n, n), base.zero, dtype=np.int64) for _ in range(d)]
    for i, j in itertools.product(range(d), repeat=2):
        nf = pres.normal_form(tuple(a + b for a, b in zip(pres.monomials[i], pres.monomials[j])))
        if nf is None:
            continue
        c, k = nf
        term = base.mul[coords[:, None, i], coords[None, :, j]]
        if c != base.one:
            term = base.mul[c, term]
        mul_acc[k] = base.add[mul_acc[k], term]
    add = encode(add_acc)
    mul = encode(mul_acc)
    one_coords = [base.zero] * d
    one_coords[0] = base.one
    one = int(sum(strides[k] * rank[k][rep_of[k][one_coords[k]]] for k in range(d)))

    names = []
    mono_names = [_mono_name(m, spec.variables) for m in pres.monomials]
    for e in range(n):
        terms = []
        for k in range(d):
            c = int(coords[e, k])
            if c == base.zero:
                continue
            cname = base.element_names[c]
            if k == 0:
                terms.append(cname)
            elif c == base.one:
                terms.append(mono_names[k])
            else:
                cname = f"({cname})" if "+" in cname else cname
                terms.append(f"{cname}*{mono_names[k]}")
        names.append("+".join(terms) or "0")
    try:
        return ring_from_tables(add, mul, 0, one, names, spec.source_text, exhaustive_limit)
    except RingAxiomError as exc:
        raise RingAxiomError(f"presentation {spec.source_text!r} is not confluent: {exc}") from exc


# --------------------------------------------------------------------------
# zero-divisors
# --------------------------------------------------------------------------


def is_zero_divisor(ring: FiniteRing, a: int) -> bool:
    """True iff ``a != 0`` and ``a*b == 0`` for some ``b != 0``.

    Zero itself is reported False, matching the zero-divisor graph vertex set.
    """
    if not 0 <= a < ring.order:
        raise IndexError(f"element {a} out of range for order {ring.order}")
    if a == ring.zero:
        return False
    row = ring.mul[a]
    hits = row == ring.zero
    hits[ring.zero] = False
    return bool(hits.any())


def zero_divisors(ring: FiniteRing) -> list:
    """Nonzero zero-divisors, ascending."""
    m = ring.mul == ring.zero
    m[:, ring.zero] = False
    m[ring.zero, :] = False
    return [int(a) for a in np.flatnonzero(m.any(axis=1))]


# --------------------------------------------------------------------------
# idempotents and units
# --------------------------------------------------------------------------


def idempotents(ring: FiniteRing) -> list:
    """All e with e*e == e, ascending (includes 0 and 1)."""
    idx = np.arange(ring.order)
    return [int(e) for e in np.flatnonzero(ring.mul[idx, idx] == idx)]


def primitive_idempotents(ring: FiniteRing) -> list:
    """Nonzero idempotents with no nonzero idempotent strictly below them."""
    es = [e for e in idempotents(ring) if e != ring.zero]
    out = []
    for e in es:
        if not any(f != e and ring.mul[f, e] == f for f in es):
            out.append(e)
    return out


def unit_mask(ring: FiniteRing, within=None, identity=None) -> np.ndarray:
    """Bool mask of units.  With ``within``/``identity``: units of the
    subring ``within`` (an index array) whose identity is ``identity``."""
    if within is None:
        return (ring.mul == ring.one).any(axis=1)
    sub = ring.mul[np.ix_(within, within)]
    mask = np.zeros(ring.order, dtype=bool)
    mask[within[(sub == identity).any(axis=1)]] = True
    return mask


def is_local_ring(ring: FiniteRing) -> bool:
    """A finite ring is local iff its non-units are closed under addition."""
    nonunits = np.flatnonzero(~unit_mask(ring))
    sums = ring.add[np.ix_(nonunits, nonunits)]
    return bool((~unit_mask(ring))[sums].all())


def maximal_ideal_masks(ring: FiniteRing) -> list:
    """Maximal ideals as bool masks, one per primitive idempotent e:
    {a : a*e is a non-unit of Re}."""
    out = []
    for e in primitive_idempotents(ring):
        comp = np.unique(ring.mul[e])
        units = unit_mask(ring, comp, e)
        out.append(~units[ring.mul[e]])
    return out
