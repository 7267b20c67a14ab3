"""The built-in ring catalog."""

from __future__ import annotations

from dataclasses import dataclass, field

from sympy import factorint, primerange

from .rings import FiniteRing, realize
from .spec import RingSpec, parse_ring_spec

__all__ = ["CatalogEntry", "builtin_catalog", "lemma28_family_spec", "MAX_CATALOG_ORDER"]

MAX_CATALOG_ORDER = 8192
MAX_PRODUCT_FACTORS = 4
LEMMA28_MAX_K = 8


@dataclass(eq=False)
class CatalogEntry:
    spec: RingSpec
    tags: frozenset
    order: int
    family: str = field(default="", compare=False)

    @property
    def text(self) -> str:
        return self.spec.source_text

    @property
    def ring(self) -> FiniteRing:
        """A freshly realized ring; not cached, so a long catalog stays cheap to hold."""
        R = realize(self.spec)
        if R.order != self.order:
            raise AssertionError(f"{self.text}: realized order {R.order}, catalog says {self.order}")
        return R

    def __repr__(self):
        return f"CatalogEntry({self.text!r}, order={self.order}, tags={sorted(self.tags)})"


def lemma28_family_spec(k: int) -> str:
    """GF(2)[x1..xk]/(xi*xj for i<j, xi^2 = x1^2 for i >= 2, x1^3)."""
    if k < 2:
        raise ValueError("k must be >= 2")
    xs = [f"x{i}" for i in range(1, k + 1)]
    rels = [f"{xs[i]}*{xs[j]}" for i in range(k) for j in range(i + 1, k)]
    rels += [f"{x}^2=x1^2" for x in xs[1:]]
    rels.append("x1^3")
    return f"GF(2)[{','.join(xs)}]/({','.join(rels)})"


def _entry(text: str, order: int, tags, family: str) -> CatalogEntry:
    return CatalogEntry(parse_ring_spec(text), frozenset(tags), order, family)


def _locals(order_max: int) -> list:
    out = []
    for n in range(2, order_max + 1):
        f = factorint(n)
        if len(f) != 1:
            continue
        (p, k), = f.items()
        tags = {"local", "chain", "gorenstein-expected"}
        if k == 1:
            tags.add("field")
        if k <= 2:
            tags.add("square-zero")
        out.append(_entry(f"Z{n}", n, tags, "modular"))
        if k >= 2:
            out.append(_entry(f"GF({p}^{k})", n, {"local", "field", "chain", "gorenstein-expected"}, "galois"))
    for p in primerange(2, order_max + 1):
        if p**2 > order_max:
            break
        for k in range(2, order_max.bit_length() + 1):
            if p**k > order_max:
                break
            tags = {"local", "chain", "gorenstein-expected"} | ({"square-zero"} if k == 2 else set())
            out.append(_entry(f"GF({p})[x]/(x^{k})", p**k, tags, "truncated"))
        if p**3 <= order_max:
            out.append(_entry(f"GF({p})[x,y]/(x^2,x*y,y^2)", p**3, {"local", "square-zero"}, "square-zero"))
            out.append(_entry(f"Z{p * p}[x]/({p}*x,x^2)", p**3, {"local", "square-zero"}, "mixed"))
        if p**4 <= order_max:
            out.append(_entry(f"GF({p})[x,y]/(x^2,y^2)", p**4, {"local", "gorenstein-expected"}, "gorenstein"))
    for k in range(2, LEMMA28_MAX_K + 1):
        if 2 ** (k + 2) <= order_max:
            out.append(_entry(lemma28_family_spec(k), 2 ** (k + 2),
                              {"local", "gorenstein-expected", "lemma28-family"}, f"G{k}"))
    return out


_FAMILY_RANK = {"modular": 0, "galois": 1, "truncated": 2, "square-zero": 3, "mixed": 4,
                "gorenstein": 5, "product": 7}


def _rank(e: CatalogEntry) -> tuple:
    fam = e.family
    r = _FAMILY_RANK.get(fam, 6)
    return (e.order, r, e.text)


def builtin_catalog(order_max: int) -> list:
    """Deterministic list of catalog rings of order at most ``order_max``.

    Contents: every Z_n; GF(p^k) for k >= 2; GF(p)[x]/(x^k) for k >= 2;
    GF(p)[x,y]/(x^2,xy,y^2); GF(p)[x,y]/(x^2,y^2); Z_{p^2}[x]/(px,x^2); the
    Gorenstein family G_k for 2 <= k <= 8; and every product of 2 to 4 of
    the local entries (as a multiset) whose order fits.
    """
    if order_max > MAX_CATALOG_ORDER:
        raise ValueError(f"order_max must be <= {MAX_CATALOG_ORDER}")
    if order_max < 2:
        return []
    locs = sorted(_locals(order_max), key=_rank)
    entries = list(locs)
    for n in range(2, order_max + 1):
        if len(factorint(n)) > 1:
            entries.append(_entry(f"Z{n}", n, set(), "modular"))
    small = [e for e in locs if e.order <= order_max // 2]
    for r in range(2, MAX_PRODUCT_FACTORS + 1):
        _products(small, r, order_max, entries)
    return sorted(entries, key=_rank)


def _products(small, r, order_max, out):
    def rec(start, chosen, order):
        if len(chosen) == r:
            tags = {"product"}
            if r == 4 and len({c.text for c in chosen}) == 1 and "field" in chosen[0].tags:
                tags.add("field-power-4")
            text = "product(" + ",".join(c.text for c in chosen) + ")"
            out.append(_entry(text, order, tags, "product"))
            return
        for i in range(start, len(small)):
            o = order * small[i].order
            if o > order_max:
                break  # small is sorted by order
            rec(i, chosen + [small[i]], o)

    rec(0, [], 1)
