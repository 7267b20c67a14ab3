"""Splitting a finite ring into local factors via primitive idempotents."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .rings import (
    EXHAUSTIVE_LIMIT,
    FiniteRing,
    is_local_ring,
    primitive_idempotents,
    ring_from_tables,
)

__all__ = ["LocalDecomposition", "DecompositionError", "local_decomposition"]


class DecompositionError(RuntimeError):
    """The idempotent split is inconsistent with the ring's tables."""


@dataclass(frozen=True, eq=False)
class LocalDecomposition:
    """``R ~= factors[0] x ... x factors[n-1]``.

    ``embedding[a, i]`` is the index in ``factors[i]`` of ``a * idempotents[i]``.
    """

    ring: FiniteRing
    factors: tuple
    idempotents: tuple
    embedding: np.ndarray

    def image(self, a: int) -> tuple:
        return tuple(int(x) for x in self.embedding[a])

    @property
    def orders(self) -> tuple:
        return tuple(F.order for F in self.factors)


def _factor(R: FiniteRing, e: int, k: int):
    elems = np.unique(R.mul[e])
    pos = np.full(R.order, -1, dtype=np.int64)
    pos[elems] = np.arange(len(elems))
    add = pos[R.add[np.ix_(elems, elems)]]
    mul = pos[R.mul[np.ix_(elems, elems)]]
    names = [R.element_names[a] for a in elems]
    F = ring_from_tables(add, mul, zero=int(pos[R.zero]), one=int(pos[e]), names=names,
                         label=f"{R.label or 'R'}*e{k}")
    return F, pos


def local_decomposition(R: FiniteRing, exhaustive_limit: int = EXHAUSTIVE_LIMIT) -> LocalDecomposition:
    """Factors ``R e_i`` for the primitive idempotents ``e_i``, each checked local.

    The coordinate map ``a -> (a e_1, ..., a e_n)`` is checked to be a
    bijective ring homomorphism, on every pair up to ``exhaustive_limit``
    elements and on a fixed random sample of pairs above it.
    """
    es = primitive_idempotents(R)
    factors, cols = [], []
    for k, e in enumerate(es):
        F, pos = _factor(R, e, k)
        if not is_local_ring(F):
            raise DecompositionError(f"factor {k} is not local")
        factors.append(F)
        cols.append(pos[R.mul[e]])
    if int(np.prod([F.order for F in factors], dtype=object)) != R.order:
        raise DecompositionError("factor orders do not multiply to |R|")
    emb = np.stack(cols, axis=1)

    radix = np.cumprod([1] + [F.order for F in factors[:-1]])
    code = emb @ radix
    if len(np.unique(code)) != R.order:
        raise DecompositionError("coordinate map is not injective")

    if R.order <= exhaustive_limit:
        a, b = np.meshgrid(np.arange(R.order), np.arange(R.order), indexing="ij")
        a, b = a.ravel(), b.ravel()
    else:
        rng = np.random.default_rng(0)
        a = rng.integers(0, R.order, 200_000)
        b = rng.integers(0, R.order, 200_000)
    for i, F in enumerate(factors):
        c = emb[:, i]
        if not np.array_equal(c[R.add[a, b]], F.add[c[a], c[b]]):
            raise DecompositionError(f"addition not preserved in factor {i}")
        if not np.array_equal(c[R.mul[a, b]], F.mul[c[a], c[b]]):
            raise DecompositionError(f"multiplication not preserved in factor {i}")
        if c[R.one] != F.one:
            raise DecompositionError(f"identity not preserved in factor {i}")
    emb.setflags(write=False)
    return LocalDecomposition(R, tuple(factors), tuple(es), emb)
