"""Deterministic GF(p^k) tables.

Each field is built from the smallest primitive polynomial of degree k over
GF(p) (coefficients compared as a base-p integer, constant term least
significant).  Using a primitive modulus makes ``a`` a generator of the
multiplicative group, so multiplication goes through exp/log tables.
"""

from __future__ import annotations

from functools import lru_cache
from itertools import product

import numpy as np
from sympy import Poly, symbols

_X = symbols("a")


def _polmulmod(u, v, modulus, p):
    """Multiply coefficient lists (low degree first) modulo a monic modulus."""
    k = len(modulus) - 1
    out = [0] * (len(u) + len(v) - 1)
    for i, a in enumerate(u):
        if a:
            for j, b in enumerate(v):
                out[i + j] = (out[i + j] + a * b) % p
    for d in range(len(out) - 1, k - 1, -1):
        c = out[d]
        if c:
            for j in range(k + 1):
                out[d - k + j] = (out[d - k + j] - c * modulus[j]) % p
    return (out + [0] * k)[:k]


def _is_primitive(modulus, p):
    k = len(modulus) - 1
    if not Poly(list(reversed(modulus)), _X, modulus=p).is_irreducible:
        return False
    order = p**k - 1
    x = [0, 1] + [0] * (k - 2)
    cur = [1] + [0] * (k - 1)
    for e in range(1, order + 1):
        cur = _polmulmod(cur, x, modulus, p)
        if cur == [1] + [0] * (k - 1):
            return e == order
    return False


@lru_cache(maxsize=None)
def primitive_polynomial(p: int, k: int) -> tuple:
    """Smallest primitive monic polynomial of degree ``k >= 2`` over GF(p), low degree first."""
    for tail in product(range(p), repeat=k):
        coeffs = list(reversed(tail)) + [1]
        if coeffs[0] == 0:
            continue
        if _is_primitive(coeffs, p):
            return tuple(coeffs)
    raise ValueError(f"no primitive polynomial for GF({p}^{k})")  # unreachable


def _poly_name(index, p, k):
    digits = [(index // p**i) % p for i in range(k)]
    terms = []
    for i in reversed(range(k)):
        c = digits[i]
        if not c:
            continue
        if i == 0:
            terms.append(str(c))
        else:
            mono = "a" if i == 1 else f"a^{i}"
            terms.append(mono if c == 1 else f"{c}{mono}")
    return "+".join(terms) or "0"


@lru_cache(maxsize=32)
def galois_tables(p: int, k: int):
    """Return ``(add, mul, names)`` for GF(p^k); element i encodes sum(d_j p^j)."""
    q = p**k
    idx = np.arange(q)
    if k == 1:
        return (idx[:, None] + idx) % q, (idx[:, None] * idx) % q, [str(i) for i in range(q)]
    digits = np.stack([(idx // p**i) % p for i in range(k)], axis=1)
    weights = p ** np.arange(k)
    add = (((digits[:, None, :] + digits[None, :, :]) % p) * weights).sum(axis=2)
    modulus = list(primitive_polynomial(p, k))
    # exp table of the generator a
    gen = [0, 1] + [0] * (k - 2)
    exp = np.zeros(q - 1, dtype=np.int64)
    cur = [1] + [0] * (k - 1)
    for e in range(q - 1):
        exp[e] = sum(c * p**i for i, c in enumerate(cur))
        cur = _polmulmod(cur, gen, modulus, p)
    log = np.zeros(q, dtype=np.int64)
    log[exp] = np.arange(q - 1)
    mul = np.zeros((q, q), dtype=np.int64)
    nz = idx[1:]
    mul[1:, 1:] = exp[(log[nz][:, None] + log[nz][None, :]) % (q - 1)]
    names = [_poly_name(i, p, k) for i in range(q)]
    return add, mul, names
