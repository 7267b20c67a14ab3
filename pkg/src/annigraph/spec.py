"""Parser for ring spec strings.

Grammar (whitespace is insignificant)::

    spec     := "Z" INT
              | "GF(" INT ["^" INT] ")"
              | base "[" var ("," var)* "]" "/(" rel ("," rel)* ")"
              | "product(" spec ("," spec)* ")"
              | "table:@" PATH
    base     := "Z" INT | "GF(" INT ["^" INT] ")"
    rel      := term ["=" term]
    term     := [INT "*"] monomial | INT
    monomial := var ["^" INT] ("*" var ["^" INT])*

A relation ``m`` means ``m -> 0``; ``c*m`` means ``c*m = 0`` (the coefficient
of ``m`` lives modulo ``c``); ``m = c*m'`` is a rewrite rule.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from typing import Optional

from sympy import factorint, isprime

__all__ = [
    "RingSpecError",
    "Relation",
    "RingSpec",
    "parse_ring_spec",
]


class RingSpecError(ValueError):
    """Raised for malformed or unsupported ring specs."""

    def __init__(self, message: str, position: Optional[int] = None):
        self.position = position
        if position is not None:
            message = f"{message} (at position {position})"
        super().__init__(message)


Monomial = tuple  # exponent vector, one entry per variable


@dataclass(frozen=True)
class Relation:
    """One quotient relation.

    ``kind`` is ``"zero"`` (``coeff * lhs = 0``) or ``"rewrite"``
    (``lhs -> coeff * rhs``).  For ``zero`` relations ``coeff`` is the
    annihilating constant (1 for a plain monomial relation).
    """

    kind: str
    lhs: Monomial
    coeff: int = 1
    rhs: Optional[Monomial] = None


@dataclass(frozen=True)
class RingSpec:
    kind: str  # modular | galois | quotient | product | table
    source_text: str = field(compare=False)
    modulus: int = 0
    p: int = 0
    k: int = 0
    base: Optional["RingSpec"] = None
    variables: tuple = ()
    relations: tuple = ()
    factors: tuple = ()
    path: str = ""

    def __str__(self):
        return self.source_text


_TOKEN = re.compile(r"\s*(?:(table:@[^,()\s]*)|(\d+)|([A-Za-z_][A-Za-z_0-9]*)|(\S))")


class _Parser:
    def __init__(self, text: str):
        self.text = text
        self.tokens = []  # (kind, value, position)
        pos = 0
        while pos < len(text):
            m = _TOKEN.match(text, pos)
            if m is None:  # trailing whitespace
                break
            table, num, name, ch = m.groups()
            start = m.start(m.lastindex) if m.lastindex else m.start()
            if num is not None:
                self.tokens.append(("int", int(num), start))
            elif name is not None:
                self.tokens.append(("name", name, start))
            elif table is not None:
                self.tokens.append(("table", table[len("table:@"):].strip(), start))
            elif ch is not None:
                self.tokens.append(("sym", ch, start))
            pos = m.end()
        self.i = 0

    # token helpers
    def peek(self, offset=0):
        j = self.i + offset
        return self.tokens[j] if j < len(self.tokens) else ("eof", None, len(self.text))

    def next(self):
        tok = self.peek()
        self.i += 1
        return tok

    def expect_sym(self, ch):
        kind, value, pos = self.next()
        if kind != "sym" or value != ch:
            raise RingSpecError(f"expected {ch!r}, found {value!r}", pos)

    def expect_int(self, what):
        kind, value, pos = self.next()
        if kind != "int":
            raise RingSpecError(f"expected integer {what}, found {value!r}", pos)
        return value, pos

    def at_sym(self, ch):
        kind, value, _ = self.peek()
        return kind == "sym" and value == ch

    # grammar
    def parse(self) -> RingSpec:
        spec = self.spec()
        kind, value, pos = self.peek()
        if kind != "eof":
            raise RingSpecError(f"unexpected trailing input {value!r}", pos)
        return spec

    def spec(self) -> RingSpec:
        start = self.peek()[2]
        kind, value, pos = self.peek()
        if kind == "table":
            self.next()
            if not value:
                raise RingSpecError("empty table path", pos)
            return RingSpec("table", self._src(start), path=value)
        if kind == "name" and value == "product":
            self.next()
            self.expect_sym("(")
            factors = [self.spec()]
            while self.at_sym(","):
                self.next()
                factors.append(self.spec())
            self.expect_sym(")")
            return RingSpec("product", self._src(start), factors=tuple(factors))
        base = self.base()
        if self.at_sym("["):
            return self.quotient(base, start)
        return base

    def _src(self, start):
        kind, _, end = self.peek()
        if kind == "eof":
            end = len(self.text)
        return re.sub(r"\s+", "", self.text[start:end])

    def base(self) -> RingSpec:
        start = self.peek()[2]
        kind, value, pos = self.next()
        if kind == "name" and value == "GF":
            self.expect_sym("(")
            q, qpos = self.expect_int("field characteristic")
            k = 1
            if self.at_sym("^"):
                self.next()
                k, _ = self.expect_int("field degree")
            self.expect_sym(")")
            if not isprime(q):
                if k == 1:
                    f = factorint(q)
                    if len(f) == 1:
                        (p, k), = f.items()
                        return RingSpec("galois", self._src(start), p=p, k=k)
                raise RingSpecError(f"GF({q}{'' if k == 1 else f'^{k}'}) is not a field order", qpos)
            if k < 1:
                raise RingSpecError("field degree must be >= 1", qpos)
            return RingSpec("galois", self._src(start), p=q, k=k)
        if kind == "name" and value.startswith("Z"):
            digits = value[1:]
            if digits:
                # "Z12" lexes as one name token
                if not digits.isdigit():
                    raise RingSpecError(f"unknown ring {value!r}", pos)
                n = int(digits)
            else:
                n, pos = self.expect_int("modulus")
            if n < 2:
                raise RingSpecError(f"modulus must be >= 2, got {n}", pos)
            return RingSpec("modular", self._src(start), modulus=n)
        raise RingSpecError(f"expected a ring, found {value!r}", pos)

    def quotient(self, base: RingSpec, start: int) -> RingSpec:
        self.expect_sym("[")
        variables = [self.variable()]
        while self.at_sym(","):
            self.next()
            variables.append(self.variable())
        self.expect_sym("]")
        if len(set(variables)) != len(variables):
            raise RingSpecError("repeated variable name", start)
        self.expect_sym("/")
        self.expect_sym("(")
        rels = [self.relation(variables)]
        while self.at_sym(","):
            self.next()
            rels.append(self.relation(variables))
        self.expect_sym(")")
        return RingSpec(
            "quotient",
            self._src(start),
            base=base,
            variables=tuple(variables),
            relations=tuple(rels),
        )

    def variable(self) -> str:
        kind, value, pos = self.next()
        if kind != "name":
            raise RingSpecError(f"expected variable name, found {value!r}", pos)
        return value

    def term(self, variables):
        """Return (coeff, monomial or None, position)."""
        kind, value, pos = self.peek()
        coeff = 1
        if kind == "int":
            self.next()
            coeff = value
            if not self.at_sym("*"):
                return coeff, None, pos
            self.next()
        return coeff, self.monomial(variables), pos

    def monomial(self, variables):
        exps = [0] * len(variables)
        while True:
            kind, value, pos = self.next()
            if kind != "name" or value not in variables:
                raise RingSpecError(f"expected a variable of {list(variables)}, found {value!r}", pos)
            e = 1
            if self.at_sym("^"):
                self.next()
                e, epos = self.expect_int("exponent")
                if e < 1:
                    raise RingSpecError("exponent must be >= 1", epos)
            exps[variables.index(value)] += e
            if self.at_sym("*") and self.peek(1)[0] == "name":
                self.next()
                continue
            return tuple(exps)

    def relation(self, variables) -> Relation:
        c1, m1, pos = self.term(variables)
        if not self.at_sym("="):
            if m1 is None:
                raise RingSpecError("constant relations are not supported", pos)
            return Relation("zero", m1, coeff=c1)
        self.next()
        c2, m2, pos2 = self.term(variables)
        if m1 is None or c1 != 1:
            raise RingSpecError("rewrite rule must have a bare monomial on the left", pos)
        if m2 is None:
            if c2 != 0:
                raise RingSpecError("unsupported relation shape: monomial = nonzero constant", pos2)
            return Relation("zero", m1)
        if c2 == 0:
            return Relation("zero", m1)
        if m1 == m2:
            raise RingSpecError("unsupported relation shape: monomial = c*itself", pos2)
        return Relation("rewrite", m1, coeff=c2, rhs=m2)


def parse_ring_spec(text: str) -> RingSpec:
    """Parse a ring-spec string such as ``"GF(2)[x,y]/(x^2, x*y, y^2)"``."""
    if not text or not text.strip():
        raise RingSpecError("empty ring spec", 0)
    return _Parser(text).parse()
