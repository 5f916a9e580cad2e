"""Multivariate integer polynomials: parsing, canonical printing, exact evaluation.

Coefficients are Python ints, so nothing overflows when D is squared.
"""
from __future__ import annotations

import re
from dataclasses import dataclass, field
from typing import Dict, Iterable, List, Mapping, Sequence, Tuple

Exponents = Tuple[int, ...]


class ParseError(ValueError):
    """Raised for malformed polynomial text; ``position`` is a 0-based offset."""

    def __init__(self, message: str, position: int):
        super().__init__(f"{message} (at position {position})")
        self.position = position


@dataclass(frozen=True, eq=False)
class Polynomial:
    """Canonical polynomial: ordered variable names + {exponent tuple: nonzero int}.

    Equality compares the polynomial as a function of named variables, so two
    values that differ only in the order of ``variables`` compare equal.
    Order still matters downstream: it fixes the tensor-factor layout.
    """

    variables: Tuple[str, ...] = ()
    terms: Mapping[Exponents, int] = field(default_factory=dict)

    def __post_init__(self):
        k = len(self.variables)
        if len(set(self.variables)) != k:
            raise ValueError(f"duplicate variable names: {self.variables}")
        clean = {}
        for exps, c in self.terms.items():
            exps = tuple(int(e) for e in exps)
            if len(exps) != k:
                raise ValueError(f"exponent vector {exps} does not match {k} variables")
            if any(e < 0 for e in exps):
                raise ValueError(f"negative exponent in {exps}")
            c = int(c)
            if c:
                clean[exps] = clean.get(exps, 0) + c
        object.__setattr__(self, "terms", {e: c for e, c in clean.items() if c})
        object.__setattr__(self, "variables", tuple(self.variables))

    # construction helpers

    @classmethod
    def constant(cls, value: int) -> "Polynomial":
        return cls((), {(): value} if value else {})

    @classmethod
    def variable(cls, name: str) -> "Polynomial":
        return cls((name,), {(1,): 1})

    @property
    def nvars(self) -> int:
        return len(self.variables)

    def is_zero(self) -> bool:
        return not self.terms

    def degree(self) -> int:
        return max((sum(e) for e in self.terms), default=0)

    def named_terms(self) -> Dict[frozenset, int]:
        """Terms keyed by frozenset of (name, exponent) pairs, zero exponents dropped."""
        out = {}
        for exps, c in self.terms.items():
            key = frozenset((v, e) for v, e in zip(self.variables, exps) if e)
            out[key] = c
        return out

    def __eq__(self, other):
        if not isinstance(other, Polynomial):
            return NotImplemented
        return self.named_terms() == other.named_terms()

    def __hash__(self):
        return hash(frozenset(self.named_terms().items()))

    def __repr__(self):
        return f"Polynomial({print_canonical(self)!r}, variables={self.variables})"

    # arithmetic

    def with_variables(self, variables: Sequence[str]) -> "Polynomial":
        """Re-express over ``variables`` (a superset of the variables actually used)."""
        variables = tuple(variables)
        pos = {v: i for i, v in enumerate(variables)}
        terms = {}
        for exps, c in self.terms.items():
            new = [0] * len(variables)
            for v, e in zip(self.variables, exps):
                if e:
                    if v not in pos:
                        raise ValueError(f"variable {v!r} missing from {variables}")
                    new[pos[v]] = e
            terms[tuple(new)] = c
        return Polynomial(variables, terms)

    def _aligned(self, other: "Polynomial"):
        merged = self.variables + tuple(v for v in other.variables if v not in self.variables)
        return self.with_variables(merged), other.with_variables(merged), merged

    def __add__(self, other):
        other = _coerce(other)
        a, b, variables = self._aligned(other)
        terms = dict(a.terms)
        for e, c in b.terms.items():
            terms[e] = terms.get(e, 0) + c
        return Polynomial(variables, terms)

    __radd__ = __add__

    def __neg__(self):
        return Polynomial(self.variables, {e: -c for e, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-_coerce(other))

    def __rsub__(self, other):
        return _coerce(other) - self

    def __mul__(self, other):
        other = _coerce(other)
        a, b, variables = self._aligned(other)
        terms: Dict[Exponents, int] = {}
        for ea, ca in a.terms.items():
            for eb, cb in b.terms.items():
                e = tuple(x + y for x, y in zip(ea, eb))
                terms[e] = terms.get(e, 0) + ca * cb
        return Polynomial(variables, terms)

    __rmul__ = __mul__

    def __pow__(self, n: int):
        if not isinstance(n, int) or n < 0:
            raise ValueError("exponent must be a non-negative integer")
        result = Polynomial(self.variables, {(0,) * self.nvars: 1})
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def __call__(self, *point: int) -> int:
        return evaluate(self, point)


def _coerce(x) -> Polynomial:
    if isinstance(x, Polynomial):
        return x
    if isinstance(x, int):
        return Polynomial.constant(x)
    raise TypeError(f"cannot use {type(x).__name__} as a polynomial")


def _drop_unused(p: Polynomial) -> Polynomial:
    used = [i for i in range(p.nvars) if any(e[i] for e in p.terms)]
    if len(used) == p.nvars:
        return p
    return p.with_variables([p.variables[i] for i in used])


# parsing

_TOKEN = re.compile(r"\s*(?:(\d+)|([A-Za-z][A-Za-z0-9_]*)|(.))")


def _tokenize(text: str) -> List[Tuple[str, str, int]]:
    tokens = []
    pos = 0
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if m.end() == pos or m.lastindex is None:
            break  # trailing whitespace
        start = m.start(m.lastindex)
        if m.group(1) is not None:
            tokens.append(("nat", m.group(1), start))
        elif m.group(2) is not None:
            tokens.append(("ident", m.group(2), start))
        else:
            ch = m.group(3)
            if ch not in "+-*^()":
                raise ParseError(f"unexpected character {ch!r}", start)
            tokens.append((ch, ch, start))
        pos = m.end()
    tokens.append(("end", "", len(text)))
    return tokens


class _Parser:
    def __init__(self, text: str):
        self.tokens = _tokenize(text)
        self.i = 0
        self.order: List[str] = []

    def peek(self):
        return self.tokens[self.i]

    def take(self):
        tok = self.tokens[self.i]
        self.i += 1
        return tok

    def expect(self, kind: str):
        tok = self.take()
        if tok[0] != kind:
            what = "end of input" if tok[0] == "end" else repr(tok[1])
            raise ParseError(f"expected {kind!r}, found {what}", tok[2])
        return tok

    def expr(self) -> Polynomial:
        p = self.term()
        while self.peek()[0] in "+-" and self.peek()[0] != "end":
            op = self.take()[0]
            q = self.term()
            p = p + q if op == "+" else p - q
        return p

    def term(self) -> Polynomial:
        p = self.factor()
        while self.peek()[0] == "*":
            self.take()
            p = p * self.factor()
        return p

    def factor(self) -> Polynomial:
        b = self.base()
        if self.peek()[0] == "^":
            self.take()
            tok = self.take()
            if tok[0] != "nat":
                raise ParseError("exponent must be a non-negative integer literal", tok[2])
            b = b ** int(tok[1])
        return b

    def base(self) -> Polynomial:
        kind, value, pos = self.take()
        if kind == "nat":
            return Polynomial.constant(int(value))
        if kind == "ident":
            if value not in self.order:
                self.order.append(value)
            return Polynomial.variable(value)
        if kind == "(":
            p = self.expr()
            self.expect(")")
            return p
        if kind == "-":
            return -self.factor()
        what = "end of input" if kind == "end" else repr(value)
        raise ParseError(f"unexpected {what}", pos)


def parse(text: str) -> Polynomial:
    """Parse and fully expand ``text``; variables are ordered by first appearance.

    Variables whose terms all cancel are dropped from the result.
    """
    if not text or not text.strip():
        raise ParseError("empty input", 0)
    parser = _Parser(text)
    p = parser.expr()
    tok = parser.peek()
    if tok[0] != "end":
        if tok[0] in ("nat", "ident", "("):
            raise ParseError(f"unexpected {tok[1]!r} (implicit multiplication is not allowed)", tok[2])
        raise ParseError(f"unexpected {tok[1]!r}", tok[2])
    p = p.with_variables(parser.order)
    return _drop_unused(p)


# evaluation and printing

def evaluate(p: Polynomial, point: Sequence[int]) -> int:
    """Exact value of ``p`` at ``point`` (one integer per variable, in order)."""
    point = tuple(point)
    if len(point) != p.nvars:
        raise ValueError(f"point has {len(point)} coordinates, polynomial has {p.nvars} variables")
    total = 0
    for exps, c in p.terms.items():
        v = c
        for x, e in zip(point, exps):
            if e:
                v *= int(x) ** e
        total += v
    return total


def _grlex_key(exps: Exponents):
    return (-sum(exps), tuple(-e for e in exps))


def sorted_terms(p: Polynomial) -> List[Tuple[Exponents, int]]:
    """Terms in graded-lex order: highest total degree first, ties by variable order."""
    return sorted(p.terms.items(), key=lambda item: _grlex_key(item[0]))


def _monomial(variables: Sequence[str], exps: Exponents) -> str:
    parts = []
    for v, e in zip(variables, exps):
        if e == 1:
            parts.append(v)
        elif e > 1:
            parts.append(f"{v}^{e}")
    return "*".join(parts)


def print_canonical(p: Polynomial) -> str:
    if p.is_zero():
        return "0"
    out = []
    for i, (exps, c) in enumerate(sorted_terms(p)):
        mono = _monomial(p.variables, exps)
        mag = abs(c)
        if not mono:
            body = str(mag)
        elif mag == 1:
            body = mono
        else:
            body = f"{mag}*{mono}"
        if i == 0:
            out.append(("-" if c < 0 else "") + body)
        else:
            out.append((" - " if c < 0 else " + ") + body)
    return "".join(out)


def _fresh_names(variables: Iterable[str]) -> List[str]:
    taken = set(variables)
    names = []
    for v in variables:
        name = f"{v}_root"
        while name in taken:
            name += "_"
        taken.add(name)
        names.append(name)
    return names


def to_hilbert_tenth_instance(p: Polynomial, root_names: Sequence[str] | None = None) -> Polynomial:
    """Single polynomial D(x)^2 + sum_i (x_i - y_i^2)^2 over (x_1..x_k, y_1..y_k).

    Its integer zeros are exactly the points where D(x) = 0 and every x_i is a
    perfect square y_i^2. The y's get fresh names unless ``root_names`` is given.
    """
    if p.nvars < 1:
        raise ValueError("polynomial must have at least one variable")
    roots = list(root_names) if root_names is not None else _fresh_names(p.variables)
    if len(roots) != p.nvars or set(roots) & set(p.variables) or len(set(roots)) != len(roots):
        raise ValueError(f"root names {roots} must be {p.nvars} fresh distinct identifiers")
    variables = p.variables + tuple(roots)
    result = p.with_variables(variables) ** 2
    for x, y in zip(p.variables, roots):
        diff = Polynomial.variable(x) - Polynomial.variable(y) ** 2
        result = result + diff.with_variables(variables) ** 2
    return result.with_variables(variables)
