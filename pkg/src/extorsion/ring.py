"""Polynomial rings over QQ: monomial orders, exact polynomials, text I/O."""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from typing import Dict, Iterable, Tuple

from gmpy2 import mpq

Monomial = Tuple[int, ...]

ORDER_NAMES = ("grevlex", "lex")


class ParseError(ValueError):
    """Malformed ring header, polynomial or matrix text."""

    def __init__(self, message: str, line: int = 1, column: int = 1):
        super().__init__(f"line {line}, column {column}: {message}")
        self.line = line
        self.column = column


class RingMismatchError(ValueError):
    pass


def QQ(value, den=None) -> mpq:
    """Coerce to an exact rational (gmpy2 mpq, always in lowest terms)."""
    if den is None:
        return mpq(value)
    return mpq(value, den)


@dataclass(frozen=True)
class MonomialOrder:
    """Monomial order: ``grevlex``, ``lex`` or an elimination block order.

    An elimination order is a product of grevlex orders on consecutive blocks
    of variables; the first block dominates.
    """

    kind: str = "grevlex"
    blocks: Tuple[int, ...] = ()

    def __post_init__(self):
        if self.kind not in ("grevlex", "lex", "elimination"):
            raise ValueError(f"unknown monomial order {self.kind!r}")
        if self.kind == "elimination" and (not self.blocks or min(self.blocks) < 1):
            raise ValueError("elimination order needs positive block sizes")

    @classmethod
    def parse(cls, text: str) -> "MonomialOrder":
        text = text.strip()
        if text in ORDER_NAMES:
            return cls(text)
        m = re.fullmatch(r"elim(?:ination)?\(\s*(\d+(?:\s*,\s*\d+)*)\s*\)", text)
        if m:
            return cls("elimination", tuple(int(b) for b in m.group(1).split(",")))
        raise ValueError(f"unknown monomial order {text!r}")

    def __str__(self):
        if self.kind == "elimination":
            return "elim(" + ",".join(map(str, self.blocks)) + ")"
        return self.kind

    def key_function(self, nvars: int):
        """Return ``exps -> sortable tuple``; larger tuple means larger monomial."""
        if self.kind == "lex":
            return lambda e: e
        if self.kind == "grevlex":
            return lambda e: (sum(e),) + tuple(-x for x in reversed(e))
        if sum(self.blocks) != nvars:
            raise ValueError("block sizes do not add up to the number of variables")
        bounds = []
        start = 0
        for b in self.blocks:
            bounds.append((start, start + b))
            start += b

        def key(e):
            out = []
            for lo, hi in bounds:
                part = e[lo:hi]
                out.append(sum(part))
                out.extend(-x for x in reversed(part))
            return tuple(out)

        return key


@dataclass(frozen=True)
class Ring:
    """The ring QQ[vars] with a fixed monomial order."""

    variables: Tuple[str, ...]
    order: MonomialOrder = MonomialOrder()
    _keycache: Dict = field(default_factory=dict, compare=False, repr=False, hash=False)

    def __post_init__(self):
        object.__setattr__(self, "variables", tuple(self.variables))
        if len(set(self.variables)) != len(self.variables):
            raise ValueError("duplicate variable names")
        for v in self.variables:
            if not re.fullmatch(r"[A-Za-z_][A-Za-z_0-9]*", v):
                raise ValueError(f"bad variable name {v!r}")
        object.__setattr__(self, "_keyfn", self.order.key_function(len(self.variables)))

    @property
    def nvars(self) -> int:
        return len(self.variables)

    def key(self, exps: Monomial):
        # memoised; dict writes are atomic so concurrent fills are harmless
        k = self._keycache.get(exps)
        if k is None:
            k = self._keyfn(exps)
            self._keycache[exps] = k
        return k

    @property
    def zero_monomial(self) -> Monomial:
        return (0,) * len(self.variables)

    def header(self) -> str:
        return f"ring QQ[{','.join(self.variables)}] order {self.order}"

    def __str__(self):
        return self.header()

    # constructors -----------------------------------------------------
    def zero(self) -> "Polynomial":
        return Polynomial(self, {})

    def one(self) -> "Polynomial":
        return self.const(1)

    def const(self, c) -> "Polynomial":
        c = QQ(c)
        return Polynomial(self, {self.zero_monomial: c} if c else {})

    def gens(self) -> Tuple["Polynomial", ...]:
        return tuple(self.var(i) for i in range(self.nvars))

    def var(self, i) -> "Polynomial":
        if isinstance(i, str):
            i = self.variables.index(i)
        e = [0] * self.nvars
        e[i] = 1
        return Polynomial(self, {tuple(e): QQ(1)})

    def monomial(self, exps, coeff=1) -> "Polynomial":
        c = QQ(coeff)
        return Polynomial(self, {tuple(exps): c} if c else {})

    def __call__(self, text) -> "Polynomial":
        if isinstance(text, Polynomial):
            if text.ring != self:
                raise RingMismatchError("polynomial from another ring")
            return text
        if isinstance(text, str):
            return parse_polynomial(self, text)
        return self.const(text)

    def with_order(self, order: MonomialOrder) -> "Ring":
        return Ring(self.variables, order)


class Polynomial:
    """Immutable element of QQ[vars]; ``terms`` maps exponent tuples to mpq."""

    __slots__ = ("ring", "terms", "_lead")

    def __init__(self, ring: Ring, terms: Dict[Monomial, mpq]):
        self.ring = ring
        self.terms = terms
        self._lead = None

    # basic queries ----------------------------------------------------
    def is_zero(self) -> bool:
        return not self.terms

    def __bool__(self):
        return bool(self.terms)

    def is_constant(self) -> bool:
        return not self.terms or (len(self.terms) == 1 and not any(next(iter(self.terms))))

    def _leading(self):
        if self._lead is None:
            if not self.terms:
                raise ValueError("zero polynomial has no leading term")
            key = self.ring.key
            self._lead = max(self.terms, key=key)
        return self._lead

    @property
    def LM(self) -> Monomial:
        return self._leading()

    @property
    def LC(self) -> mpq:
        return self.terms[self._leading()]

    def degree(self) -> int:
        return max((sum(e) for e in self.terms), default=-1)

    def sorted_terms(self):
        return sorted(self.terms.items(), key=lambda t: self.ring.key(t[0]), reverse=True)

    def monic(self) -> "Polynomial":
        if not self.terms:
            return self
        lc = self.LC
        if lc == 1:
            return self
        inv = 1 / lc
        return Polynomial(self.ring, {m: c * inv for m, c in self.terms.items()})

    def variables_used(self) -> Tuple[int, ...]:
        used = set()
        for e in self.terms:
            used.update(i for i, x in enumerate(e) if x)
        return tuple(sorted(used))

    # arithmetic -------------------------------------------------------
    def _coerce(self, other) -> "Polynomial":
        if isinstance(other, Polynomial):
            if other.ring != self.ring:
                raise RingMismatchError("polynomials live in different rings")
            return other
        if isinstance(other, (int, type(mpq(0)))) or hasattr(other, "numerator"):
            return self.ring.const(other)
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        out = dict(self.terms)
        for m, c in other.terms.items():
            s = out.get(m, 0) + c
            if s:
                out[m] = s
            else:
                out.pop(m, None)
        return Polynomial(self.ring, out)

    __radd__ = __add__

    def __neg__(self):
        return Polynomial(self.ring, {m: -c for m, c in self.terms.items()})

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return other - self

    def __mul__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        out: Dict[Monomial, mpq] = {}
        for m1, c1 in self.terms.items():
            for m2, c2 in other.terms.items():
                m = tuple(a + b for a, b in zip(m1, m2))
                s = out.get(m, 0) + c1 * c2
                if s:
                    out[m] = s
                else:
                    out.pop(m, None)
        return Polynomial(self.ring, out)

    __rmul__ = __mul__

    def __pow__(self, n: int):
        if n < 0:
            raise ValueError("negative power")
        result = self.ring.one()
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def scale(self, c) -> "Polynomial":
        c = QQ(c)
        if not c:
            return self.ring.zero()
        return Polynomial(self.ring, {m: v * c for m, v in self.terms.items()})

    def mul_monomial(self, exps: Monomial, c=1) -> "Polynomial":
        c = QQ(c)
        return Polynomial(
            self.ring,
            {tuple(a + b for a, b in zip(m, exps)): v * c for m, v in self.terms.items()} if c else {},
        )

    def __eq__(self, other):
        if isinstance(other, Polynomial):
            return self.ring == other.ring and self.terms == other.terms
        if isinstance(other, int) or hasattr(other, "numerator"):
            return self.terms == self.ring.const(other).terms
        return NotImplemented

    def __hash__(self):
        return hash((self.ring.variables, frozenset(self.terms.items())))

    def __repr__(self):
        return f"Polynomial({self})"

    def __str__(self):
        return format_polynomial(self)

    def evaluate(self, point) -> mpq:
        total = QQ(0)
        for e, c in self.terms.items():
            t = c
            for v, k in zip(point, e):
                if k:
                    t = t * QQ(v) ** k
            total += t
        return total


# ---------------------------------------------------------------------------
# text format

_HEADER = re.compile(r"\s*ring\s+(?P<coef>[A-Za-z]+)\s*\[(?P<vars>[^\]]*)\]\s*(?:order\s+(?P<order>\S.*?))?\s*$")


def parse_ring(header: str, line: int = 1) -> Ring:
    """Parse ``ring QQ[x,y,z] order grevlex``; the order clause defaults to grevlex."""
    m = _HEADER.match(header)
    if not m:
        col = len(header) - len(header.lstrip()) + 1
        raise ParseError("expected 'ring QQ[vars] order <name>'", line, col)
    if m.group("coef") != "QQ":
        raise ParseError(f"unsupported coefficient ring {m.group('coef')!r}", line, m.start("coef") + 1)
    names = [v.strip() for v in m.group("vars").split(",") if v.strip()]
    if not names:
        raise ParseError("ring needs at least one variable", line, m.start("vars") + 1)
    try:
        order = MonomialOrder.parse(m.group("order") or "grevlex")
        return Ring(tuple(names), order)
    except ValueError as exc:
        pos = m.start("order") + 1 if m.group("order") else m.start("vars") + 1
        raise ParseError(str(exc), line, pos) from None


_TOKEN = re.compile(r"\s*(?:(?P<num>\d+)|(?P<name>[A-Za-z_][A-Za-z_0-9]*)|(?P<op>[-+*/^]))")


def parse_polynomial(ring: Ring, text: str, line: int = 1) -> Polynomial:
    """Parse a polynomial in the ring's text grammar."""
    tokens = []
    pos = 0
    text = text.rstrip()
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if not m or m.end() == pos:
            raise ParseError(f"unexpected character {text[pos:pos + 1]!r}", line, pos + 1)
        start = m.start(m.lastgroup)
        tokens.append((m.lastgroup, m.group(m.lastgroup), start + 1))
        pos = m.end()
    if not tokens:
        raise ParseError("empty polynomial", line, 1)
    index = {v: i for i, v in enumerate(ring.variables)}
    result: Dict[Monomial, mpq] = {}
    i = 0
    n = len(tokens)

    def expect(kind, what):
        nonlocal i
        if i >= n or tokens[i][0] != kind:
            col = tokens[i][2] if i < n else len(text) + 1
            raise ParseError(f"expected {what}", line, col)
        tok = tokens[i]
        i += 1
        return tok

    first = True
    while i < n:
        sign = 1
        if tokens[i][0] == "op" and tokens[i][1] in "+-":
            sign = -1 if tokens[i][1] == "-" else 1
            i += 1
        elif not first:
            raise ParseError("expected '+' or '-'", line, tokens[i][2])
        first = False
        coeff = QQ(sign)
        exps = [0] * ring.nvars
        have_factor = False
        if i < n and tokens[i][0] == "num":
            num = int(tokens[i][1])
            i += 1
            den = 1
            if i < n and tokens[i][0] == "op" and tokens[i][1] == "/":
                i += 1
                den_tok = expect("num", "denominator")
                den = int(den_tok[1])
                if den == 0:
                    raise ParseError("zero denominator", line, den_tok[2])
            coeff *= QQ(num, den)
            have_factor = True
            if i < n and tokens[i][0] == "op" and tokens[i][1] == "*":
                i += 1
                if i >= n or tokens[i][0] != "name":
                    raise ParseError("expected variable after '*'", line,
                                     tokens[i][2] if i < n else len(text) + 1)
        while i < n and tokens[i][0] == "name":
            name, col = tokens[i][1], tokens[i][2]
            if name not in index:
                raise ParseError(f"unknown variable {name!r}", line, col)
            i += 1
            power = 1
            if i < n and tokens[i][0] == "op" and tokens[i][1] == "^":
                i += 1
                power = int(expect("num", "exponent")[1])
            exps[index[name]] += power
            have_factor = True
            if i < n and tokens[i][0] == "op" and tokens[i][1] == "*":
                i += 1
                if i >= n or tokens[i][0] != "name":
                    raise ParseError("expected variable after '*'", line,
                                     tokens[i][2] if i < n else len(text) + 1)
        if not have_factor:
            col = tokens[i][2] if i < n else len(text) + 1
            raise ParseError("expected a term", line, col)
        key = tuple(exps)
        s = result.get(key, 0) + coeff
        if s:
            result[key] = s
        else:
            result.pop(key, None)
    return Polynomial(ring, result)


def _format_monomial(ring: Ring, exps: Monomial) -> str:
    parts = []
    for name, k in zip(ring.variables, exps):
        if k == 1:
            parts.append(name)
        elif k > 1:
            parts.append(f"{name}^{k}")
    return "*".join(parts)


def format_polynomial(f: Polynomial) -> str:
    if not f.terms:
        return "0"
    out = []
    for idx, (exps, c) in enumerate(f.sorted_terms()):
        neg = c < 0
        a = -c if neg else c
        mono = _format_monomial(f.ring, exps)
        if not mono:
            body = str(a)
        elif a == 1:
            body = mono
        else:
            body = f"{a}*{mono}"
        if idx == 0:
            out.append(("-" if neg else "") + body)
        else:
            out.append((" - " if neg else " + ") + body)
    return "".join(out)


def parse_polynomials(ring: Ring, lines: Iterable[str]):
    return [parse_polynomial(ring, s) for s in lines]
