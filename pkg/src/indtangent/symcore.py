"""Exact multivariate polynomials over the commutative rigs N, Z and Q.

A monomial is a tuple of ``(variable, exponent)`` pairs sorted by variable
name, with no zero exponents; ``()`` is the monomial 1.  A polynomial is an
immutable mapping from monomials to nonzero coefficients together with a rig
tag.  Coefficients are plain ``int`` (N, Z) or ``fractions.Fraction`` (Q).
"""

from __future__ import annotations

import enum
import re
from fractions import Fraction
from typing import Iterable, Mapping, Sequence, Union

Scalar = Union[int, Fraction]
Monomial = tuple  # tuple[tuple[str, int], ...]

__all__ = [
    "Rig",
    "RigError",
    "ParseError",
    "SubstitutionError",
    "Polynomial",
    "coerce",
    "parse_poly",
    "poly_mul",
    "poly_substitute",
    "partial_derivative",
    "poly_eval",
    "mono_mul",
    "mono_divides",
    "mono_div",
    "mono_lcm",
    "mono_degree",
    "grevlex_key",
]


class Rig(str, enum.Enum):
    NAT = "N"
    INT = "Z"
    RAT = "Q"

    @classmethod
    def parse(cls, text: Union[str, "Rig"]) -> "Rig":
        if isinstance(text, Rig):
            return text
        key = str(text).strip().upper()
        aliases = {"N": cls.NAT, "NAT": cls.NAT, "Z": cls.INT, "INT": cls.INT,
                   "Q": cls.RAT, "RAT": cls.RAT}
        try:
            return aliases[key]
        except KeyError:
            raise ValueError(f"unknown rig {text!r}; expected N, Z or Q") from None

    @property
    def has_negatives(self) -> bool:
        return self is not Rig.NAT


class RigError(ValueError):
    """Rig mismatch, or an operation the rig cannot represent."""


class ParseError(ValueError):
    def __init__(self, message: str, text: str = "", position: int = 0):
        self.text = text
        self.position = position
        super().__init__(f"{message} at position {position}" if text else message)


class SubstitutionError(KeyError):
    pass


def coerce(value, rig: Rig) -> Scalar:
    """Convert ``value`` into the exact scalar type used by ``rig``."""
    if isinstance(value, bool):
        raise RigError("booleans are not rig scalars")
    if rig is Rig.RAT:
        if isinstance(value, (int, Fraction)):
            return Fraction(value)
        raise RigError(f"cannot use {value!r} as a rational scalar")
    if isinstance(value, Fraction):
        if value.denominator != 1:
            raise RigError(f"{value} is not an element of {rig.value}")
        value = value.numerator
    if not isinstance(value, int):
        raise RigError(f"cannot use {value!r} as a scalar of {rig.value}")
    if rig is Rig.NAT and value < 0:
        raise RigError(f"{value} is negative; N has no negatives")
    return value


# ---------- monomials ----------

def mono_mul(a: Monomial, b: Monomial) -> Monomial:
    if not a:
        return b
    if not b:
        return a
    exps = dict(a)
    for v, e in b:
        exps[v] = exps.get(v, 0) + e
    return tuple(sorted(exps.items()))


def mono_divides(a: Monomial, b: Monomial) -> bool:
    """True iff ``a`` divides ``b``."""
    if len(a) > len(b):
        return False
    eb = dict(b)
    return all(eb.get(v, 0) >= e for v, e in a)


def mono_div(b: Monomial, a: Monomial) -> Monomial:
    """The quotient ``b / a``; ``a`` must divide ``b``."""
    exps = dict(b)
    for v, e in a:
        rest = exps[v] - e
        if rest < 0:
            raise ValueError("monomial does not divide")
        if rest:
            exps[v] = rest
        else:
            del exps[v]
    return tuple(sorted(exps.items()))


def mono_lcm(a: Monomial, b: Monomial) -> Monomial:
    exps = dict(a)
    for v, e in b:
        if e > exps.get(v, 0):
            exps[v] = e
    return tuple(sorted(exps.items()))


def mono_degree(m: Monomial) -> int:
    return sum(e for _, e in m)


def grevlex_key(m: Monomial, variables: Sequence[str]):
    """Sort key: larger key means larger monomial in grevlex with
    ``variables[0] > variables[1] > ...``."""
    exps = dict(m)
    vec = [exps.get(v, 0) for v in variables]
    return (sum(vec), tuple(-e for e in reversed(vec)))


# ---------- polynomials ----------

class Polynomial:
    """An immutable polynomial in canonical form."""

    __slots__ = ("rig", "_terms", "_hash")

    def __init__(self, rig: Rig, terms: Mapping[Monomial, Scalar] = (), *, _trusted: bool = False):
        self.rig = Rig.parse(rig)
        if _trusted:
            self._terms = dict(terms)
        else:
            clean = {}
            for mono, c in dict(terms).items():
                mono = _normalize_monomial(mono)
                c = coerce(c, self.rig)
                total = clean.get(mono, 0) + c
                if total:
                    clean[mono] = total
                else:
                    clean.pop(mono, None)
            self._terms = clean
        self._hash = None

    # constructors
    @classmethod
    def zero(cls, rig: Rig) -> "Polynomial":
        return cls(rig, {}, _trusted=True)

    @classmethod
    def const(cls, value, rig: Rig) -> "Polynomial":
        rig = Rig.parse(rig)
        c = coerce(value, rig)
        return cls(rig, {(): c} if c else {}, _trusted=True)

    @classmethod
    def var(cls, name: str, rig: Rig) -> "Polynomial":
        rig = Rig.parse(rig)
        _check_name(name)
        return cls(rig, {((name, 1),): coerce(1, rig)}, _trusted=True)

    @classmethod
    def monomial(cls, mono: Monomial, coeff, rig: Rig) -> "Polynomial":
        return cls(rig, {mono: coeff})

    # basic access
    @property
    def terms(self) -> dict:
        return dict(self._terms)

    def items(self):
        return self._terms.items()

    def __len__(self) -> int:
        return len(self._terms)

    def is_zero(self) -> bool:
        return not self._terms

    def is_constant(self) -> bool:
        return all(not m for m in self._terms)

    def is_monomial(self) -> bool:
        return len(self._terms) == 1

    def constant_term(self) -> Scalar:
        return self._terms.get((), coerce(0, self.rig))

    def coefficient(self, mono: Monomial) -> Scalar:
        return self._terms.get(_normalize_monomial(mono), coerce(0, self.rig))

    def variables(self) -> frozenset:
        return frozenset(v for m in self._terms for v, _ in m)

    def degree(self) -> int:
        """Total degree; -1 for the zero polynomial."""
        return max((mono_degree(m) for m in self._terms), default=-1)

    def degree_in(self, var: str) -> int:
        return max((dict(m).get(var, 0) for m in self._terms), default=-1)

    def is_homogeneous_linear(self) -> bool:
        return all(mono_degree(m) == 1 for m in self._terms)

    # equality and hashing
    def __eq__(self, other) -> bool:
        if not isinstance(other, Polynomial):
            return NotImplemented
        return self.rig is other.rig and self._terms == other._terms

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash((self.rig, frozenset(self._terms.items())))
        return self._hash

    def __bool__(self) -> bool:
        return bool(self._terms)

    # arithmetic
    def _lift(self, other) -> "Polynomial":
        if isinstance(other, Polynomial):
            if other.rig is not self.rig:
                raise RigError(f"rig mismatch: {self.rig.value} vs {other.rig.value}")
            return other
        return Polynomial.const(other, self.rig)

    def __add__(self, other) -> "Polynomial":
        other = self._lift(other)
        if len(other._terms) > len(self._terms):
            big, small = other._terms, self._terms
        else:
            big, small = self._terms, other._terms
        out = dict(big)
        for m, c in small.items():
            total = out.get(m, 0) + c
            if total:
                out[m] = total
            else:
                del out[m]
        return Polynomial(self.rig, out, _trusted=True)

    __radd__ = __add__

    def __neg__(self) -> "Polynomial":
        if not self.rig.has_negatives and self._terms:
            raise RigError("negation is not available over N")
        return Polynomial(self.rig, {m: -c for m, c in self._terms.items()}, _trusted=True)

    def __sub__(self, other) -> "Polynomial":
        other = self._lift(other)
        if not self.rig.has_negatives:
            raise RigError("subtraction is not available over N")
        return self + (-other)

    def __rsub__(self, other) -> "Polynomial":
        return self._lift(other) - self

    def scale(self, c) -> "Polynomial":
        c = coerce(c, self.rig)
        if not c:
            return Polynomial.zero(self.rig)
        return Polynomial(self.rig, {m: c * v for m, v in self._terms.items()}, _trusted=True)

    def __mul__(self, other) -> "Polynomial":
        if not isinstance(other, Polynomial):
            return self.scale(other)
        other = self._lift(other)
        if not self._terms or not other._terms:
            return Polynomial.zero(self.rig)
        out: dict = {}
        for m1, c1 in self._terms.items():
            for m2, c2 in other._terms.items():
                m = mono_mul(m1, m2)
                total = out.get(m, 0) + c1 * c2
                if total:
                    out[m] = total
                else:
                    out.pop(m, None)
        return Polynomial(self.rig, out, _trusted=True)

    __rmul__ = __mul__

    def __pow__(self, k: int) -> "Polynomial":
        if not isinstance(k, int) or k < 0:
            raise ValueError("exponent must be a nonnegative integer")
        result = Polynomial.const(1, self.rig)
        base = self
        while k:
            if k & 1:
                result = result * base
            k >>= 1
            if k:
                base = base * base
        return result

    # calculus and substitution
    def diff(self, var: str) -> "Polynomial":
        out: dict = {}
        for m, c in self._terms.items():
            exps = dict(m)
            e = exps.get(var, 0)
            if not e:
                continue
            if e == 1:
                del exps[var]
            else:
                exps[var] = e - 1
            mono = tuple(sorted(exps.items()))
            out[mono] = out.get(mono, 0) + c * e
        return Polynomial(self.rig, {m: c for m, c in out.items() if c}, _trusted=True)

    def substitute(self, assignment: Mapping[str, "Polynomial"], strict: bool = True) -> "Polynomial":
        """Simultaneous substitution.  With ``strict`` every variable needs an
        image; otherwise unmapped variables are left alone."""
        images = {}
        for v in self.variables():
            if v in assignment:
                img = assignment[v]
                if not isinstance(img, Polynomial):
                    img = Polynomial.const(img, self.rig)
                elif img.rig is not self.rig:
                    raise RigError(f"image of {v} lives over {img.rig.value}, not {self.rig.value}")
                images[v] = img
            elif strict:
                raise SubstitutionError(f"no image for variable {v!r}")
            else:
                images[v] = Polynomial.var(v, self.rig)
        powers: dict = {}

        def power(v, e):
            key = (v, e)
            if key not in powers:
                powers[key] = images[v] if e == 1 else images[v] ** e
            return powers[key]

        acc: dict = {}
        for m, c in self._terms.items():
            term = Polynomial(self.rig, {(): c}, _trusted=True)
            for v, e in m:
                term = term * power(v, e)
            for tm, tc in term._terms.items():
                total = acc.get(tm, 0) + tc
                if total:
                    acc[tm] = total
                else:
                    acc.pop(tm, None)
        return Polynomial(self.rig, acc, _trusted=True)

    def rename(self, mapping: Mapping[str, str]) -> "Polynomial":
        out: dict = {}
        for m, c in self._terms.items():
            exps: dict = {}
            for v, e in m:
                w = mapping.get(v, v)
                exps[w] = exps.get(w, 0) + e
            mono = tuple(sorted(exps.items()))
            out[mono] = out.get(mono, 0) + c
        return Polynomial(self.rig, {m: c for m, c in out.items() if c}, _trusted=True)

    def evaluate(self, point: Mapping[str, Scalar]) -> Scalar:
        total = coerce(0, self.rig)
        for m, c in self._terms.items():
            value = c
            for v, e in m:
                if v not in point:
                    raise SubstitutionError(f"no value for variable {v!r}")
                value = value * coerce(point[v], self.rig) ** e
            total = total + value
        return total

    def drop_terms(self, predicate) -> "Polynomial":
        return Polynomial(self.rig, {m: c for m, c in self._terms.items() if not predicate(m)},
                          _trusted=True)

    # printing
    def sorted_terms(self, order: Sequence[str] = ()):
        """Terms in descending grevlex order over ``order`` followed by the
        remaining variables sorted by name."""
        variables = _variable_order(order, self.variables())
        return sorted(self._terms.items(), key=lambda t: grevlex_key(t[0], variables), reverse=True)

    def to_str(self, order: Sequence[str] = ()) -> str:
        if not self._terms:
            return "0"
        variables = _variable_order(order, self.variables())
        rank = {v: i for i, v in enumerate(variables)}
        pieces = []
        for mono, c in self.sorted_terms(variables):
            factors = [v if e == 1 else f"{v}^{e}" for v, e in sorted(mono, key=lambda t: rank[t[0]])]
            negative = c < 0
            mag = -c if negative else c
            if mag == 1 and factors:
                body = "*".join(factors)
            else:
                body = "*".join([_format_scalar(mag)] + factors)
            pieces.append((negative, body))
        neg, body = pieces[0]
        out = ("-" if neg else "") + body
        for neg, body in pieces[1:]:
            out += (" - " if neg else " + ") + body
        return out

    def __str__(self) -> str:
        return self.to_str()

    def __repr__(self) -> str:
        return f"Polynomial({self.rig.value}, {self.to_str()!r})"


def _format_scalar(c: Scalar) -> str:
    if isinstance(c, Fraction) and c.denominator != 1:
        return f"{c.numerator}/{c.denominator}"
    return str(int(c))


def _variable_order(order: Sequence[str], present: Iterable[str]) -> list:
    listed = list(dict.fromkeys(order))
    seen = set(listed)
    return listed + sorted(v for v in present if v not in seen)


_NAME_RE = re.compile(r"[A-Za-z][A-Za-z0-9_]*\Z")


def _check_name(name: str) -> None:
    if not isinstance(name, str) or not _NAME_RE.match(name):
        raise ValueError(f"invalid variable name {name!r}")


def _normalize_monomial(mono) -> Monomial:
    if isinstance(mono, Mapping):
        items = mono.items()
    else:
        items = mono
    exps: dict = {}
    for v, e in items:
        if not isinstance(e, int) or e < 0:
            raise ValueError(f"bad exponent {e!r} for {v!r}")
        if e:
            _check_name(v)
            exps[v] = exps.get(v, 0) + e
    return tuple(sorted(exps.items()))


# ---------- parser ----------

_TOKEN_RE = re.compile(r"\s*(?:(\d+)|([A-Za-z][A-Za-z0-9_]*)|(.))")


def _tokenize(text: str):
    tokens = []
    pos = 0
    while text[pos:].strip():
        m = _TOKEN_RE.match(text, pos)
        start = m.start(m.lastindex)
        if m.group(1) is not None:
            tokens.append(("int", m.group(1), start))
        elif m.group(2) is not None:
            tokens.append(("name", m.group(2), start))
        else:
            ch = m.group(3)
            if ch not in "+-*^/()":
                raise ParseError(f"unexpected character {ch!r}", text, start)
            tokens.append((ch, ch, start))
        pos = m.end()
    tokens.append(("end", "", len(text)))
    return tokens


class _Parser:
    def __init__(self, text: str, rig: Rig):
        self.text = text
        self.rig = rig
        self.tokens = _tokenize(text)
        self.i = 0

    def peek(self):
        return self.tokens[self.i]

    def take(self, kind=None):
        tok = self.tokens[self.i]
        if kind is not None and tok[0] != kind:
            what = "end of input" if tok[0] == "end" else repr(tok[1])
            raise ParseError(f"expected {kind!r}, found {what}", self.text, tok[2])
        self.i += 1
        return tok

    def minus(self, tok):
        if self.rig is Rig.NAT:
            raise ParseError("'-' is not allowed over N", self.text, tok[2])

    def expr(self) -> Polynomial:
        negate = False
        if self.peek()[0] == "-":
            self.minus(self.take())
            negate = True
        acc = self.term()
        if negate:
            acc = -acc
        while self.peek()[0] in "+-" and self.peek()[0] != "end":
            tok = self.take()
            if tok[0] == "-":
                self.minus(tok)
                acc = acc - self.term()
            else:
                acc = acc + self.term()
        return acc

    def term(self) -> Polynomial:
        acc = self.factor()
        while self.peek()[0] == "*":
            self.take()
            acc = acc * self.factor()
        return acc

    def factor(self) -> Polynomial:
        base = self.atom()
        if self.peek()[0] == "^":
            self.take()
            tok = self.take("int")
            base = base ** int(tok[1])
        return base

    def atom(self) -> Polynomial:
        tok = self.peek()
        if tok[0] == "int":
            self.take()
            value = Fraction(int(tok[1]))
            if self.peek()[0] == "/":
                self.take()
                den = self.take("int")
                if int(den[1]) == 0:
                    raise ParseError("zero denominator", self.text, den[2])
                value = value / int(den[1])
            try:
                return Polynomial.const(value, self.rig)
            except RigError as exc:
                raise ParseError(str(exc), self.text, tok[2]) from None
        if tok[0] == "name":
            self.take()
            return Polynomial.var(tok[1], self.rig)
        if tok[0] == "(":
            self.take()
            inner = self.expr()
            self.take(")")
            return inner
        what = "end of input" if tok[0] == "end" else repr(tok[1])
        raise ParseError(f"unexpected {what}", self.text, tok[2])


def parse_poly(text: str, rig: Union[Rig, str] = Rig.RAT) -> Polynomial:
    """Parse ``text`` in the polynomial grammar::

        expr   := ['-'] term (('+'|'-') term)*
        term   := factor ('*' factor)*
        factor := atom ('^' natural)?
        atom   := rational | variable | '(' expr ')'
    """
    rig = Rig.parse(rig)
    if not text.strip():
        raise ParseError("empty polynomial", text, 0)
    parser = _Parser(text, rig)
    result = parser.expr()
    tok = parser.peek()
    if tok[0] != "end":
        raise ParseError(f"unexpected {tok[1]!r}", text, tok[2])
    return result


# ---------- functional API ----------

def poly_mul(f: Polynomial, g: Polynomial) -> Polynomial:
    if f.rig is not g.rig:
        raise RigError(f"rig mismatch: {f.rig.value} vs {g.rig.value}")
    return f * g


def poly_substitute(f: Polynomial, assignment: Mapping[str, Polynomial]) -> Polynomial:
    return f.substitute(assignment, strict=True)


def partial_derivative(f: Polynomial, var: str) -> Polynomial:
    return f.diff(var)


def poly_eval(f: Polynomial, point: Mapping[str, Scalar]) -> Scalar:
    return f.evaluate(point)
