"""Relation ideals: division, reduced Groebner bases over Q, and a
monomial-ideal path that works over any rig."""

from __future__ import annotations

import functools
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Sequence

from .symcore import (
    Monomial,
    Polynomial,
    Rig,
    RigError,
    mono_div,
    mono_divides,
    mono_lcm,
)

__all__ = [
    "TermOrder",
    "IdealPresentation",
    "GroebnerBasis",
    "UnsupportedIdealError",
    "reduce",
    "buchberger",
    "ideal_member",
    "monomial_ideal_member",
    "normal_form",
    "is_unit_monomial",
]

GREVLEX = "grevlex"
LEX = "lex"


class UnsupportedIdealError(RigError):
    """Membership over N or Z with a non-monomial generator."""


@dataclass(frozen=True)
class TermOrder:
    kind: str = GREVLEX
    variables: tuple = ()

    def __post_init__(self):
        if self.kind not in (GREVLEX, LEX):
            raise ValueError(f"unknown term order {self.kind!r}")
        object.__setattr__(self, "variables", tuple(dict.fromkeys(self.variables)))

    def extended(self, names: Iterable[str]) -> "TermOrder":
        missing = sorted(set(names) - set(self.variables))
        if not missing:
            return self
        return TermOrder(self.kind, self.variables + tuple(missing))

    def key(self, mono: Monomial):
        exps = dict(mono)
        unknown = set(exps) - set(self.variables)
        if unknown:
            raise ValueError(f"variables {sorted(unknown)} are not in the term order")
        vec = [exps.get(v, 0) for v in self.variables]
        if self.kind == LEX:
            return tuple(vec)
        return (sum(vec), tuple(-e for e in reversed(vec)))

    def leading(self, f: Polynomial):
        """(monomial, coefficient) of the largest term of a nonzero ``f``."""
        mono = max((m for m, _ in f.items()), key=self.key)
        return mono, f.coefficient(mono)


def is_unit_monomial(f: Polynomial) -> bool:
    """A single term whose coefficient is a unit of the rig."""
    if len(f) != 1:
        return False
    ((_, c),) = f.items()
    if f.rig is Rig.RAT:
        return c != 0
    if f.rig is Rig.INT:
        return c in (1, -1)
    return c == 1


@dataclass(frozen=True)
class IdealPresentation:
    generators: tuple
    rig: Rig = Rig.RAT

    def __post_init__(self):
        gens = tuple(self.generators)
        object.__setattr__(self, "generators", gens)
        object.__setattr__(self, "rig", Rig.parse(self.rig))
        for g in gens:
            if not isinstance(g, Polynomial):
                raise TypeError(f"ideal generator {g!r} is not a Polynomial")
            if g.rig is not self.rig:
                raise RigError(f"generator {g} lives over {g.rig.value}, ideal over {self.rig.value}")
            if self.rig is Rig.NAT and not g.is_zero() and not is_unit_monomial(g):
                raise UnsupportedIdealError(f"relations over N must be monomials, got {g}")

    @property
    def is_monomial(self) -> bool:
        return all(g.is_zero() or is_unit_monomial(g) for g in self.generators)

    def monomials(self) -> tuple:
        return tuple(next(iter(g.terms)) for g in self.generators if not g.is_zero())

    def variables(self) -> frozenset:
        out: set = set()
        for g in self.generators:
            out |= g.variables()
        return frozenset(out)

    def contains(self, f: Polynomial) -> bool:
        return ideal_member(f, self)

    def normal_form(self, f: Polynomial, order: TermOrder = TermOrder()) -> Polynomial:
        return normal_form(f, self, order)


@dataclass(frozen=True)
class GroebnerBasis:
    basis: tuple
    order: TermOrder = field(default_factory=TermOrder)

    def reduce(self, f: Polynomial) -> Polynomial:
        return reduce(f, self.basis, self.order)


# ---------- division ----------

def _check_shared(f: Polynomial, basis: Sequence[Polynomial]) -> None:
    for g in basis:
        if g.rig is not f.rig:
            raise RigError(f"rig mismatch: {f.rig.value} vs {g.rig.value}")


def reduce(f: Polynomial, basis: Sequence[Polynomial], order: TermOrder = TermOrder()) -> Polynomial:
    """Full multivariate division remainder of ``f`` by ``basis``."""
    basis = [g for g in basis if not g.is_zero()]
    _check_shared(f, basis)
    if not basis:
        return f
    if all(is_unit_monomial(g) for g in basis):
        mons = [next(iter(g.terms)) for g in basis]
        return f.drop_terms(lambda m: any(mono_divides(g, m) for g in mons))
    if f.rig is not Rig.RAT:
        raise UnsupportedIdealError(f"division by non-monomial generators needs Q, not {f.rig.value}")
    names = set(f.variables())
    for g in basis:
        names |= g.variables()
    order = order.extended(names)
    key = order.key
    lead = [order.leading(g) for g in basis]
    rest = _to_dict(f)
    rem: dict = {}
    gdicts = [_to_dict(g) for g in basis]
    while rest:
        m = max(rest, key=key)
        c = rest[m]
        for (lm, lc), g in zip(lead, gdicts):
            if mono_divides(lm, m):
                q = mono_div(m, lm)
                factor = c / lc
                for gm, gc in g.items():
                    tm = _mul(gm, q)
                    val = rest.get(tm, 0) - factor * gc
                    if val:
                        rest[tm] = val
                    else:
                        rest.pop(tm, None)
                break
        else:
            rem[m] = c
            del rest[m]
    return Polynomial(Rig.RAT, rem)


def _to_dict(f: Polynomial) -> dict:
    return dict(f.items())


def _mul(a: Monomial, b: Monomial) -> Monomial:
    if not b:
        return a
    if not a:
        return b
    exps = dict(a)
    for v, e in b:
        exps[v] = exps.get(v, 0) + e
    return tuple(sorted(exps.items()))


# ---------- Buchberger ----------

def _spoly(f: dict, lf, g: dict, lg) -> dict:
    (mf, cf), (mg, cg) = lf, lg
    lcm = mono_lcm(mf, mg)
    uf, ug = mono_div(lcm, mf), mono_div(lcm, mg)
    out: dict = {}
    for m, c in f.items():
        tm = _mul(m, uf)
        out[tm] = out.get(tm, 0) + c / cf
    for m, c in g.items():
        tm = _mul(m, ug)
        out[tm] = out.get(tm, 0) - c / cg
    return {m: c for m, c in out.items() if c}


def _reduce_dict(p: dict, basis: list, key) -> dict:
    rest = dict(p)
    rem: dict = {}
    while rest:
        m = max(rest, key=key)
        c = rest[m]
        for g, (lm, lc) in basis:
            if mono_divides(lm, m):
                q = mono_div(m, lm)
                factor = c / lc
                for gm, gc in g.items():
                    tm = _mul(gm, q)
                    val = rest.get(tm, 0) - factor * gc
                    if val:
                        rest[tm] = val
                    else:
                        rest.pop(tm, None)
                break
        else:
            rem[m] = c
            del rest[m]
    return rem


def _lead(p: dict, key):
    m = max(p, key=key)
    return m, p[m]


@functools.lru_cache(maxsize=512)
def _completed(generators: tuple, order: TermOrder) -> tuple:
    names: set = set()
    for g in generators:
        names |= g.variables()
    order = order.extended(names)
    key = order.key
    basis: list = []
    for g in generators:
        if g.is_zero():
            continue
        d = {m: Fraction(c) for m, c in g.items()}
        basis.append((d, _lead(d, key)))
    pairs = {(i, j) for j in range(len(basis)) for i in range(j)}

    def lcm_of(i, j):
        return mono_lcm(basis[i][1][0], basis[j][1][0])

    while pairs:
        # normal selection: smallest lcm first, ties broken by index
        i, j = min(pairs, key=lambda p: (key(lcm_of(*p)), p))
        pairs.discard((i, j))
        li, lj = basis[i][1][0], basis[j][1][0]
        lcm = mono_lcm(li, lj)
        if _coprime(li, lj):
            continue
        if _chain_skips(i, j, lcm, basis, pairs):
            continue
        s = _spoly(basis[i][0], basis[i][1], basis[j][0], basis[j][1])
        if not s:
            continue
        r = _reduce_dict(s, basis, key)
        if r:
            k = len(basis)
            basis.append((r, _lead(r, key)))
            pairs |= {(i2, k) for i2 in range(k)}
    return _interreduce(basis, key)


def _coprime(a: Monomial, b: Monomial) -> bool:
    return not (set(v for v, _ in a) & set(v for v, _ in b))


def _chain_skips(i, j, lcm, basis, pending) -> bool:
    for k in range(len(basis)):
        if k in (i, j):
            continue
        if not mono_divides(basis[k][1][0], lcm):
            continue
        if (min(i, k), max(i, k)) not in pending and (min(j, k), max(j, k)) not in pending:
            return True
    return False


def _interreduce(basis: list, key) -> tuple:
    # drop elements whose leading monomial is divisible by another's
    items = sorted(basis, key=lambda b: key(b[1][0]))
    minimal: list = []
    for g, (lm, lc) in items:
        if any(mono_divides(h[1][0], lm) for h in minimal):
            continue
        minimal.append((g, (lm, lc)))
    reduced = []
    for idx, (g, (lm, lc)) in enumerate(minimal):
        others = [b for k, b in enumerate(minimal) if k != idx]
        tail = {m: c for m, c in g.items() if m != lm}
        tail = _reduce_dict(tail, others, key)
        poly = {lm: Fraction(1)}
        for m, c in tail.items():
            poly[m] = c / lc
        reduced.append((lm, Polynomial(Rig.RAT, poly)))
    reduced.sort(key=lambda t: key(t[0]), reverse=True)
    return tuple(p for _, p in reduced)


def buchberger(ideal: IdealPresentation, order: TermOrder = TermOrder()) -> GroebnerBasis:
    """Reduced, monic Groebner basis, sorted by descending leading monomial."""
    if ideal.rig is not Rig.RAT:
        if ideal.is_monomial:
            return GroebnerBasis(_minimal_monomials(ideal), order)
        raise UnsupportedIdealError(f"Groebner bases need Q scalars, not {ideal.rig.value}")
    names = ideal.variables()
    order = order.extended(names)
    return GroebnerBasis(_completed(ideal.generators, order), order)


def _minimal_monomials(ideal: IdealPresentation) -> tuple:
    mons = sorted(set(ideal.monomials()), key=lambda m: (sum(e for _, e in m), m))
    keep: list = []
    for m in mons:
        if not any(mono_divides(k, m) for k in keep):
            keep.append(m)
    return tuple(Polynomial(ideal.rig, {m: 1}) for m in keep)


# ---------- membership ----------

def monomial_ideal_member(f: Polynomial, gens: Sequence[Monomial]) -> bool:
    gens = [tuple(sorted(dict(g).items())) for g in gens]
    return all(any(mono_divides(g, m) for g in gens) for m, _ in f.items())


def normal_form(f: Polynomial, ideal: IdealPresentation, order: TermOrder = TermOrder()) -> Polynomial:
    if f.rig is not ideal.rig:
        raise RigError(f"rig mismatch: {f.rig.value} vs {ideal.rig.value}")
    if ideal.is_monomial:
        mons = ideal.monomials()
        return f.drop_terms(lambda m: any(mono_divides(g, m) for g in mons))
    if ideal.rig is not Rig.RAT:
        raise UnsupportedIdealError(
            f"membership over {ideal.rig.value} is only available for monomial relations")
    gb = buchberger(ideal, order)
    return reduce(f, gb.basis, gb.order)


def in_generator_span(f: Polynomial, generators: Sequence[Polynomial]) -> bool:
    """True iff ``f`` is a Q-linear combination of ``generators``.  A cheap
    sufficient test for membership; exact Gaussian elimination."""
    support = _monos(f)
    pool = [g for g in generators if not g.is_zero()]
    relevant: list = []
    grew = True
    while grew:
        grew = False
        for g in pool:
            if g not in relevant and _monos(g) & support:
                relevant.append(g)
                support |= _monos(g)
                grew = True
    if not relevant:
        return f.is_zero()
    monos = sorted(support)
    index = {m: i for i, m in enumerate(monos)}
    # columns are generators plus f; rows are monomials
    rows = [[Fraction(0)] * (len(relevant) + 1) for _ in monos]
    for j, g in enumerate(relevant):
        for m, c in g.items():
            rows[index[m]][j] = Fraction(c)
    for m, c in f.items():
        rows[index[m]][-1] = Fraction(c)
    return _consistent(rows, len(relevant))


def _monos(g: Polynomial) -> set:
    return set(m for m, _ in g.items())


def _consistent(rows: list, ncols: int) -> bool:
    r = 0
    for col in range(ncols):
        pivot = next((i for i in range(r, len(rows)) if rows[i][col]), None)
        if pivot is None:
            continue
        rows[r], rows[pivot] = rows[pivot], rows[r]
        pr = rows[r]
        for i in range(len(rows)):
            if i != r and rows[i][col]:
                factor = rows[i][col] / pr[col]
                rows[i] = [a - factor * b for a, b in zip(rows[i], pr)]
        r += 1
    return all(row[-1] == 0 for row in rows[r:])


def ideal_member(f: Polynomial, ideal: IdealPresentation) -> bool:
    if f.is_zero():
        return True
    if f.rig is Rig.RAT and not ideal.is_monomial and in_generator_span(f, ideal.generators):
        return True
    return normal_form(f, ideal).is_zero()
