"""Polynomial maps between arities as a Cartesian differential category.

A map ``n -> m`` is an m-tuple of polynomials in ``x1..xn``.  The tangent
object of ``n`` is ``2n`` ordered as (tangent block; point block), so
``T(f)(v; a) = (Df(a)·v; f(a))``.  ``T(T(n))`` is ``4n`` ordered
``(dv, da, v, a)`` and the pullback ``T2(n)`` is ``3n`` ordered
``(v1, v2, a)``.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from typing import Mapping, Optional, Sequence

from .report import Report
from .symcore import Polynomial, Rig, RigError, mono_degree, parse_poly

__all__ = [
    "PolyMap",
    "TangentStructureMaps",
    "xvar",
    "pm_compose",
    "pm_identity",
    "pm_pair",
    "pm_add",
    "pm_scale",
    "pm_zero",
    "block",
    "cdc_D",
    "is_dlinear",
    "is_dlinear_syntactic",
    "tangent_T",
    "tangent_structure_maps",
    "random_polymap",
    "check_cd_axioms",
    "check_tangent_axioms",
]


def xvar(i: int) -> str:
    return f"x{i}"


def _names(n: int) -> list:
    return [xvar(i) for i in range(1, n + 1)]


@dataclass(frozen=True)
class PolyMap:
    src: int
    dst: int
    components: tuple
    rig: Rig = Rig.RAT

    def __post_init__(self):
        rig = Rig.parse(self.rig)
        object.__setattr__(self, "rig", rig)
        if self.src < 0 or self.dst < 0:
            raise ValueError("arities must be nonnegative")
        comps = []
        for c in self.components:
            if isinstance(c, (str, int)):
                c = parse_poly(str(c), rig)
            if c.rig is not rig:
                raise RigError(f"component {c} lives over {c.rig.value}, map over {rig.value}")
            comps.append(c)
        if len(comps) != self.dst:
            raise ValueError(f"expected {self.dst} components, got {len(comps)}")
        allowed = set(_names(self.src))
        for c in comps:
            extra = c.variables() - allowed
            if extra:
                raise ValueError(f"component {c} uses {sorted(extra)}, not among x1..x{self.src}")
        object.__setattr__(self, "components", tuple(comps))

    @classmethod
    def parse(cls, src: int, components: Sequence[str], rig=Rig.RAT) -> "PolyMap":
        rig = Rig.parse(rig)
        return cls(src, len(components), tuple(parse_poly(c, rig) for c in components), rig)

    def __call__(self, point: Sequence) -> tuple:
        env = dict(zip(_names(self.src), point))
        return tuple(c.evaluate(env) for c in self.components)

    def format(self, d_block: bool = False) -> list:
        """Component strings; with ``d_block`` the second half of the
        variables prints as y1..yk."""
        order = _names(self.src)
        if d_block:
            if self.src % 2:
                raise ValueError("d_block printing needs an even source arity")
            k = self.src // 2
            ren = {xvar(k + i): f"y{i}" for i in range(1, k + 1)}
            order = _names(k) + [f"y{i}" for i in range(1, k + 1)]
            return [c.rename(ren).to_str(order) for c in self.components]
        return [c.to_str(order) for c in self.components]

    def to_document(self, d_block: bool = False) -> dict:
        return {"rig": self.rig.value, "src": self.src, "dst": self.dst,
                "components": self.format(d_block)}

    @classmethod
    def from_document(cls, doc: Mapping) -> "PolyMap":
        rig = Rig.parse(doc.get("rig", "Q"))
        comps = [parse_poly(str(c), rig) for c in doc["components"]]
        return cls(int(doc["src"]), int(doc.get("dst", len(comps))), tuple(comps), rig)

    def __str__(self) -> str:
        return f"{self.src}->{self.dst} ({', '.join(self.format())})"


# ---------- category structure ----------

def pm_compose(psi: PolyMap, phi: PolyMap) -> PolyMap:
    """``psi ∘ phi``."""
    if phi.dst != psi.src:
        raise ValueError(f"arity mismatch: {phi.src}->{phi.dst} then {psi.src}->{psi.dst}")
    if phi.rig is not psi.rig:
        raise RigError("rig mismatch")
    assignment = {xvar(i + 1): c for i, c in enumerate(phi.components)}
    return PolyMap(phi.src, psi.dst, tuple(c.substitute(assignment) for c in psi.components), phi.rig)


def pm_identity(n: int, rig=Rig.RAT) -> PolyMap:
    rig = Rig.parse(rig)
    return PolyMap(n, n, tuple(Polynomial.var(v, rig) for v in _names(n)), rig)


def pm_pair(*maps: PolyMap, src: Optional[int] = None, rig=None) -> PolyMap:
    """Tupling ⟨f1, ..., fk⟩ of maps with a common source."""
    if not maps:
        return PolyMap(src or 0, 0, (), rig or Rig.RAT)
    s, r = maps[0].src, maps[0].rig
    for f in maps:
        if f.src != s or f.rig is not r:
            raise ValueError("tupled maps need a common source and rig")
    comps = tuple(c for f in maps for c in f.components)
    return PolyMap(s, len(comps), comps, r)


def pm_add(f: PolyMap, g: PolyMap) -> PolyMap:
    if (f.src, f.dst) != (g.src, g.dst):
        raise ValueError("cannot add maps with different arities")
    return PolyMap(f.src, f.dst, tuple(a + b for a, b in zip(f.components, g.components)), f.rig)


def pm_scale(c, f: PolyMap) -> PolyMap:
    return PolyMap(f.src, f.dst, tuple(p.scale(c) for p in f.components), f.rig)


def pm_zero(src: int, dst: int, rig=Rig.RAT) -> PolyMap:
    rig = Rig.parse(rig)
    return PolyMap(src, dst, (Polynomial.zero(rig),) * dst, rig)


def block(width: int, count: int, index: int, rig=Rig.RAT) -> PolyMap:
    """Projection ``count*width -> width`` onto block ``index`` (0-based)."""
    rig = Rig.parse(rig)
    start = index * width
    comps = tuple(Polynomial.var(xvar(start + i), rig) for i in range(1, width + 1))
    return PolyMap(width * count, width, comps, rig)


def blocks(width: int, count: int, picks: Sequence, rig=Rig.RAT) -> PolyMap:
    """Map ``count*width -> len(picks)*width``; each pick is a block index or
    ``None`` for a zero block."""
    rig = Rig.parse(rig)
    parts = []
    for p in picks:
        if p is None:
            parts.append(pm_zero(width * count, width, rig))
        else:
            parts.append(block(width, count, p, rig))
    return pm_pair(*parts, src=width * count, rig=rig)


# ---------- differential combinator ----------

def cdc_D(f: PolyMap) -> PolyMap:
    """``D(f): 2n -> m``; component j is the sum over i of d(f_j)/dx_i times x_{n+i}."""
    n, rig = f.src, f.rig
    direction = [Polynomial.var(xvar(n + i), rig) for i in range(1, n + 1)]
    comps = []
    for c in f.components:
        acc = Polynomial.zero(rig)
        for i, v in enumerate(_names(n)):
            dc = c.diff(v)
            if not dc.is_zero():
                acc = acc + dc * direction[i]
        comps.append(acc)
    return PolyMap(2 * n, f.dst, tuple(comps), rig)


def is_dlinear(f: PolyMap) -> bool:
    """``D(f)`` equals ``f`` read on the direction block."""
    return cdc_D(f) == pm_compose(f, block(f.src, 2, 1, f.rig))


def is_dlinear_syntactic(f: PolyMap) -> bool:
    return all(mono_degree(m) == 1 for c in f.components for m, _ in c.items())


def tangent_T(f: PolyMap) -> PolyMap:
    n, rig = f.src, f.rig
    swap = blocks(n, 2, (1, 0), rig)
    point = block(n, 2, 1, rig)
    return pm_pair(pm_compose(cdc_D(f), swap), pm_compose(f, point))


# ---------- tangent structure ----------

@dataclass(frozen=True)
class TangentStructureMaps:
    n: int
    p: PolyMap
    zero: PolyMap
    plus: PolyMap
    ell: PolyMap
    flip: PolyMap


def tangent_structure_maps(n: int, rig=Rig.RAT) -> TangentStructureMaps:
    rig = Rig.parse(rig)
    p = block(n, 2, 1, rig)
    zero = blocks(n, 1, (None, 0), rig)
    v1, v2, a = (block(n, 3, k, rig) for k in range(3))
    plus = pm_pair(pm_add(v1, v2), a)
    ell = blocks(n, 2, (0, None, None, 1), rig)
    flip = blocks(n, 4, (0, 2, 1, 3), rig)
    return TangentStructureMaps(n, p, zero, plus, ell, flip)


def _t2_pair(alpha: PolyMap, beta: PolyMap, n: int) -> PolyMap:
    """Map into T2(n) = (v1, v2, a) from two maps into T(n) over the same point."""
    rig = alpha.rig
    v_a = pm_compose(block(n, 2, 0, rig), alpha)
    v_b = pm_compose(block(n, 2, 0, rig), beta)
    base = pm_compose(block(n, 2, 1, rig), alpha)
    return pm_pair(v_a, v_b, base)


def _t2_of(f: PolyMap) -> PolyMap:
    """T2(f): 3n -> 3m."""
    n, rig = f.src, f.rig
    Tf = tangent_T(f)
    pi1 = blocks(n, 3, (0, 2), rig)
    pi2 = blocks(n, 3, (1, 2), rig)
    return _t2_pair(pm_compose(Tf, pi1), pm_compose(Tf, pi2), f.dst)


def _witness(lhs: PolyMap, rhs: PolyMap, context: str = "") -> str:
    if (lhs.src, lhs.dst) != (rhs.src, rhs.dst):
        return f"arity mismatch {lhs.src}->{lhs.dst} vs {rhs.src}->{rhs.dst}{context}"
    for j, (a, b) in enumerate(zip(lhs.components, rhs.components), start=1):
        if a != b:
            return f"component {j}: {a} vs {b}{context}"
    return "maps differ" + context


def _check(report: Report, name: str, lhs: PolyMap, rhs: PolyMap, context: str = "") -> bool:
    ok = lhs == rhs
    return report.add(name, ok, None if ok else _witness(lhs, rhs, context))


# ---------- random generation ----------

def _scalar(rng: random.Random, rig: Rig):
    return rng.randint(0, 3) if rig is Rig.NAT else rng.randint(-3, 3)


def random_polynomial(rng: random.Random, nvars: int, rig=Rig.RAT, max_degree: int = 4,
                      max_terms: int = 3) -> Polynomial:
    rig = Rig.parse(rig)
    names = _names(nvars)
    terms: dict = {}
    for _ in range(rng.randint(0, max_terms)):
        deg = rng.randint(0, max_degree) if names else 0
        mono: dict = {}
        for _ in range(deg):
            v = rng.choice(names)
            mono[v] = mono.get(v, 0) + 1
        key = tuple(sorted(mono.items()))
        terms[key] = terms.get(key, 0) + _scalar(rng, rig)
    return Polynomial(rig, terms)


def random_polymap(rng: random.Random, src: int, dst: int, rig=Rig.RAT, max_degree: int = 4,
                   max_terms: int = 3) -> PolyMap:
    rig = Rig.parse(rig)
    comps = tuple(random_polynomial(rng, src, rig, max_degree, max_terms) for _ in range(dst))
    return PolyMap(src, dst, comps, rig)


# ---------- CD1..CD7 ----------

def check_cd_axioms(samples: int = 200, seed: int = 0, rig=Rig.RAT, max_arity: int = 3,
                    max_degree: int = 4) -> Report:
    rig = Rig.parse(rig)
    rng = random.Random(seed)
    report = Report(f"CD axioms over {rig.value}")
    report.notes.append(f"seed={seed} samples={samples} rig={rig.value}")

    def arity():
        return rng.randint(0, max_arity)

    def rmap(s, d):
        return random_polymap(rng, s, d, rig, max_degree)

    failures = {k: None for k in range(1, 8)}

    def record(k, lhs, rhs, ctx):
        if failures[k] is None and lhs != rhs:
            failures[k] = _witness(lhs, rhs, ctx)

    for i in range(samples):
        n, m, p = arity(), arity(), arity()
        f, g = rmap(n, m), rmap(n, m)
        a, b = _scalar(rng, rig), _scalar(rng, rig)
        ctx = f" (sample {i})"
        # CD1: D is additive in the map
        record(1, cdc_D(pm_add(pm_scale(a, f), pm_scale(b, g))),
               pm_add(pm_scale(a, cdc_D(f)), pm_scale(b, cdc_D(g))), ctx)
        # CD2: linear in the direction argument
        g0, h, k = rmap(p, n), rmap(p, n), rmap(p, n)
        Df = cdc_D(f)
        record(2, pm_compose(Df, pm_pair(g0, pm_add(pm_scale(a, h), pm_scale(b, k)))),
               pm_add(pm_scale(a, pm_compose(Df, pm_pair(g0, h))),
                      pm_scale(b, pm_compose(Df, pm_pair(g0, k)))), ctx)
        # CD3: identities and projections
        widths = [rng.randint(0, 2) for _ in range(rng.randint(1, 3))]
        total = sum(widths)
        j = rng.randrange(len(widths))
        start = sum(widths[:j])
        proj = PolyMap(total, widths[j], tuple(Polynomial.var(xvar(start + t), rig)
                                               for t in range(1, widths[j] + 1)), rig)
        second = block(total, 2, 1, rig)
        record(3, cdc_D(pm_identity(total, rig)), second, ctx)
        record(3, cdc_D(proj), pm_compose(proj, second), ctx)
        # CD4: tupling
        k2 = arity()
        f2 = rmap(n, k2)
        record(4, cdc_D(pm_pair(f, f2, src=n, rig=rig)),
               pm_pair(cdc_D(f), cdc_D(f2), src=2 * n, rig=rig), ctx)
        # CD5: chain rule
        outer = rmap(m, k2)
        record(5, cdc_D(pm_compose(outer, f)),
               pm_compose(cdc_D(outer), pm_pair(pm_compose(f, block(n, 2, 0, rig)), Df)), ctx)
        # CD6 and CD7 on the four-block reading of D(D(f))
        DDf = cdc_D(Df)
        zero = pm_zero(p, n, rig)
        record(6, pm_compose(DDf, pm_pair(g0, h, zero, k, src=p, rig=rig)),
               pm_compose(Df, pm_pair(g0, k, src=p, rig=rig)), ctx)
        record(7, pm_compose(DDf, pm_pair(g0, h, k, zero, src=p, rig=rig)),
               pm_compose(DDf, pm_pair(g0, k, h, zero, src=p, rig=rig)), ctx)

    names = {
        1: "CD1 D(af+bg) = aD(f)+bD(g)",
        2: "CD2 D(f) linear in the direction",
        3: "CD3 D(id) and D(projection) are second projections",
        4: "CD4 D commutes with tupling",
        5: "CD5 chain rule",
        6: "CD6 D(D(f))<g,h,0,k> = D(f)<g,k>",
        7: "CD7 symmetry of D(D(f))",
    }
    for k in range(1, 8):
        report.add(names[k], failures[k] is None, failures[k])
    return report


# ---------- tangent axioms ----------

def _tangent_whiskers(n: int, rig: Rig):
    S = tangent_structure_maps(n, rig)
    ST = tangent_structure_maps(2 * n, rig)
    return S, ST


def check_tangent_axioms(n: int, samples: int = 100, seed: int = 0, rig=Rig.RAT,
                         max_degree: int = 3) -> Report:
    """All tangent-category equations at arity ``n`` as exact PolyMap equalities."""
    rig = Rig.parse(rig)
    report = Report(f"tangent axioms at arity {n} over {rig.value}")
    report.notes.append(f"seed={seed} samples={samples} arity={n} rig={rig.value}")
    S, ST = _tangent_whiskers(n, rig)
    T = tangent_T
    idn, idT, idTT = (pm_identity(k * n, rig) for k in (1, 2, 4))
    c = pm_compose

    # shapes over T2(n) = (v1, v2, a) and T3(n) = (v1, v2, v3, a)
    pi1 = blocks(n, 3, (0, 2), rig)
    pi2 = blocks(n, 3, (1, 2), rig)
    swap12 = blocks(n, 3, (1, 0, 2), rig)
    add_left = pm_pair(pm_add(block(n, 4, 0, rig), block(n, 4, 1, rig)), block(n, 4, 2, rig),
                       block(n, 4, 3, rig))
    add_right = pm_pair(block(n, 4, 0, rig), pm_add(block(n, 4, 1, rig), block(n, 4, 2, rig)),
                        block(n, 4, 3, rig))

    # Axiom 1: T2 is the pullback of p along p, and T preserves it
    _check(report, "Axiom 1: p∘π1 = p∘π2 on T2", c(S.p, pi1), c(S.p, pi2))
    Tpi1, Tpi2 = T(pi1), T(pi2)
    _check(report, "Axiom 1: T(p)∘T(π1) = T(p)∘T(π2)", c(T(S.p), Tpi1), c(T(S.p), Tpi2))
    _check(report, "Axiom 1: ⟨T(π1), T(π2)⟩ is invertible on T(T2)",
           _tt2_pair(Tpi1, Tpi2, n, rig), pm_identity(6 * n, rig))

    # Axiom 2: additive bundle
    _check(report, "Axiom 2: p∘0 = id", c(S.p, S.zero), idn)
    _check(report, "Axiom 2: p∘+ = p∘π1", c(S.p, S.plus), c(S.p, pi1))
    _check(report, "Axiom 2: + unit (right)", c(S.plus, _t2_pair(idT, c(S.zero, S.p), n)), idT)
    _check(report, "Axiom 2: + unit (left)", c(S.plus, _t2_pair(c(S.zero, S.p), idT, n)), idT)
    _check(report, "Axiom 2: + commutative", c(S.plus, swap12), S.plus)
    _check(report, "Axiom 2: + associative", c(S.plus, add_left), c(S.plus, add_right))

    # Axiom 3: (ℓ, 0) is an additive bundle morphism from (p,+,0) to (T(p),T(+),T(0))
    _check(report, "Axiom 3: T(p)∘ℓ = 0∘p", c(T(S.p), S.ell), c(S.zero, S.p))
    _check(report, "Axiom 3: p_T∘ℓ = 0∘p", c(ST.p, S.ell), c(S.zero, S.p))
    ell_pair = _tt2_pair(c(S.ell, pi1), c(S.ell, pi2), n, rig)
    _check(report, "Axiom 3: T(+)∘(ℓ×ℓ) = ℓ∘+", c(T(S.plus), ell_pair), c(S.ell, S.plus))
    _check(report, "Axiom 3: ℓ∘0 = T(0)∘0", c(S.ell, S.zero), c(T(S.zero), S.zero))

    # Axiom 4: (c, id) is an additive bundle morphism from (T(p),T(+),T(0)) to (p_T,+_T,0_T)
    _check(report, "Axiom 4: p_T∘c = T(p)", c(ST.p, S.flip), T(S.p))
    cc = _t2_pair(c(S.flip, Tpi1), c(S.flip, Tpi2), 2 * n)
    _check(report, "Axiom 4: c∘T(+) = +_T∘(c×c)", c(S.flip, T(S.plus)), c(ST.plus, cc))
    _check(report, "Axiom 4: c∘T(0) = 0_T", c(S.flip, T(S.zero)), ST.zero)

    # Axiom 5
    _check(report, "Axiom 5: c²=id", c(S.flip, S.flip), idTT)
    _check(report, "Axiom 5: cℓ=ℓ", c(S.flip, S.ell), S.ell)
    _check(report, "Axiom 5: T(ℓ)∘ℓ = ℓ_T∘ℓ", c(T(S.ell), S.ell), c(ST.ell, S.ell))
    Tc = T(S.flip)
    _check(report, "Axiom 5: c_T∘T(c)∘c_T = T(c)∘c_T∘T(c)",
           c(ST.flip, c(Tc, ST.flip)), c(Tc, c(ST.flip, Tc)))
    _check(report, "Axiom 5: c_T∘T(c)∘ℓ_T = T(ℓ)∘c",
           c(ST.flip, c(Tc, ST.ell)), c(T(S.ell), S.flip))

    # Axiom 6: the comparison map into T^2 equalizes T(p) and 0∘p∘p_T
    mu = c(T(S.plus), _tt2_pair(c(S.ell, pi1), c(ST.zero, pi2), n, rig))
    _check(report, "Axiom 6: ℓ∘π1 and 0_T∘π2 agree under T(p)",
           c(T(S.p), c(S.ell, pi1)), c(T(S.p), c(ST.zero, pi2)))
    _check(report, "Axiom 6: fork commutes", c(T(S.p), mu), c(S.zero, c(S.p, c(ST.p, mu))))
    rng = random.Random(seed)
    src = rng.randint(0, 3)
    h = pm_pair(random_polymap(rng, src, n, rig, 2), pm_zero(src, n, rig),
                random_polymap(rng, src, n, rig, 2), random_polymap(rng, src, n, rig, 2),
                src=src, rig=rig)
    equalizes = c(T(S.p), h) == c(S.zero, c(S.p, c(ST.p, h)))
    retract = blocks(n, 4, (0, 2, 3), rig)
    report.add("Axiom 6: equalizing map factors through the comparison map",
               equalizes and c(mu, c(retract, h)) == h,
               f"h = {h}")

    # functoriality and naturality against random maps
    first: dict = {}
    for i in range(samples):
        m, k = rng.randint(0, 3), rng.randint(0, 3)
        f = random_polymap(rng, n, m, rig, max_degree)
        g = random_polymap(rng, m, k, rig, max_degree)
        Sm = tangent_structure_maps(m, rig)
        Tf = T(f)
        TTf = T(Tf)
        ctx = f" (sample {i}, f = {f})"
        pairs = {
            "T(g∘f) = T(g)∘T(f)": (T(c(g, f)), c(T(g), Tf)),
            "naturality of p": (c(Sm.p, Tf), c(f, S.p)),
            "naturality of 0": (c(Sm.zero, f), c(Tf, S.zero)),
            "naturality of +": (c(Sm.plus, _t2_of(f)), c(Tf, S.plus)),
            "naturality of ℓ": (c(Sm.ell, Tf), c(TTf, S.ell)),
            "naturality of c": (c(Sm.flip, TTf), c(TTf, S.flip)),
        }
        for name, (lhs, rhs) in pairs.items():
            if name not in first and lhs != rhs:
                first[name] = _witness(lhs, rhs, ctx)
    report.add("T(id) = id", T(idn) == idT, None)
    for name in ("T(g∘f) = T(g)∘T(f)", "naturality of p", "naturality of 0", "naturality of +",
                 "naturality of ℓ", "naturality of c"):
        report.add(name, name not in first, first.get(name))
    return report


def _tt2_pair(alpha: PolyMap, beta: PolyMap, n: int, rig: Rig) -> PolyMap:
    """Map into T(T2(n)) = (dv1, dv2, da, v1, v2, a) from two maps into
    T(T(n)) = (dv, da, v, a) that agree under T(p)."""
    dv = lambda f: pm_compose(block(n, 4, 0, rig), f)  # noqa: E731
    da = lambda f: pm_compose(block(n, 4, 1, rig), f)  # noqa: E731
    v = lambda f: pm_compose(block(n, 4, 2, rig), f)  # noqa: E731
    a = lambda f: pm_compose(block(n, 4, 3, rig), f)  # noqa: E731
    return pm_pair(dv(alpha), dv(beta), da(alpha), v(alpha), v(beta), a(alpha))
