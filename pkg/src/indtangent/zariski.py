"""Tangent algebras of presented algebras and the five generating ring maps.

Jets are named by prefix: the first tangent adds ``d_g`` for each generator
``g``; tangents of tangents use ``e_`` and then ``f_``, so T(T(B)) has
generators ``g, d_g, e_g, e_d_g``.  Every diagram is checked on ring maps,
which run opposite to the scheme-side arrows.
"""

from __future__ import annotations

import functools
from dataclasses import dataclass
from typing import Iterable, Mapping, Optional, Sequence

from .algebra import (
    AlgebraHom,
    PresentedAlgebra,
    VariableMismatch,
    hom_compose,
    hom_well_defined,
    identity_hom,
    make_hom,
    tensor_many,
)
from .report import Report
from .symcore import Polynomial, Rig

__all__ = [
    "JET_PREFIXES",
    "JetNaming",
    "TangentAlgebra",
    "StructureMaps",
    "jet",
    "is_jet",
    "total_differential",
    "differential",
    "tangent_algebra",
    "second_tangent_algebra",
    "tangent_hom",
    "structure_maps",
    "pair_hom",
    "auto_prefix",
    "copair",
    "relabel",
    "check_zariski_axioms",
    "default_test_homs",
]

JET_PREFIXES = ("d", "e", "f", "g", "h")


def auto_prefix(alg: PresentedAlgebra) -> str:
    """The first jet prefix not yet used by a generator of ``alg``."""
    for p in JET_PREFIXES + tuple("ghijk"):
        if not any(g.startswith(p + "_") for g in alg.generators):
            return p
    raise VariableMismatch("ran out of jet prefixes")


def jet(prefix: str, name: str) -> str:
    return f"{prefix}_{name}"


def is_jet(name: str) -> bool:
    return any(name.startswith(p + "_") for p in JET_PREFIXES)


@dataclass(frozen=True)
class JetNaming:
    first: str = "d"
    second: str = "e"

    def d(self, g: str) -> str:
        return jet(self.first, g)

    def e(self, g: str) -> str:
        return jet(self.second, g)

    def ed(self, g: str) -> str:
        return jet(self.second, jet(self.first, g))


def differential(f: Polynomial, prefix: str, variables: Optional[Iterable[str]] = None) -> Polynomial:
    """The derivation sending each variable ``g`` to ``prefix_g``."""
    names = f.variables()
    if variables is not None:
        unknown = names - set(variables)
        if unknown:
            raise VariableMismatch(f"unknown variables {sorted(unknown)}")
    acc = Polynomial.zero(f.rig)
    for g in sorted(names):
        acc = acc + f.diff(g) * Polynomial.var(jet(prefix, g), f.rig)
    return acc


def total_differential(f: Polynomial, naming: JetNaming = JetNaming(), level: int = 1) -> Polynomial:
    if level == 1:
        bad = [v for v in f.variables() if is_jet(v)]
        if bad:
            raise VariableMismatch(f"first differentials take base variables only, got {bad}")
        return differential(f, naming.first)
    if level == 2:
        bad = [v for v in f.variables() if v.startswith(naming.second + "_")]
        if bad:
            raise VariableMismatch(f"second differentials take base and first-jet variables, got {bad}")
        return differential(f, naming.second)
    raise ValueError("level must be 1 or 2")


def _jet_products(alg: PresentedAlgebra) -> list:
    jets = [g for g in alg.generators if is_jet(g)]
    out = []
    for i, a in enumerate(jets):
        for b in jets[i:]:
            out.append(Polynomial.var(a, alg.rig) * Polynomial.var(b, alg.rig))
    return out


def _truncate(alg: PresentedAlgebra, truncate: bool) -> PresentedAlgebra:
    return alg.with_relations(_jet_products(alg)) if truncate else alg


@dataclass(frozen=True)
class TangentAlgebra:
    base: PresentedAlgebra
    total: PresentedAlgebra
    prefix: str = "d"
    truncate: bool = False


def _check_tangent_scope(B: PresentedAlgebra) -> None:
    if B.relations and B.rig is not Rig.RAT:
        raise VariableMismatch(
            f"tangent algebras need Q scalars when there are relations (got {B.rig.value})")


@functools.lru_cache(maxsize=256)
def tangent_algebra(B: PresentedAlgebra, prefix: str = "d", truncate: bool = False) -> TangentAlgebra:
    _check_tangent_scope(B)
    new = tuple(jet(prefix, g) for g in B.generators)
    clash = set(new) & set(B.generators)
    if clash:
        raise VariableMismatch(f"jet names {sorted(clash)} collide with generators")
    rels = list(B.relations) + [differential(r, prefix) for r in B.relations]
    total = PresentedAlgebra(B.rig, B.generators + new, ())
    total = total.with_relations(rels)
    return TangentAlgebra(B, _truncate(total, truncate), prefix, truncate)


def second_tangent_algebra(B: PresentedAlgebra, truncate: bool = False) -> PresentedAlgebra:
    return tangent_algebra(tangent_algebra(B, "d", truncate).total, "e", truncate).total


def tangent_hom(phi: AlgebraHom, prefix: Optional[str] = "d", truncate: bool = False) -> AlgebraHom:
    """T(phi): x ↦ phi(x), d_x ↦ d(phi(x)).  With ``prefix=None`` source and
    target each use their own first unused jet prefix."""
    sp = prefix or auto_prefix(phi.source)
    tp = prefix or auto_prefix(phi.target)
    TS = tangent_algebra(phi.source, sp, truncate).total
    TT = tangent_algebra(phi.target, tp, truncate).total
    images = {}
    for g, img in phi.image_items:
        images[g] = img
        images[jet(sp, g)] = differential(img, tp)
    return AlgebraHom(TS, TT, tuple(images.items()))


def relabel(source: PresentedAlgebra, target: PresentedAlgebra, mapping: Mapping[str, str]) -> AlgebraHom:
    """The hom sending each generator to the target generator with the
    mapped (by default identical) name."""
    return AlgebraHom(source, target,
                      tuple((g, target.gen(mapping.get(g, g))) for g in source.generators))


def copair(product: PresentedAlgebra, inclusions: Sequence[AlgebraHom],
           maps: Sequence[AlgebraHom]) -> AlgebraHom:
    """The map out of a pushout presentation determined by maps on each
    factor.  Each inclusion must send generators to generators and together
    they must cover the product."""
    target = maps[0].target
    images: dict = {}
    for inc, m in zip(inclusions, maps):
        if inc.target != product or m.source != inc.source or m.target != target:
            raise VariableMismatch("copair: inclusions and maps do not line up")
        for g, img in inc.image_items:
            names = img.variables()
            if len(img) != 1 or len(names) != 1 or img.degree() != 1:
                raise VariableMismatch(f"copair: inclusion sends {g} to {img}, not a generator")
            (name,) = names
            value = m.image(g)
            if name in images and not target.equal_mod(images[name], value):
                raise VariableMismatch(f"copair: maps disagree on shared generator {name}")
            images.setdefault(name, value)
    missing = set(product.generators) - set(images)
    if missing:
        raise VariableMismatch(f"copair: generators {sorted(missing)} are not covered")
    return AlgebraHom(product, target, tuple(images.items()))


@dataclass(frozen=True)
class StructureMaps:
    """Ring maps q: B→TB, zeta: TB→B, add: TB→T2B, v: TTB→TB, gamma: TTB→TTB."""
    base: PresentedAlgebra
    tangent: PresentedAlgebra
    pair: PresentedAlgebra
    inclusions: tuple
    second: PresentedAlgebra
    q: AlgebraHom
    zeta: AlgebraHom
    add: AlgebraHom
    v: AlgebraHom
    gamma: AlgebraHom

    def as_dict(self) -> dict:
        return {"q": self.q, "zeta": self.zeta, "add": self.add, "v": self.v, "gamma": self.gamma}


def _pair_tensor(C: PresentedAlgebra, TC: PresentedAlgebra, k: int, truncate: bool):
    product, incs = tensor_many([TC] * k, base=C.generators)
    return _truncate(product, truncate), incs


@functools.lru_cache(maxsize=256)
def _structure(C: PresentedAlgebra, inner: str, outer: str, truncate: bool) -> StructureMaps:
    rig = C.rig
    zero = Polynomial.zero(rig)
    TC = tangent_algebra(C, inner, truncate).total
    T2C, incs = _pair_tensor(C, TC, 2, truncate)
    incs = tuple(AlgebraHom(TC, T2C, i.image_items) for i in incs)
    TTC = tangent_algebra(TC, outer, truncate).total
    gens = C.generators
    q = relabel(C, TC, {})
    zeta = make_hom(TC, C, {jet(inner, g): zero for g in gens}, default_same_name=True)
    add = AlgebraHom(TC, T2C, tuple(
        (g, incs[0].image(g) if g in gens else incs[0].image(g) + incs[1].image(g))
        for g in TC.generators))
    v_images = {}
    for g in gens:
        v_images[g] = TC.gen(g)
        v_images[jet(inner, g)] = zero
        v_images[jet(outer, g)] = zero
        v_images[jet(outer, jet(inner, g))] = TC.gen(jet(inner, g))
    v = make_hom(TTC, TC, v_images)
    swap = {}
    for g in gens:
        swap[jet(inner, g)] = jet(outer, g)
        swap[jet(outer, g)] = jet(inner, g)
    gamma = relabel(TTC, TTC, swap)
    return StructureMaps(C, TC, T2C, incs, TTC, q, zeta, add, v, gamma)


def structure_maps(B: PresentedAlgebra, truncate: bool = False) -> StructureMaps:
    inner = auto_prefix(B)
    outer = auto_prefix(tangent_algebra(B, inner, truncate).total)
    return _structure(B, inner, outer, truncate)


def pair_hom(phi: AlgebraHom, truncate: bool = False) -> AlgebraHom:
    """T2(phi): T2(source) -> T2(target), copaired from T(phi) on each factor."""
    Sa, Sb = structure_maps(phi.source, truncate), structure_maps(phi.target, truncate)
    T_phi = tangent_hom(phi, None, truncate)
    return copair(Sa.pair, Sa.inclusions, [hom_compose(i, T_phi) for i in Sb.inclusions])


def default_test_homs(B: PresentedAlgebra) -> list:
    """The identity, plus the squaring endomorphism g ↦ g² when it is well defined."""
    homs = [identity_hom(B)]
    square = AlgebraHom(B, B, tuple((g, B.gen(g) * B.gen(g)) for g in B.generators))
    if B.generators and hom_well_defined(square):
        homs.append(square)
    return homs


# ---------- axiom checks ----------

def _hom_witness(lhs: AlgebraHom, rhs: AlgebraHom) -> Optional[str]:
    target = lhs.target
    other = rhs.images
    for g, p in lhs.image_items:
        if not target.equal_mod(p, other[g]):
            return f"{g}: {target.format(p)} vs {target.format(other[g])}"
    return None


class _Checker:
    def __init__(self, report: Report, prefix: str = ""):
        self.report = report
        self.prefix = prefix

    def equal(self, name: str, lhs: AlgebraHom, rhs: AlgebraHom) -> bool:
        if lhs.source != rhs.source or lhs.target != rhs.target:
            return self.report.add(self.prefix + name, False, "endpoints differ")
        witness = _hom_witness(lhs, rhs)
        return self.report.add(self.prefix + name, witness is None, witness)

    def defined(self, name: str, phi: AlgebraHom) -> bool:
        ok = hom_well_defined(phi)
        witness = None
        if not ok:
            for r in phi.source.relations:
                img = r.substitute(phi.images)
                if not phi.target.contains(img):
                    witness = f"relation {phi.source.format(r)} maps to {phi.target.format(img)}"
                    break
        return self.report.add(self.prefix + name, ok, witness)


def check_zariski_axioms(B: PresentedAlgebra, test_homs: Optional[Sequence[AlgebraHom]] = None,
                         truncate: bool = False) -> Report:
    """Every tangent-structure diagram for Spec B, checked on ring maps."""
    report = Report(f"Zariski tangent axioms for {B}")
    if truncate:
        report.notes.append("jets truncated at degree 2")
    chk = _Checker(report)
    c = hom_compose
    S = structure_maps(B, truncate)
    ST = _structure(S.tangent, "e", "f", truncate)
    TB, T2B, TTB = S.tangent, S.pair, S.second
    inc1, inc2 = S.inclusions
    gens = B.generators
    rig = B.rig
    zero = Polynomial.zero(rig)

    for name, phi in S.as_dict().items():
        chk.defined(f"{name} is well defined", phi)
    for name, phi in ST.as_dict().items():
        chk.defined(f"{name}_T is well defined", phi)

    # T applied to maps between B-level objects, in standard jet names
    TeB = tangent_algebra(B, "e", truncate).total
    rename_B = relabel(TB, TeB, {jet("d", g): jet("e", g) for g in gens})
    unrename_B = relabel(TeB, TB, {jet("e", g): jet("d", g) for g in gens})
    T_q = c(tangent_hom(S.q, "e", truncate), rename_B)              # TB -> TTB
    T_zeta = c(unrename_B, tangent_hom(S.zeta, "e", truncate))      # TTB -> TB
    T_add = tangent_hom(S.add, "e", truncate)                       # TTB -> T(T2B)
    TT2B = T_add.target
    T_inc = [tangent_hom(i, "e", truncate) for i in (inc1, inc2)]  # TTB -> T(T2B)
    T_gamma = tangent_hom(S.gamma, "f", truncate)                   # TTTB -> TTTB
    TfTB = tangent_algebra(TB, "f", truncate).total
    rename_f = relabel(TfTB, TTB, {jet("f", y): jet("e", y) for y in TB.generators})
    T_v = c(rename_f, tangent_hom(S.v, "f", truncate))              # TTTB -> TTB

    # Axiom 1: T2B is the pushout of q along q, and T preserves it
    chk.equal("Axiom 1: q then inc1 = q then inc2", c(inc1, S.q), c(inc2, S.q))
    pushout, (j1, j2) = tensor_many([TTB, TTB], base=tuple(gens) + tuple(jet("e", g) for g in gens))
    pushout = _truncate(pushout, truncate)
    j1 = AlgebraHom(TTB, pushout, j1.image_items)
    j2 = AlgebraHom(TTB, pushout, j2.image_items)
    if set(pushout.generators) == set(TT2B.generators):
        there, back = relabel(TT2B, pushout, {}), relabel(pushout, TT2B, {})
        ok = hom_well_defined(there) and hom_well_defined(back)
        report.add("Axiom 1: T(T2B) presents the pushout of T(q) along T(q)", ok,
                   None if ok else "relation ideals differ")
        chk.equal("Axiom 1: T(inc1) matches the pushout inclusion", c(there, T_inc[0]), j1)
        chk.equal("Axiom 1: T(inc2) matches the pushout inclusion", c(there, T_inc[1]), j2)
    else:
        report.add("Axiom 1: T(T2B) presents the pushout of T(q) along T(q)", False,
                   f"generators {TT2B.generators} vs {pushout.generators}")

    # Axiom 2: additive bundle
    chk.equal("Axiom 2: zeta∘q = id", c(S.zeta, S.q), identity_hom(B))
    chk.equal("Axiom 2: add∘q = inc1∘q", c(S.add, S.q), c(inc1, S.q))
    d = lambda g, k: jet("d", g) + f"_{k}"  # noqa: E731
    unit_r = make_hom(T2B, TB, {**{g: TB.gen(g) for g in gens},
                                **{d(g, 1): TB.gen(jet("d", g)) for g in gens},
                                **{d(g, 2): zero for g in gens}})
    unit_l = make_hom(T2B, TB, {**{g: TB.gen(g) for g in gens},
                                **{d(g, 1): zero for g in gens},
                                **{d(g, 2): TB.gen(jet("d", g)) for g in gens}})
    chk.equal("Axiom 2: add unit (right)", c(unit_r, S.add), identity_hom(TB))
    chk.equal("Axiom 2: add unit (left)", c(unit_l, S.add), identity_hom(TB))
    swap = relabel(T2B, T2B, {**{d(g, 1): d(g, 2) for g in gens}, **{d(g, 2): d(g, 1) for g in gens}})
    chk.equal("Axiom 2: add commutative", c(swap, S.add), S.add)
    T3B, (k1, k2, k3) = _pair_tensor(B, TB, 3, truncate)
    k = [AlgebraHom(TB, T3B, i.image_items) for i in (k1, k2, k3)]
    add_l = make_hom(T2B, T3B, {**{g: T3B.gen(g) for g in gens},
                                **{d(g, 1): k[0].image(jet("d", g)) + k[1].image(jet("d", g)) for g in gens},
                                **{d(g, 2): k[2].image(jet("d", g)) for g in gens}})
    add_r = make_hom(T2B, T3B, {**{g: T3B.gen(g) for g in gens},
                                **{d(g, 1): k[0].image(jet("d", g)) for g in gens},
                                **{d(g, 2): k[1].image(jet("d", g)) + k[2].image(jet("d", g)) for g in gens}})
    chk.defined("Axiom 2: associator maps are well defined", add_l)
    chk.equal("Axiom 2: add associative", c(add_l, S.add), c(add_r, S.add))

    # Axiom 3: (ℓ, 0) is an additive bundle morphism
    chk.equal("Axiom 3: v∘T(q) = q∘zeta", c(S.v, T_q), c(S.q, S.zeta))
    chk.equal("Axiom 3: v∘q_T = q∘zeta", c(S.v, ST.q), c(S.q, S.zeta))
    ell_pair = copair(TT2B, T_inc, [c(inc1, S.v), c(inc2, S.v)])
    chk.equal("Axiom 3: (ℓ×ℓ)∘T(add) = add∘v", c(ell_pair, T_add), c(S.add, S.v))
    chk.equal("Axiom 3: zeta∘v = zeta∘T(zeta)", c(S.zeta, S.v), c(S.zeta, T_zeta))

    # Axiom 4: (c, id) is an additive bundle morphism
    chk.equal("Axiom 4: gamma∘q_T = T(q)", c(S.gamma, ST.q), T_q)
    flip_pair = copair(ST.pair, ST.inclusions, [c(T_inc[0], S.gamma), c(T_inc[1], S.gamma)])
    chk.equal("Axiom 4: (c×c)∘add_T = T(add)∘gamma", c(flip_pair, ST.add), c(T_add, S.gamma))
    chk.equal("Axiom 4: T(zeta)∘gamma = zeta_T", c(T_zeta, S.gamma), ST.zeta)

    # Axiom 5
    chk.equal("Axiom 5: c²=id (gamma∘gamma = id)", c(S.gamma, S.gamma), identity_hom(TTB))
    chk.equal("Axiom 5: cℓ=ℓ (v∘gamma = v)", c(S.v, S.gamma), S.v)
    chk.equal("Axiom 5: v∘T(v) = v∘v_T", c(S.v, T_v), c(S.v, ST.v))
    chk.equal("Axiom 5: hexagon for gamma",
              c(ST.gamma, c(T_gamma, ST.gamma)), c(T_gamma, c(ST.gamma, T_gamma)))
    chk.equal("Axiom 5: v_T∘T(gamma)∘gamma_T = gamma∘T(v)",
              c(ST.v, c(T_gamma, ST.gamma)), c(S.gamma, T_v))

    # Axiom 6: the comparison ring map TTB -> T2B coequalizes T(q) and q_T∘q∘zeta
    mu = c(copair(TT2B, T_inc, [c(inc1, S.v), c(inc2, ST.zeta)]), T_add)
    chk.equal("Axiom 6: fork commutes", c(mu, T_q), c(mu, c(ST.q, c(S.q, S.zeta))))
    quotient = TTB.with_relations([TTB.gen(jet("e", g)) for g in gens])
    mu_bar = AlgebraHom(quotient, T2B, mu.image_items)
    inverse_images = {}
    for g in gens:
        inverse_images[g] = quotient.gen(g)
        inverse_images[d(g, 1)] = quotient.gen(jet("e", jet("d", g)))
        inverse_images[d(g, 2)] = quotient.gen(jet("d", g))
    inverse = make_hom(T2B, quotient, inverse_images)
    ok = hom_well_defined(mu_bar) and hom_well_defined(inverse)
    report.add("Axiom 6: comparison map descends to the coequalizer", ok,
               None if ok else "induced maps are not well defined")
    if ok:
        chk.equal("Axiom 6: coequalizer comparison is invertible (one side)",
                  c(mu_bar, inverse), identity_hom(T2B))
        chk.equal("Axiom 6: coequalizer comparison is invertible (other side)",
                  c(inverse, mu_bar), identity_hom(quotient))

    # naturality
    homs = list(test_homs) if test_homs is not None else default_test_homs(B)
    for idx, phi in enumerate(homs):
        _check_naturality(chk, phi, idx, truncate)
    return report


def _check_naturality(chk: _Checker, phi: AlgebraHom, idx: int, truncate: bool) -> None:
    c = hom_compose
    label = f"naturality [{idx}]"
    if not hom_well_defined(phi):
        chk.report.add(f"{label}: test hom is well defined", False, phi.describe())
        return
    Sa, Sb = structure_maps(phi.source, truncate), structure_maps(phi.target, truncate)
    T_phi = tangent_hom(phi, None, truncate)
    TT_phi = tangent_hom(T_phi, None, truncate)
    T2_phi = pair_hom(phi, truncate)
    chk.defined(f"{label}: T(φ) is well defined", T_phi)
    chk.equal(f"{label}: q", c(T_phi, Sa.q), c(Sb.q, phi))
    chk.equal(f"{label}: zeta", c(Sb.zeta, T_phi), c(phi, Sa.zeta))
    chk.equal(f"{label}: add", c(Sb.add, T_phi), c(T2_phi, Sa.add))
    chk.equal(f"{label}: v", c(Sb.v, TT_phi), c(T_phi, Sa.v))
    chk.equal(f"{label}: gamma", c(Sb.gamma, TT_phi), c(TT_phi, Sa.gamma))
