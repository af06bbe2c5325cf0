"""Fixed inputs shared by module tests and the acceptance suite."""

from __future__ import annotations

import random

from indtangent.algebra import AlgebraHom, PresentedAlgebra, make_hom
from indtangent.cdc import PolyMap
from indtangent.ind import ALG_OP, APOLY, FiniteCategory, IndObject, formal_spf
from indtangent.symcore import Polynomial, Rig
from indtangent.weil import weil_generate, weil_morphism_check, weil_tensor

Q = Rig.RAT


def algebra(gens, *rels):
    return PresentedAlgebra(Q, tuple(gens), tuple(rels))


def zariski_corpus() -> dict:
    """The ten algebras every Zariski check runs over."""
    out = {"Q[t]": algebra(["t"])}
    for n in range(2, 6):
        out[f"Q[t]/(t^{n})"] = algebra(["t"], f"t^{n}")
    out["cusp"] = algebra(["x", "y"], "y^2 - x^3")
    out["axes"] = algebra(["x", "y"], "x*y")
    W1, W2 = weil_generate(1), weil_generate(2)
    out["W1 over Q"] = W1.over(Q).realized
    out["W2 over Q"] = W2.over(Q).realized
    out["W1 x W1 over Q"] = weil_tensor(W1, W1).over(Q).realized
    return out


# ---------- membership instances ----------

def _random_poly(rng, names, max_degree, terms, min_degree=0):
    acc = {}
    for _ in range(terms):
        exps = [0] * len(names)
        for _ in range(rng.randint(min_degree, max_degree)):
            exps[rng.randrange(len(names))] += 1
        mono = tuple((n, e) for n, e in zip(names, exps) if e)
        acc[mono] = acc.get(mono, 0) + rng.randint(-3, 3)
    return Polynomial(Q, {m: c for m, c in acc.items() if c})


def membership_instances(seed: int = 0, count: int = 500):
    """Seeded (candidate, generators) pairs: at most 3 variables, generators of
    degree at most 3 without constant term, candidates of degree at most 5.
    About half the candidates are built as combinations of the generators."""
    rng = random.Random(seed)
    out = []
    for _ in range(count):
        names = ["x", "y", "z"][:rng.randint(1, 3)]
        gens = [_random_poly(rng, names, 3, rng.randint(1, 3), 1) for _ in range(rng.randint(1, 3))]
        gens = [g for g in gens if not g.is_zero()] or [Polynomial.var("x", Q) ** 2]
        if rng.random() < 0.5:
            f = Polynomial.zero(Q)
            for g in gens:
                f = f + _random_poly(rng, names, max(0, 5 - g.degree()), 2) * g
        else:
            f = _random_poly(rng, names, 5, rng.randint(1, 4))
        out.append((f, gens))
    return out


# ---------- Weil morphisms ----------

def _augmented_image(rng, target):
    gens = target.generators
    terms = {}
    for _ in range(rng.randint(0, 3)):
        k = rng.randint(1, min(2, len(gens)))
        mono = tuple(sorted((g, 1) for g in rng.sample(gens, k)))
        terms[mono] = terms.get(mono, 0) + rng.randint(1, 3)
    return Polynomial(target.rig, terms)


def random_weil_morphism(rng, source, target, attempts=200):
    """Rejection-sample a valid morphism with square-free images and no constant term."""
    for _ in range(attempts):
        phi = make_hom(source, target, {g: _augmented_image(rng, target) for g in source.generators})
        if weil_morphism_check(phi):
            return phi
    raise RuntimeError("no valid morphism found")


# ---------- diagrams ----------

def _apoly(index, objects, arrows):
    return IndObject(index, APOLY, objects,
                     {a: PolyMap.parse(objects[index.src(a)], comps) for a, comps in arrows.items()})


def two_chain(comps, arity=None):
    arity = arity or len(comps)
    return _apoly(FiniteCategory.chain(["0", "1"]), {"0": arity, "1": len(comps)}, {"0<1": comps})


def constant_diagram(arity=1):
    return _apoly(FiniteCategory.discrete(["0"]), {"0": arity}, {})


def three_chain():
    return _apoly(FiniteCategory.chain(["0", "1", "2"]), {"0": 1, "1": 2, "2": 2},
                  {"0<1": ["x1", "x1^2"], "1<2": ["x1", "x2 + x1^3"]})


def diamond_apoly():
    index = FiniteCategory.from_presentation(
        ["a", "b", "c", "d"],
        [("f", "a", "b"), ("g", "a", "c"), ("h", "b", "d"), ("k", "c", "d")],
        [("f;h", "g;k")])
    return _apoly(index, {"a": 1, "b": 1, "c": 1, "d": 1},
                  {"f": ["x1^2"], "g": ["2*x1"], "h": ["4*x1"], "k": ["2*x1^2"]})


def ind_corpus() -> dict:
    """Ten diagrams over APoly and AlgOp used by the strictness checks."""
    spf3, _ = formal_spf(3)
    t = Polynomial.var("t", Q)
    A2 = algebra(["t"], "t^2")
    A1 = algebra(["t"], "t")
    nil_pair = IndObject(FiniteCategory.chain(["0", "1"]), ALG_OP, {"0": A1, "1": A2},
                         {"0<1": AlgebraHom(A2, A1, (("t", t),))})
    cusp = algebra(["x", "y"], "y^2 - x^3")
    cusp_const = IndObject(FiniteCategory.discrete(["0"]), ALG_OP, {"0": cusp})
    return {
        "constant arity 1": constant_diagram(1),
        "constant arity 2": constant_diagram(2),
        "2-chain square": two_chain(["x1^2"]),
        "2-chain shear": two_chain(["x1 + 2*x2", "x2"]),
        "2-chain projection": two_chain(["x2"], arity=2),
        "3-chain": three_chain(),
        "diamond": diamond_apoly(),
        "spf 3": spf3,
        "nilpotent pair": nil_pair,
        "cusp": cusp_const,
    }
