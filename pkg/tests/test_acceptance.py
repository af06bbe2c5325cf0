"""Acceptance criteria, one marked group per criterion.

Every equality here is exact.  The terminal summary prints one PASS/FAIL line
per criterion (see ``conftest.py``).
"""

import io
import itertools
import random
import time
from fractions import Fraction
from pathlib import Path

import pytest

from indtangent.algebra import hom_compose, hom_well_defined, make_hom
from indtangent.cdc import cdc_D, check_cd_axioms, check_tangent_axioms, random_polymap, xvar
from indtangent.cli import run
from indtangent.ideals import IdealPresentation, ideal_member
from indtangent.ind import (
    NatTrans,
    check_ind_tangent_axioms,
    compose_functors,
    diff_object_check,
    formal_spf,
    ind_apply_functor,
    ind_apply_nat,
    ind_compose,
    ind_functor_on_morphism,
    ind_identity,
    vertical,
)
from indtangent.symcore import Polynomial, Rig, partial_derivative, poly_eval
from indtangent.weil import WeilObject, weil_generate, weil_morphism_check, weil_tensor
from indtangent.zariski import check_zariski_axioms, structure_maps
from corpus import (
    constant_diagram,
    ind_corpus,
    membership_instances,
    random_weil_morphism,
    three_chain,
    two_chain,
    zariski_corpus,
)
from oracles import line_derivative, membership_oracle, partial_oracle

Q, N = Rig.RAT, Rig.NAT
DATA = Path(__file__).parent / "data"


def c(number, title):
    return pytest.mark.criterion(number, title)


# 1 ---------------------------------------------------------------------------

@c(1, "CD1-CD7 on 200 seeded maps per axiom over Q and N, < 30 s")
def test_cd_suite():
    start = time.perf_counter()
    for rig in (Q, N):
        report = check_cd_axioms(samples=200, seed=0, rig=rig, max_arity=3, max_degree=4)
        assert report.ok, [r.line() for r in report.failures()]
        assert len(report.results) == 7
    assert time.perf_counter() - start < 30


# 2 ---------------------------------------------------------------------------

@c(2, "tangent-category equations for arities 0..3 with 100 seeded maps, < 30 s")
def test_tangent_suite():
    start = time.perf_counter()
    for n in range(4):
        report = check_tangent_axioms(n, samples=100, seed=0)
        assert report.ok, (n, [r.line() for r in report.failures()])
        names = [r.name for r in report]
        assert "Axiom 5: c²=id" in names and "Axiom 5: cℓ=ℓ" in names
    assert time.perf_counter() - start < 30


# 3 ---------------------------------------------------------------------------

@c(3, "Zariski corpus: structure maps well defined, axioms pass with and without truncation, < 2 min")
def test_zariski_suite():
    start = time.perf_counter()
    corpus = zariski_corpus()
    assert len(corpus) == 10
    for truncate in (False, True):
        for name, B in corpus.items():
            S = structure_maps(B, truncate)
            assert all(hom_well_defined(m) for m in S.as_dict().values()), (name, truncate)
            report = check_zariski_axioms(B, truncate=truncate)
            assert report.ok, (name, truncate, [r.line() for r in report.failures()])
    assert time.perf_counter() - start < 120


# 4 ---------------------------------------------------------------------------

@c(4, "spf --n 5 matches the golden file with relations t^n, n*t^(n-1)*d_t")
def test_spf_golden():
    out = io.StringIO()
    assert run(["spf", "--n", "5"], out) == 0
    assert out.getvalue() == (DATA / "spf_n5.txt").read_text()
    _, TX = formal_spf(5)
    t, dt = Polynomial.var("t", Q), Polynomial.var("d_t", Q)
    for n in range(1, 6):
        assert set(TX.objects[str(n)].relations) == {t ** n, n * t ** (n - 1) * dt}


# 5 ---------------------------------------------------------------------------

CORPUS = ind_corpus()


def _identity_nat(base, functor):
    F = base.functor(functor)
    return NatTrans(f"1_{functor}", functor, functor, lambda X: base.identity(F(X)))


@c(5, "Ind strictness on the 10-diagram corpus")
@pytest.mark.parametrize("name", sorted(CORPUS))
def test_ind_strictness(name):
    X = CORPUS[name]
    base = X.base
    assert len(CORPUS) == 10
    # Ind(id) = id on objects, morphisms and identity 2-cells
    assert ind_apply_functor("id", X) == X
    for tag in base.nat_tags:
        rho = ind_apply_nat(tag, X)
        assert ind_functor_on_morphism("id", rho) == rho
    for functor in ("id", "T"):
        assert ind_apply_nat(_identity_nat(base, functor), X) == ind_identity(ind_apply_functor(functor, X))
    # vertical composites of every composable pair of structure transformations
    nats = [base.nat(tag) for tag in base.nat_tags]
    pairs = 0
    for alpha, beta in itertools.product(nats, repeat=2):
        if alpha.target != beta.source:
            continue
        pairs += 1
        assert ind_apply_nat(vertical(beta, alpha, base), X) == \
            ind_compose(ind_apply_nat(beta, X), ind_apply_nat(alpha, X)), (beta.name, alpha.name)
    assert pairs > 0
    # same-index functor composition
    for F, G in itertools.product(("id", "T", "T2"), repeat=2):
        GF = compose_functors(base.functor(G), base.functor(F))
        assert ind_apply_functor(GF, X) == ind_apply_functor(G, ind_apply_functor(F, X))
        for tag in base.nat_tags:
            rho = ind_apply_nat(tag, X)
            assert ind_functor_on_morphism(GF, rho) == ind_functor_on_morphism(G, ind_functor_on_morphism(F, rho))


# 6 ---------------------------------------------------------------------------

@c(6, "diff_object_check rejects (x1^2) with witness and accepts (x1+2*x2, x2)")
def test_differential_objects():
    assert diff_object_check(two_chain(["x1^2"])) == (False, "0<1")
    assert diff_object_check(two_chain(["x1 + 2*x2", "x2"])) == (True, None)


# 7 ---------------------------------------------------------------------------

@c(7, "Ind tangent axioms on formal_spf(4) and three APoly diagrams")
@pytest.mark.parametrize("label", ["spf 4", "constant", "2-chain D-linear", "3-chain"])
def test_ind_tangent_instances(label):
    X = {
        "spf 4": lambda: formal_spf(4)[0],
        "constant": lambda: constant_diagram(2),
        "2-chain D-linear": lambda: two_chain(["x1 + 2*x2", "x2"]),
        "3-chain": three_chain,
    }[label]()
    report = check_ind_tangent_axioms(X)
    assert report.ok, [r.line() for r in report.failures()]
    assert any(r.name.startswith("level ") for r in report)
    assert any(r.name.startswith("naturality") for r in report)


# 8 ---------------------------------------------------------------------------

@c(8, "ideal_member, partial_derivative and cdc_D agree with independent oracles on 500 instances each")
def test_membership_oracle():
    disagreements = [
        (f, gens) for f, gens in membership_instances(seed=0, count=500)
        if ideal_member(f, IdealPresentation(tuple(gens))) != membership_oracle(f, gens, 7)
    ]
    assert disagreements == []


def _random_polynomial(rng, names, max_degree=4, terms=4):
    acc = {}
    for _ in range(terms):
        exps = [0] * len(names)
        for _ in range(rng.randint(0, max_degree)):
            exps[rng.randrange(len(names))] += 1
        mono = tuple((v, e) for v, e in zip(names, exps) if e)
        acc[mono] = acc.get(mono, 0) + Fraction(rng.randint(-5, 5), rng.randint(1, 3))
    return Polynomial(Q, {m: k for m, k in acc.items() if k})


@c(8, "ideal_member, partial_derivative and cdc_D agree with independent oracles on 500 instances each")
def test_partial_derivative_oracle():
    rng = random.Random(0)
    for _ in range(500):
        names = ["x", "y", "z"][:rng.randint(1, 3)]
        f = _random_polynomial(rng, names)
        var = rng.choice(names)
        point = {v: Fraction(rng.randint(-4, 4), rng.randint(1, 3)) for v in names}
        assert poly_eval(partial_derivative(f, var), point) == partial_oracle(f, var, point)


@c(8, "ideal_member, partial_derivative and cdc_D agree with independent oracles on 500 instances each")
def test_cdc_D_oracle():
    rng = random.Random(1)
    for _ in range(500):
        src, dst = rng.randint(0, 3), rng.randint(1, 2)
        f = random_polymap(rng, src, dst, Q, 4)
        base = [Fraction(rng.randint(-4, 4), rng.randint(1, 3)) for _ in range(src)]
        vec = [Fraction(rng.randint(-4, 4)) for _ in range(src)]
        names = [xvar(i) for i in range(1, src + 1)]
        expected = tuple(line_derivative(comp, dict(zip(names, base)), dict(zip(names, vec)))
                         for comp in f.components)
        assert cdc_D(f)(base + vec) == expected


# 9 ---------------------------------------------------------------------------

@c(9, "Weil examples decided exactly; composition closure on 100 seeded pairs")
def test_weil_examples():
    W1 = weil_generate(1).realized
    W11 = weil_tensor(weil_generate(1), weil_generate(1)).realized
    assert weil_morphism_check(make_hom(W1, W1, {"x": "x + 1"})) is False
    assert weil_morphism_check(make_hom(W1, W1, {"x": "2*x"})) is True
    assert weil_morphism_check(make_hom(W1, W11, {"x": "x + y"})) is False


@c(9, "Weil examples decided exactly; composition closure on 100 seeded pairs")
def test_weil_composition_closure():
    rng = random.Random(0)
    shapes = [(1,), (2,), (1, 1), (2, 1), (1, 2)]
    for _ in range(100):
        a, b, cc = (WeilObject(rng.choice(shapes)).realized for _ in range(3))
        f, g = random_weil_morphism(rng, a, b), random_weil_morphism(rng, b, cc)
        assert weil_morphism_check(hom_compose(g, f))
