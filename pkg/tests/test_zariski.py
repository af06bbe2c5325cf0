import pytest

from indtangent.algebra import hom_compose, hom_equal, hom_well_defined, identity_hom, make_hom
from indtangent.symcore import Rig, parse_poly
from indtangent.zariski import (
    JetNaming,
    auto_prefix,
    check_zariski_axioms,
    second_tangent_algebra,
    structure_maps,
    tangent_algebra,
    tangent_hom,
    total_differential,
)
from corpus import algebra, zariski_corpus
from oracles import membership_oracle

Q = Rig.RAT
CORPUS = zariski_corpus()


def P(text):
    return parse_poly(text, Q)


def rels(B):
    return [B.format(r) for r in B.relations]


class TestDifferential:
    def test_power(self):
        assert total_differential(P("t^3")) == P("3*t^2*d_t")

    def test_constant(self):
        assert total_differential(P("7")).is_zero()

    def test_second_level(self):
        # the product rule with δt = e_t and δ(d_t) = e_d_t
        assert total_differential(P("3*t^2*d_t"), JetNaming(), 2) == P("6*t*e_t*d_t + 3*t^2*e_d_t")


class TestTangentAlgebra:
    def test_nilpotent(self):
        TB = tangent_algebra(algebra(["t"], "t^3")).total
        assert TB.generators == ("t", "d_t") and rels(TB) == ["t^3", "3*t^2*d_t"]

    def test_free(self):
        TB = tangent_algebra(algebra(["x"])).total
        assert TB.generators == ("x", "d_x") and TB.relations == ()

    def test_cusp(self):
        TB = tangent_algebra(algebra(["x", "y"], "y^2 - x^3")).total
        assert set(TB.relations) == {P("y^2 - x^3"), P("2*y*d_y - 3*x^2*d_x")}

    def test_needs_rationals_with_relations(self):
        from indtangent.algebra import VariableMismatch
        from indtangent.weil import weil_generate
        with pytest.raises(VariableMismatch):
            tangent_algebra(weil_generate(1).realized)

    def test_truncation_adds_jet_products(self):
        TB = tangent_algebra(algebra(["x", "y"]), truncate=True).total
        assert set(TB.relations) == {P("d_x^2"), P("d_x*d_y"), P("d_y^2")}

    def test_auto_prefix_skips_used_names(self):
        assert auto_prefix(algebra(["t"])) == "d"
        assert auto_prefix(algebra(["t", "d_t"])) == "e"


class TestTangentHom:
    def test_identity(self):
        B = CORPUS["cusp"]
        assert tangent_hom(identity_hom(B)) == identity_hom(tangent_algebra(B).total)

    def test_square(self):
        R = algebra(["t"])
        assert tangent_hom(make_hom(R, R, {"t": "t^2"})).image("d_t") == P("2*t*d_t")

    def test_functorial(self):
        R = algebra(["t"])
        f = make_hom(R, R, {"t": "t^2 + t"})
        g = make_hom(R, algebra(["t"], "t^4"), {"t": "3*t^3 - t"})
        assert hom_equal(tangent_hom(hom_compose(g, f)), hom_compose(tangent_hom(g), tangent_hom(f)))

    @pytest.mark.parametrize("name", sorted(CORPUS))
    def test_naturality_of_q(self, name):
        B = CORPUS[name]
        phi = identity_hom(B)
        for g in B.generators:
            sq = make_hom(B, B, {h: (B.gen(h) ** 2 if h == g else B.gen(h)) for h in B.generators})
            if hom_well_defined(sq):
                phi = sq
                break
        S = structure_maps(B)
        assert hom_equal(hom_compose(tangent_hom(phi), S.q), hom_compose(S.q, phi))


class TestStructureMaps:
    @pytest.mark.parametrize("name", sorted(CORPUS))
    def test_well_defined_and_section(self, name):
        S = structure_maps(CORPUS[name])
        assert all(hom_well_defined(m) for m in S.as_dict().values())
        assert hom_equal(hom_compose(S.zeta, S.q), identity_hom(S.base))

    def test_gamma_on_line(self):
        gamma = structure_maps(algebra(["t"])).gamma
        assert gamma.images == {"t": P("t"), "d_t": P("e_t"), "e_t": P("d_t"), "e_d_t": P("e_d_t")}

    def test_add_on_nilpotent(self):
        S = structure_maps(algebra(["t"], "t^3"))
        assert S.add.image("d_t") == P("d_t_1 + d_t_2")
        image = P("3*t^2*(d_t_1 + d_t_2)")
        assert S.pair.contains(image)
        assert membership_oracle(image, list(S.pair.relations), 4)

    def test_images_on_the_line(self):
        S = structure_maps(algebra(["x"]))
        assert S.q.images == {"x": P("x")}
        assert S.zeta.images == {"x": P("x"), "d_x": P("0")}
        assert S.v.images == {"x": P("x"), "d_x": P("0"), "e_x": P("0"), "e_d_x": P("d_x")}


class TestSecondTangent:
    def test_free(self):
        T2 = second_tangent_algebra(algebra(["t"]))
        assert T2.generators == ("t", "d_t", "e_t", "e_d_t") and T2.relations == ()

    def test_square_zero(self):
        T2 = second_tangent_algebra(algebra(["t"], "t^2"))
        assert set(T2.relations) == {P("t^2"), P("2*t*d_t"), P("2*t*e_t"), P("2*e_t*d_t + 2*t*e_d_t")}

    @pytest.mark.parametrize("name", sorted(CORPUS))
    def test_iterated_tangent_matches(self, name):
        B = CORPUS[name]
        iterated = tangent_algebra(tangent_algebra(B, "d").total, "e").total
        direct = second_tangent_algebra(B)
        assert iterated.generators == direct.generators
        assert all(direct.contains(r) for r in iterated.relations)
        assert all(iterated.contains(r) for r in direct.relations)


class TestAxiomSuite:
    def test_cusp_involution(self):
        report = check_zariski_axioms(CORPUS["cusp"])
        assert any(r.name.startswith("Axiom 5: c²=id") and r.passed for r in report)

    def test_commutativity_on_quartic(self):
        report = check_zariski_axioms(CORPUS["Q[t]/(t^4)"])
        assert [r.passed for r in report if r.name == "Axiom 2: add commutative"] == [True]

    def test_unit_law(self):
        report = check_zariski_axioms(algebra(["t"], "t^3"))
        assert all(r.passed for r in report if "unit" in r.name)

    def test_broken_map_is_reported(self, monkeypatch):
        import indtangent.zariski as zariski

        original = zariski._structure.__wrapped__

        def broken(C, inner, outer, truncate):
            S = original(C, inner, outer, truncate)
            images = dict(S.v.images)
            images[f"{outer}_{inner}_{C.generators[0]}"] = 2 * S.v.target.gen(f"{inner}_{C.generators[0]}")
            bad_v = make_hom(S.v.source, S.v.target, images)
            return zariski.StructureMaps(S.base, S.tangent, S.pair, S.inclusions, S.second,
                                         S.q, S.zeta, S.add, bad_v, S.gamma)

        monkeypatch.setattr(zariski, "_structure", broken)
        report = zariski.check_zariski_axioms(algebra(["t"]), test_homs=[])
        assert not report.ok
