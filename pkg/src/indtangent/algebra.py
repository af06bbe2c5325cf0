"""Finitely presented commutative algebras and their homomorphisms."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Mapping, Sequence, Union

from .ideals import IdealPresentation, TermOrder, ideal_member, normal_form
from .symcore import Polynomial, Rig, RigError, parse_poly

__all__ = [
    "PresentedAlgebra",
    "AlgebraHom",
    "VariableMismatch",
    "hom_well_defined",
    "hom_compose",
    "hom_equal",
    "identity_hom",
    "make_hom",
    "tensor",
    "tensor_many",
    "fiber_name",
]


class VariableMismatch(ValueError):
    pass


def _dedupe(polys: Iterable[Polynomial]) -> tuple:
    return tuple(dict.fromkeys(p for p in polys if not p.is_zero()))


@dataclass(frozen=True)
class PresentedAlgebra:
    rig: Rig
    generators: tuple
    relations: tuple = ()

    def __post_init__(self):
        rig = Rig.parse(self.rig)
        object.__setattr__(self, "rig", rig)
        gens = tuple(self.generators)
        if len(set(gens)) != len(gens):
            raise VariableMismatch(f"duplicate generators in {gens}")
        object.__setattr__(self, "generators", gens)
        rels = []
        for r in self.relations:
            if isinstance(r, str):
                r = parse_poly(r, rig)
            if r.rig is not rig:
                raise RigError(f"relation {r} lives over {r.rig.value}, algebra over {rig.value}")
            extra = r.variables() - set(gens)
            if extra:
                raise VariableMismatch(f"relation {r} uses undeclared generators {sorted(extra)}")
            rels.append(r)
        object.__setattr__(self, "relations", tuple(rels))
        self.ideal  # validates the N restriction eagerly

    @classmethod
    def free(cls, rig, generators: Sequence[str]) -> "PresentedAlgebra":
        return cls(rig, tuple(generators), ())

    @property
    def ideal(self) -> IdealPresentation:
        return IdealPresentation(self.relations, self.rig)

    @property
    def order(self) -> TermOrder:
        return TermOrder("grevlex", self.generators)

    def gen(self, name: str) -> Polynomial:
        if name not in self.generators:
            raise VariableMismatch(f"{name!r} is not a generator of {self}")
        return Polynomial.var(name, self.rig)

    def parse(self, text: Union[str, Polynomial, int]) -> Polynomial:
        if isinstance(text, Polynomial):
            p = text
        elif isinstance(text, int):
            p = Polynomial.const(text, self.rig)
        else:
            p = parse_poly(text, self.rig)
        self.check_element(p)
        return p

    def check_element(self, p: Polynomial) -> None:
        if p.rig is not self.rig:
            raise RigError(f"{p} lives over {p.rig.value}, algebra over {self.rig.value}")
        extra = p.variables() - set(self.generators)
        if extra:
            raise VariableMismatch(f"{p} uses unknown generators {sorted(extra)}")

    def contains(self, p: Polynomial) -> bool:
        """Membership of ``p`` in the relation ideal."""
        return ideal_member(p, self.ideal)

    def normal_form(self, p: Polynomial) -> Polynomial:
        return normal_form(p, self.ideal, self.order)

    def equal_mod(self, f: Polynomial, g: Polynomial) -> bool:
        if f == g:
            return True
        if self.rig.has_negatives:
            return self.contains(f - g)
        return self.normal_form(f) == self.normal_form(g)

    def format(self, p: Polynomial) -> str:
        return p.to_str(self.generators)

    def with_relations(self, extra: Iterable[Polynomial]) -> "PresentedAlgebra":
        return PresentedAlgebra(self.rig, self.generators, _dedupe(self.relations + tuple(extra)))

    def renamed(self, mapping: Mapping[str, str]) -> "PresentedAlgebra":
        gens = tuple(mapping.get(g, g) for g in self.generators)
        return PresentedAlgebra(self.rig, gens, tuple(r.rename(mapping) for r in self.relations))

    def to_document(self) -> dict:
        return {
            "rig": self.rig.value,
            "generators": list(self.generators),
            "relations": [self.format(r) for r in self.relations],
        }

    @classmethod
    def from_document(cls, doc: Mapping) -> "PresentedAlgebra":
        try:
            rig = Rig.parse(doc.get("rig", "Q"))
            gens = tuple(doc["generators"])
            rels = tuple(parse_poly(r, rig) for r in doc.get("relations", ()))
        except KeyError as exc:
            raise ValueError(f"algebra document is missing {exc}") from None
        return cls(rig, gens, rels)

    def __str__(self) -> str:
        ring = f"{self.rig.value}[{', '.join(self.generators)}]"
        if not self.relations:
            return ring
        return f"{ring}/({', '.join(self.format(r) for r in self.relations)})"


@dataclass(frozen=True)
class AlgebraHom:
    source: PresentedAlgebra
    target: PresentedAlgebra
    image_items: tuple

    def __post_init__(self):
        if self.source.rig is not self.target.rig:
            raise RigError("source and target live over different rigs")
        items = dict(self.image_items)
        if set(items) != set(self.source.generators):
            missing = sorted(set(self.source.generators) - set(items))
            extra = sorted(set(items) - set(self.source.generators))
            raise VariableMismatch(f"images must cover the source generators exactly "
                                   f"(missing {missing}, unexpected {extra})")
        ordered = []
        for g in self.source.generators:
            img = items[g]
            if isinstance(img, (str, int)):
                img = self.target.parse(img)
            self.target.check_element(img)
            ordered.append((g, img))
        object.__setattr__(self, "image_items", tuple(ordered))

    @property
    def images(self) -> dict:
        return dict(self.image_items)

    def image(self, g: str) -> Polynomial:
        return self.images[g]

    def __call__(self, p: Polynomial) -> Polynomial:
        self.source.check_element(p)
        return p.substitute(self.images)

    def describe(self) -> str:
        return ", ".join(f"{g} -> {self.target.format(p)}" for g, p in self.image_items)

    def to_document(self) -> dict:
        return {
            "source": self.source.to_document(),
            "target": self.target.to_document(),
            "images": {g: self.target.format(p) for g, p in self.image_items},
        }

    @classmethod
    def from_document(cls, doc: Mapping, source: PresentedAlgebra = None,
                      target: PresentedAlgebra = None) -> "AlgebraHom":
        source = source or PresentedAlgebra.from_document(doc["source"])
        target = target or PresentedAlgebra.from_document(doc["target"])
        return make_hom(source, target, doc["images"])


def make_hom(source: PresentedAlgebra, target: PresentedAlgebra,
             images: Mapping[str, Union[str, Polynomial, int]], default_same_name: bool = False) -> AlgebraHom:
    """Build a hom from text or polynomial images.  With ``default_same_name``
    unlisted generators go to the target generator of the same name."""
    full = dict(images)
    if default_same_name:
        for g in source.generators:
            if g not in full:
                full[g] = target.gen(g)
    return AlgebraHom(source, target, tuple(full.items()))


def identity_hom(B: PresentedAlgebra) -> AlgebraHom:
    return AlgebraHom(B, B, tuple((g, B.gen(g)) for g in B.generators))


def hom_well_defined(phi: AlgebraHom) -> bool:
    images = phi.images
    return all(phi.target.contains(r.substitute(images)) for r in phi.source.relations)


def hom_compose(psi: AlgebraHom, phi: AlgebraHom) -> AlgebraHom:
    """``psi ∘ phi``: first ``phi``, then ``psi``."""
    if phi.target != psi.source:
        raise VariableMismatch("cannot compose: target of the first map is not the source of the second")
    images = psi.images
    return AlgebraHom(phi.source, psi.target,
                      tuple((g, p.substitute(images)) for g, p in phi.image_items))


def hom_equal(phi: AlgebraHom, psi: AlgebraHom) -> bool:
    if phi.source != psi.source or phi.target != psi.target:
        raise VariableMismatch("hom_equal needs maps with the same endpoints")
    T = phi.target
    other = psi.images
    return all(T.equal_mod(p, other[g]) for g, p in phi.image_items)


def hom_difference(phi: AlgebraHom, psi: AlgebraHom):
    """First generator on which the two maps differ modulo relations, with
    both images; None when they are equal."""
    T = phi.target
    other = psi.images
    for g, p in phi.image_items:
        if not T.equal_mod(p, other[g]):
            return g, p, other[g]
    return None


def fiber_name(name: str, index: int) -> str:
    return f"{name}_{index}"


def tensor_many(factors: Sequence[PresentedAlgebra], base: Sequence[str] = ()):
    """Tensor product over the shared generators ``base``.

    Fiber generators are renamed with suffixes ``_1``, ``_2``, ... when two
    factors share a fiber name; otherwise names are kept.  Relations are the
    duplicate-free union.  Returns the product and the inclusion homs."""
    if not factors:
        raise ValueError("tensor of no factors")
    rig = factors[0].rig
    if any(F.rig is not rig for F in factors):
        raise RigError("tensor factors live over different rigs")
    base = tuple(base)
    for F in factors:
        missing = set(base) - set(F.generators)
        if missing:
            raise VariableMismatch(f"base generators {sorted(missing)} are missing from {F}")
    fibers = [[g for g in F.generators if g not in base] for F in factors]
    seen: dict = {}
    clash = False
    for fs in fibers:
        for g in fs:
            if g in seen:
                clash = True
            seen[g] = True
    renames = []
    for k, fs in enumerate(fibers, start=1):
        renames.append({g: fiber_name(g, k) for g in fs} if clash else {})
    gens = list(base)
    for fs, ren in zip(fibers, renames):
        gens.extend(ren.get(g, g) for g in fs)
    if len(set(gens)) != len(gens):
        raise VariableMismatch(f"generator names collide in tensor product: {gens}")
    rels = []
    for F, ren in zip(factors, renames):
        rels.extend(r.rename(ren) for r in F.relations)
    product = PresentedAlgebra(rig, tuple(gens), _dedupe(rels))
    inclusions = tuple(
        AlgebraHom(F, product, tuple((g, product.gen(ren.get(g, g))) for g in F.generators))
        for F, ren in zip(factors, renames))
    return product, inclusions


def tensor(B: PresentedAlgebra, C: PresentedAlgebra, base: Sequence[str] = ()) -> PresentedAlgebra:
    return tensor_many((B, C), base)[0]
