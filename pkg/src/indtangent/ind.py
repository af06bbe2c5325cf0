"""Ind-objects over finite filtered index categories.

An Ind-object is a functor from a finite filtered category into a base
category: polynomial maps (``APoly``), presented algebras (``Alg``) or affine
schemes presented by their algebras (``AlgOp``, arrows reversed).  Functors
and natural transformations act levelwise, so Ind(F)(X) is literally F∘X.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Callable, Mapping, Sequence, Union

from . import cdc
from .algebra import (
    AlgebraHom,
    PresentedAlgebra,
    hom_compose,
    hom_equal,
    identity_hom,
    make_hom,
    tensor_many,
)
from .cdc import PolyMap, pm_compose, pm_identity, pm_pair
from .report import Report
from .symcore import Polynomial, Rig
from .zariski import (
    auto_prefix,
    check_zariski_axioms,
    copair,
    pair_hom,
    structure_maps,
    tangent_algebra,
    tangent_hom,
)

__all__ = [
    "FiniteCategory",
    "DiagramError",
    "check_filtered",
    "BaseCategory",
    "APOLY",
    "ALG",
    "ALG_OP",
    "base_category",
    "BaseFunctor",
    "NatTrans",
    "IndObject",
    "IndMorphismSame",
    "IndMorphismGeneral",
    "colim_hom_equiv",
    "ind_morphism_valid",
    "ind_compose",
    "ind_identity",
    "ind_apply_functor",
    "ind_functor_on_morphism",
    "ind_apply_nat",
    "ind_pullback",
    "diff_object_check",
    "formal_spf",
    "check_ind_tangent_axioms",
    "diagram_from_document",
    "compose_functors",
    "vertical",
]


class DiagramError(ValueError):
    """Malformed index category or diagram."""


# ---------- finite categories ----------

def _identity_name(obj: str) -> str:
    return f"id_{obj}"


class FiniteCategory:
    """A finite category given by objects, non-identity arrows and a total
    composition table ``table[(first, second)] = composite`` (diagrammatic
    order).  Identities are added as ``id_<object>``."""

    def __init__(self, objects: Sequence[str], arrows: Sequence[tuple], table: Mapping[tuple, str]):
        self.objects = tuple(objects)
        if len(set(self.objects)) != len(self.objects):
            raise DiagramError("duplicate objects")
        self._ends: dict = {}
        for obj in self.objects:
            self._ends[_identity_name(obj)] = (obj, obj)
        for name, src, dst in arrows:
            if name in self._ends:
                raise DiagramError(f"duplicate arrow {name!r}")
            if src not in self.objects or dst not in self.objects:
                raise DiagramError(f"arrow {name!r} has unknown endpoints")
            self._ends[name] = (src, dst)
        self.arrows = tuple(a[0] for a in arrows)
        self._table: dict = {}
        for f in self._ends:
            for g in self._ends:
                if self._ends[f][1] != self._ends[g][0]:
                    continue
                if self.is_identity(f):
                    self._table[(f, g)] = g
                elif self.is_identity(g):
                    self._table[(f, g)] = f
                else:
                    try:
                        h = table[(f, g)]
                    except KeyError:
                        raise DiagramError(f"composition table has no entry for {f};{g}") from None
                    if h not in self._ends:
                        raise DiagramError(f"composite {h!r} is not an arrow")
                    if self._ends[h] != (self._ends[f][0], self._ends[g][1]):
                        raise DiagramError(f"composite {f};{g} = {h} has wrong endpoints")
                    self._table[(f, g)] = h
        for f, g in list(self._table):
            for h in self._ends:
                if self._ends[g][1] != self._ends[h][0]:
                    continue
                if self._table[(self._table[(f, g)], h)] != self._table[(f, self._table[(g, h)])]:
                    raise DiagramError(f"composition is not associative on {f};{g};{h}")

    # construction helpers
    @classmethod
    def from_presentation(cls, objects: Sequence[str], generators: Sequence[tuple],
                          relations: Sequence[tuple] = ()) -> "FiniteCategory":
        """Free category on an acyclic graph modulo path relations.  Paths are
        semicolon-joined arrow names in diagrammatic order."""
        objects = tuple(objects)
        ends = {name: (s, t) for name, s, t in generators}
        if len(ends) != len(generators):
            raise DiagramError("duplicate generator names")
        out: dict = {o: [] for o in objects}
        for name, s, t in generators:
            if s not in out or t not in out:
                raise DiagramError(f"arrow {name!r} has unknown endpoints")
            out[s].append(name)
        _require_acyclic(objects, generators)
        paths = []  # (tuple of names, src, dst)
        for o in objects:
            paths.append(((), o, o))
        frontier = [((g,), ends[g][0], ends[g][1]) for g, *_ in generators]
        while frontier:
            paths.extend(frontier)
            frontier = [(p + (g,), s, ends[g][1]) for p, s, t in frontier for g in out[t]]
        key_of = {((), s) if not p else p: (p, s, t) for p, s, t in paths}
        parent = {k: k for k in key_of}

        def find(k):
            while parent[k] != k:
                parent[k] = parent[parent[k]]
                k = parent[k]
            return k

        def union(a, b):
            ra, rb = find(a), find(b)
            if ra != rb:
                parent[max(ra, rb, key=_path_rank)] = min(ra, rb, key=_path_rank)
                return True
            return False

        def parse_path(text: str):
            text = text.strip()
            if text.startswith("id_") and text[3:] in objects:
                return ((), text[3:])
            names = tuple(t.strip() for t in text.split(";") if t.strip())
            for n in names:
                if n not in ends:
                    raise DiagramError(f"unknown arrow {n!r} in relation")
            for a, b in zip(names, names[1:]):
                if ends[a][1] != ends[b][0]:
                    raise DiagramError(f"path {text!r} is not composable")
            return names

        for lhs, rhs in relations:
            a, b = parse_path(lhs), parse_path(rhs)
            if _path_ends(a, ends) != _path_ends(b, ends):
                raise DiagramError(f"relation {lhs} = {rhs} relates paths with different endpoints")
            union(a, b)
        changed = True
        while changed:
            changed = False
            for k in key_of:
                r = find(k)
                if r == k:
                    continue
                for g, *_ in generators:
                    for ext_k, ext_r in ((_extend(k, g, ends), _extend(r, g, ends)),
                                         (_prepend(g, k, ends), _prepend(g, r, ends))):
                        if ext_k is not None and ext_r is not None:
                            changed |= union(ext_k, ext_r)
        classes: dict = {}
        for k in key_of:
            classes.setdefault(find(k), []).append(k)

        def name_of(k):
            r = find(k)
            if _is_empty(r):
                return _identity_name(r[1])
            return ";".join(r)

        arrows = []
        for r in sorted(classes, key=_path_rank):
            if _is_empty(r):
                continue
            s, t = _path_ends(r, ends)
            if s == t:
                raise DiagramError(f"non-identity endomorphism {';'.join(r)}")
            arrows.append((";".join(r), s, t))
        table = {}
        for (f, s1, t1), (g, s2, t2) in itertools.product(arrows, arrows):
            if t1 == s2:
                table[(f, g)] = name_of(tuple(f.split(";")) + tuple(g.split(";")))
        return cls(objects, arrows, table)

    @classmethod
    def poset(cls, objects: Sequence[str], covers: Sequence[tuple]) -> "FiniteCategory":
        """Thin category generated by ``(lower, upper)`` cover pairs; arrow
        names are ``lower<upper``."""
        objects = tuple(objects)
        up = {o: {o} for o in objects}
        changed = True
        while changed:
            changed = False
            for a, b in covers:
                for o in objects:
                    if a in up[o] and not up[b] <= up[o]:
                        up[o] |= up[b]
                        changed = True
        arrows = [(f"{a}<{b}", a, b) for a in objects for b in objects if a != b and b in up[a]]
        for a, b in itertools.permutations(objects, 2):
            if b in up[a] and a in up[b]:
                raise DiagramError("poset relation has a cycle")
        table = {}
        for (f, a, b), (g, c, d) in itertools.product(arrows, arrows):
            if b == c:
                table[(f, g)] = f"{a}<{d}"
        return cls(objects, arrows, table)

    @classmethod
    def chain(cls, objects: Sequence[str]) -> "FiniteCategory":
        objects = tuple(objects)
        return cls.poset(objects, list(zip(objects, objects[1:])))

    @classmethod
    def discrete(cls, objects: Sequence[str]) -> "FiniteCategory":
        return cls(tuple(objects), [], {})

    # queries
    def ends(self, arrow: str) -> tuple:
        try:
            return self._ends[arrow]
        except KeyError:
            raise DiagramError(f"unknown arrow {arrow!r}") from None

    def src(self, arrow: str) -> str:
        return self.ends(arrow)[0]

    def dst(self, arrow: str) -> str:
        return self.ends(arrow)[1]

    def identity(self, obj: str) -> str:
        if obj not in self.objects:
            raise DiagramError(f"unknown object {obj!r}")
        return _identity_name(obj)

    def is_identity(self, arrow: str) -> bool:
        s, t = self._ends[arrow]
        return arrow == _identity_name(s) and s == t

    def all_arrows(self) -> tuple:
        return tuple(self._ends)

    def then(self, f: str, g: str) -> str:
        """``f`` followed by ``g``."""
        try:
            return self._table[(f, g)]
        except KeyError:
            raise DiagramError(f"{f} and {g} are not composable") from None

    def compose(self, g: str, f: str) -> str:
        return self.then(f, g)

    def hom(self, a: str, b: str) -> list:
        return [f for f, (s, t) in self._ends.items() if s == a and t == b]

    def arrows_from(self, a: str) -> list:
        return [f for f, (s, _) in self._ends.items() if s == a]

    def composable_pairs(self):
        return list(self._table)

    def __eq__(self, other) -> bool:
        return (isinstance(other, FiniteCategory) and self.objects == other.objects
                and self._ends == other._ends and self._table == other._table)

    def __hash__(self) -> int:
        return hash((self.objects, tuple(sorted(self._ends.items()))))

    def __repr__(self) -> str:
        return f"FiniteCategory(objects={list(self.objects)}, arrows={list(self.arrows)})"


def _is_empty(path) -> bool:
    return len(path) == 2 and path[0] == ()


def _path_rank(path):
    if _is_empty(path):
        return (0, "", path[1])
    return (len(path), ";".join(path), "")


def _path_ends(path, ends):
    if _is_empty(path):
        return (path[1], path[1])
    return (ends[path[0]][0], ends[path[-1]][1])


def _extend(path, g, ends):
    s, t = _path_ends(path, ends)
    if t != ends[g][0]:
        return None
    return (g,) if _is_empty(path) else path + (g,)


def _prepend(g, path, ends):
    s, t = _path_ends(path, ends)
    if ends[g][1] != s:
        return None
    return (g,) if _is_empty(path) else (g,) + path


def _require_acyclic(objects, generators):
    out: dict = {o: [] for o in objects}
    for _, s, t in generators:
        out[s].append(t)
    state: dict = {}

    def visit(o):
        state[o] = 1
        for t in out[o]:
            if state.get(t) == 1:
                raise DiagramError("index graph has a cycle; only acyclic presentations are supported")
            if t not in state:
                visit(t)
        state[o] = 2

    for o in objects:
        if o not in state:
            visit(o)


def check_filtered(C: FiniteCategory) -> bool:
    if not C.objects:
        return False
    for a, b in itertools.combinations_with_replacement(C.objects, 2):
        if not any(C.hom(a, c) and C.hom(b, c) for c in C.objects):
            return False
    for a, b in itertools.product(C.objects, repeat=2):
        hs = C.hom(a, b)
        for f, g in itertools.combinations(hs, 2):
            if not any(C.then(f, h) == C.then(g, h) for h in C.arrows_from(b)):
                return False
    return True


# ---------- base categories ----------

@dataclass(frozen=True)
class BaseFunctor:
    name: str
    on_object: Callable
    on_morphism: Callable

    def __call__(self, X):
        return self.on_object(X)


@dataclass(frozen=True)
class NatTrans:
    """A natural transformation ``source ⇒ target`` given by its components."""
    name: str
    source: str
    target: str
    component: Callable


class BaseCategory:
    tag = ""
    nat_tags: tuple = ()

    # category structure
    def dom(self, f):
        raise NotImplementedError

    def cod(self, f):
        raise NotImplementedError

    def identity(self, X):
        raise NotImplementedError

    def compose(self, g, f):
        """``g ∘ f``."""
        raise NotImplementedError

    def equal(self, f, g) -> bool:
        raise NotImplementedError

    def exact_equal(self, f, g) -> bool:
        return f == g

    # tangent structure
    def functor(self, name: str) -> BaseFunctor:
        table = self._functors()
        if name not in table:
            raise KeyError(f"functor {name!r} is not registered for {self.tag}; "
                           f"known: {sorted(table)}")
        return table[name]

    def nat(self, name: str) -> NatTrans:
        table = self._nats()
        if name not in table:
            raise KeyError(f"natural transformation {name!r} is not registered for {self.tag}; "
                           f"known: {sorted(table)}")
        return table[name]

    def _functors(self) -> dict:
        raise NotImplementedError

    def _nats(self) -> dict:
        raise NotImplementedError

    # documents
    def object_from_document(self, doc):
        raise NotImplementedError

    def morphism_from_document(self, doc, src, dst):
        raise NotImplementedError

    def format_object(self, X) -> str:
        return str(X)

    def format_morphism(self, f) -> str:
        return str(f)


class _APoly(BaseCategory):
    tag = "APoly"
    nat_tags = ("p", "zero", "plus", "ell", "flip")

    def __init__(self, rig=Rig.RAT):
        self.rig = Rig.parse(rig)

    def dom(self, f: PolyMap) -> int:
        return f.src

    def cod(self, f: PolyMap) -> int:
        return f.dst

    def identity(self, n: int) -> PolyMap:
        return pm_identity(n, self.rig)

    def compose(self, g: PolyMap, f: PolyMap) -> PolyMap:
        return pm_compose(g, f)

    def equal(self, f: PolyMap, g: PolyMap) -> bool:
        return f == g

    def _functors(self) -> dict:
        T = BaseFunctor("T", lambda n: 2 * n, cdc.tangent_T)
        return {
            "id": BaseFunctor("id", lambda n: n, lambda f: f),
            "T": T,
            "T2": BaseFunctor("T2", lambda n: 3 * n, cdc._t2_of),
            "TT": compose_functors(T, T),
        }

    def _nats(self) -> dict:
        S = lambda n: cdc.tangent_structure_maps(n, self.rig)  # noqa: E731
        return {
            "p": NatTrans("p", "T", "id", lambda n: S(n).p),
            "zero": NatTrans("zero", "id", "T", lambda n: S(n).zero),
            "plus": NatTrans("plus", "T2", "T", lambda n: S(n).plus),
            "ell": NatTrans("ell", "T", "TT", lambda n: S(n).ell),
            "flip": NatTrans("flip", "TT", "TT", lambda n: S(n).flip),
        }

    def object_from_document(self, doc) -> int:
        n = doc["arity"] if isinstance(doc, Mapping) else doc
        if not isinstance(n, int) or n < 0:
            raise DiagramError(f"APoly objects are nonnegative arities, got {doc!r}")
        return n

    def morphism_from_document(self, doc, src: int, dst: int) -> PolyMap:
        comps = doc["components"] if isinstance(doc, Mapping) else doc
        rig = Rig.parse(doc.get("rig", self.rig.value)) if isinstance(doc, Mapping) else self.rig
        f = PolyMap.parse(src, [str(c) for c in comps], rig)
        if f.dst != dst:
            raise DiagramError(f"map has {f.dst} components but its target has arity {dst}")
        return f

    def format_object(self, n: int) -> str:
        return f"arity {n}"

    def format_morphism(self, f: PolyMap) -> str:
        return f"({', '.join(f.format())})"


class _Alg(BaseCategory):
    """Presented algebras with ring maps; ``opposite`` reads every ring map
    as a morphism of affine schemes in the other direction."""

    def __init__(self, opposite: bool, truncate: bool = False):
        self.opposite = opposite
        self.truncate = truncate
        self.tag = "AlgOp" if opposite else "Alg"
        self.nat_tags = ("p", "zero", "plus", "ell", "flip") if opposite else \
            ("q", "zeta", "add", "v", "gamma")

    def dom(self, f: AlgebraHom):
        return f.target if self.opposite else f.source

    def cod(self, f: AlgebraHom):
        return f.source if self.opposite else f.target

    def identity(self, B: PresentedAlgebra) -> AlgebraHom:
        return identity_hom(B)

    def compose(self, g: AlgebraHom, f: AlgebraHom) -> AlgebraHom:
        return hom_compose(f, g) if self.opposite else hom_compose(g, f)

    def equal(self, f: AlgebraHom, g: AlgebraHom) -> bool:
        if f.source != g.source or f.target != g.target:
            return False
        return hom_equal(f, g)

    def _T(self, B: PresentedAlgebra) -> PresentedAlgebra:
        return tangent_algebra(B, auto_prefix(B), self.truncate).total

    def _functors(self) -> dict:
        T = BaseFunctor("T", self._T, lambda f: tangent_hom(f, None, self.truncate))
        return {
            "id": BaseFunctor("id", lambda B: B, lambda f: f),
            "T": T,
            "T2": BaseFunctor("T2", lambda B: structure_maps(B, self.truncate).pair,
                              lambda f: pair_hom(f, self.truncate)),
            "TT": compose_functors(T, T),
        }

    def _nats(self) -> dict:
        S = lambda B: structure_maps(B, self.truncate)  # noqa: E731
        ring = {
            "q": lambda B: S(B).q,
            "zeta": lambda B: S(B).zeta,
            "add": lambda B: S(B).add,
            "v": lambda B: S(B).v,
            "gamma": lambda B: S(B).gamma,
        }
        if self.opposite:
            return {
                "p": NatTrans("p", "T", "id", ring["q"]),
                "zero": NatTrans("zero", "id", "T", ring["zeta"]),
                "plus": NatTrans("plus", "T2", "T", ring["add"]),
                "ell": NatTrans("ell", "T", "TT", ring["v"]),
                "flip": NatTrans("flip", "TT", "TT", ring["gamma"]),
            }
        return {
            "q": NatTrans("q", "id", "T", ring["q"]),
            "zeta": NatTrans("zeta", "T", "id", ring["zeta"]),
            "add": NatTrans("add", "T", "T2", ring["add"]),
            "v": NatTrans("v", "TT", "T", ring["v"]),
            "gamma": NatTrans("gamma", "TT", "TT", ring["gamma"]),
        }

    def object_from_document(self, doc) -> PresentedAlgebra:
        return PresentedAlgebra.from_document(doc)

    def morphism_from_document(self, doc, src, dst) -> AlgebraHom:
        images = doc["images"] if "images" in doc else doc
        ring_src, ring_tgt = (dst, src) if self.opposite else (src, dst)
        return make_hom(ring_src, ring_tgt, images)

    def format_morphism(self, f: AlgebraHom) -> str:
        return f.describe()


APOLY = _APoly()
ALG = _Alg(opposite=False)
ALG_OP = _Alg(opposite=True)


def base_category(tag: str, rig=Rig.RAT, truncate: bool = False) -> BaseCategory:
    key = tag.strip().lower().replace("-", "").replace("_", "")
    if key == "apoly":
        return _APoly(rig)
    if key == "alg":
        return _Alg(False, truncate)
    if key in ("algop", "sch", "schemes"):
        return _Alg(True, truncate)
    raise ValueError(f"unknown base {tag!r}; expected APoly, Alg or AlgOp")


def compose_functors(G: BaseFunctor, F: BaseFunctor) -> BaseFunctor:
    return BaseFunctor(f"{G.name}{F.name}" if {G.name, F.name} == {"T"} else f"{G.name}∘{F.name}",
                       lambda X: G.on_object(F.on_object(X)),
                       lambda f: G.on_morphism(F.on_morphism(f)))


def vertical(beta: NatTrans, alpha: NatTrans, base: BaseCategory) -> NatTrans:
    """``beta ∘ alpha`` for ``alpha: F ⇒ G`` and ``beta: G ⇒ H``."""
    if alpha.target != beta.source:
        raise ValueError(f"cannot compose {beta.name} after {alpha.name}: "
                         f"{alpha.target} is not {beta.source}")
    return NatTrans(f"{beta.name}∘{alpha.name}", alpha.source, beta.target,
                    lambda X: base.compose(beta.component(X), alpha.component(X)))


# ---------- Ind-objects and morphisms ----------

@dataclass(frozen=True, eq=False)
class IndObject:
    index: FiniteCategory
    base: BaseCategory
    objects: Mapping
    arrows: Mapping = field(default_factory=dict)

    def __post_init__(self):
        objs = dict(self.objects)
        if set(objs) != set(self.index.objects):
            raise DiagramError("object assignment must cover the index objects exactly")
        given = dict(self.arrows)
        extra = set(given) - set(self.index.all_arrows())
        if extra:
            raise DiagramError(f"arrows {sorted(extra)} are not in the index category")
        full = {a: self.base.identity(objs[self.index.src(a)])
                for a in self.index.all_arrows() if self.index.is_identity(a)}
        full.update(given)
        # missing composites are filled in from any factorization through known arrows
        pending = [a for a in self.index.all_arrows() if a not in full]
        while pending:
            progress = False
            for a in list(pending):
                for f, g in self.index.composable_pairs():
                    if (self.index.then(f, g) == a and f in full and g in full
                            and not self.index.is_identity(f) and not self.index.is_identity(g)):
                        full[a] = self.base.compose(full[g], full[f])
                        pending.remove(a)
                        progress = True
                        break
            if not progress:
                raise DiagramError(f"no image given for arrow {pending[0]!r}")
        for a, f in full.items():
            s, t = self.index.ends(a)
            if self.base.dom(f) != objs[s] or self.base.cod(f) != objs[t]:
                raise DiagramError(f"image of arrow {a} has the wrong endpoints")
        object.__setattr__(self, "objects", objs)
        object.__setattr__(self, "arrows", {a: full[a] for a in self.index.all_arrows()})

    def __call__(self, key):
        return self.objects[key] if key in self.objects else self.arrows[key]

    def functoriality_failures(self) -> list:
        out = []
        for f, g in self.index.composable_pairs():
            h = self.index.then(f, g)
            if not self.base.equal(self.base.compose(self.arrows[g], self.arrows[f]), self.arrows[h]):
                out.append(f"{f};{g}")
        return out

    def is_valid(self) -> bool:
        return check_filtered(self.index) and not self.functoriality_failures()

    def __eq__(self, other) -> bool:
        if not isinstance(other, IndObject):
            return NotImplemented
        return (self.index == other.index and self.base.tag == other.base.tag
                and self.objects == other.objects and self.arrows == other.arrows)

    __hash__ = None

    def describe(self) -> list:
        lines = []
        for o in self.index.objects:
            lines.append(f"object {o}: {self.base.format_object(self.objects[o])}")
        for a in self.index.arrows:
            s, t = self.index.ends(a)
            lines.append(f"arrow {a} ({s} -> {t}): {self.base.format_morphism(self.arrows[a])}")
        return lines


@dataclass(frozen=True, eq=False)
class IndMorphismSame:
    source: IndObject
    target: IndObject
    family: Mapping

    def __post_init__(self):
        if self.source.index != self.target.index:
            raise DiagramError("same-index morphism between diagrams over different indices")
        fam = dict(self.family)
        if set(fam) != set(self.source.index.objects):
            raise DiagramError("family must have one component per index object")
        base = self.source.base
        for i, f in fam.items():
            if base.dom(f) != self.source.objects[i] or base.cod(f) != self.target.objects[i]:
                raise DiagramError(f"component at {i} has the wrong endpoints")
        object.__setattr__(self, "family", fam)

    def __eq__(self, other) -> bool:
        if not isinstance(other, IndMorphismSame):
            return NotImplemented
        return self.source == other.source and self.target == other.target and self.family == other.family

    __hash__ = None

    def as_general(self) -> "IndMorphismGeneral":
        return IndMorphismGeneral(self.source, self.target, {i: (i, f) for i, f in self.family.items()})


@dataclass(frozen=True, eq=False)
class IndMorphismGeneral:
    source: IndObject
    target: IndObject
    assignment: Mapping

    def __post_init__(self):
        asg = dict(self.assignment)
        if set(asg) != set(self.source.index.objects):
            raise DiagramError("assignment must cover every source index object")
        base = self.source.base
        for i, (j, f) in asg.items():
            if j not in self.target.index.objects:
                raise DiagramError(f"unknown target index object {j!r}")
            if base.dom(f) != self.source.objects[i] or base.cod(f) != self.target.objects[j]:
                raise DiagramError(f"component at {i} has the wrong endpoints")
        object.__setattr__(self, "assignment", asg)

    def __eq__(self, other) -> bool:
        if not isinstance(other, IndMorphismGeneral):
            return NotImplemented
        return (self.source == other.source and self.target == other.target
                and self.assignment == other.assignment)

    __hash__ = None


def colim_hom_equiv(a: tuple, b: tuple, Y: IndObject) -> bool:
    (j, f), (j2, f2) = a, b
    base = Y.base
    if base.dom(f) != base.dom(f2):
        raise DiagramError("colim_hom_equiv: representatives have different sources")
    if base.cod(f) != Y.objects[j] or base.cod(f2) != Y.objects[j2]:
        raise DiagramError("colim_hom_equiv: representatives do not land in the diagram")
    J = Y.index
    for u in J.arrows_from(j):
        k = J.dst(u)
        lhs = base.compose(Y.arrows[u], f)
        for u2 in J.arrows_from(j2):
            if J.dst(u2) != k:
                continue
            if base.equal(lhs, base.compose(Y.arrows[u2], f2)):
                return True
    return False


def ind_morphism_valid(rho) -> bool:
    X, Y = rho.source, rho.target
    base = X.base
    if isinstance(rho, IndMorphismSame):
        for u in X.index.all_arrows():
            s, t = X.index.ends(u)
            if not base.equal(base.compose(rho.family[t], X.arrows[u]),
                              base.compose(Y.arrows[u], rho.family[s])):
                return False
        return True
    for u in X.index.all_arrows():
        s, t = X.index.ends(u)
        js, fs = rho.assignment[s]
        jt, ft = rho.assignment[t]
        if not colim_hom_equiv((js, fs), (jt, base.compose(ft, X.arrows[u])), Y):
            return False
    return True


def ind_identity(X: IndObject) -> IndMorphismSame:
    return IndMorphismSame(X, X, {i: X.base.identity(X.objects[i]) for i in X.index.objects})


def _terminal_reach(J: FiniteCategory, j: str) -> tuple:
    """Canonical arrow from ``j`` to the first reachable object with no
    outgoing non-identity arrows."""
    candidates = [u for u in J.arrows_from(j)
                  if all(J.is_identity(w) for w in J.arrows_from(J.dst(u)))]
    if not candidates:
        return J.identity(j), j
    u = min(candidates, key=lambda a: (J.dst(a), a))
    return u, J.dst(u)


def _normalize(rep: tuple, Y: IndObject) -> tuple:
    j, f = rep
    u, k = _terminal_reach(Y.index, j)
    return k, Y.base.compose(Y.arrows[u], f)


def ind_compose(sigma, rho):
    """``sigma ∘ rho``."""
    if rho.target != sigma.source:
        raise DiagramError("ind_compose: target of the first morphism is not the source of the second")
    base = rho.source.base
    if isinstance(rho, IndMorphismSame) and isinstance(sigma, IndMorphismSame):
        return IndMorphismSame(rho.source, sigma.target,
                               {i: base.compose(sigma.family[i], rho.family[i]) for i in rho.family})
    r = rho.as_general() if isinstance(rho, IndMorphismSame) else rho
    s = sigma.as_general() if isinstance(sigma, IndMorphismSame) else sigma
    out = {}
    for i, (j, f) in r.assignment.items():
        k, g = s.assignment[j]
        out[i] = _normalize((k, base.compose(g, f)), s.target)
    return IndMorphismGeneral(r.source, s.target, out)


def ind_apply_functor(F: Union[str, BaseFunctor], X: IndObject) -> IndObject:
    if isinstance(F, str):
        F = X.base.functor(F)
    return IndObject(X.index, X.base,
                     {i: F.on_object(b) for i, b in X.objects.items()},
                     {a: F.on_morphism(f) for a, f in X.arrows.items()
                      if not X.index.is_identity(a)})


def ind_functor_on_morphism(F: Union[str, BaseFunctor], rho):
    base = rho.source.base
    if isinstance(F, str):
        F = base.functor(F)
    src, tgt = ind_apply_functor(F, rho.source), ind_apply_functor(F, rho.target)
    if isinstance(rho, IndMorphismSame):
        return IndMorphismSame(src, tgt, {i: F.on_morphism(f) for i, f in rho.family.items()})
    return IndMorphismGeneral(src, tgt, {i: (j, F.on_morphism(f)) for i, (j, f) in rho.assignment.items()})


def ind_apply_nat(alpha: Union[str, NatTrans], X: IndObject) -> IndMorphismSame:
    base = X.base
    if isinstance(alpha, str):
        alpha = base.nat(alpha)
    src = ind_apply_functor(base.functor(alpha.source), X)
    tgt = ind_apply_functor(base.functor(alpha.target), X)
    return IndMorphismSame(src, tgt, {i: alpha.component(b) for i, b in X.objects.items()})


# ---------- pullbacks ----------

def _apoly_pullback(f: PolyMap, g: PolyMap):
    """Pullback of two maps that both project onto the trailing block of the
    common target (including the product case over arity 0)."""
    z = f.dst
    for h in (f, g):
        expected = PolyMap(h.src, z, tuple(Polynomial.var(cdc.xvar(h.src - z + i), h.rig)
                                           for i in range(1, z + 1)), h.rig) if h.src >= z else None
        if z and h != expected:
            raise DiagramError("APoly pullbacks are supported for trailing-block projections "
                              "and products over arity 0")
    n, m, rig = f.src - z, g.src - z, f.rig
    total = n + m + z
    front1 = PolyMap(total, n, tuple(Polynomial.var(cdc.xvar(i), rig) for i in range(1, n + 1)), rig)
    front2 = PolyMap(total, m, tuple(Polynomial.var(cdc.xvar(n + i), rig) for i in range(1, m + 1)), rig)
    tail = PolyMap(total, z, tuple(Polynomial.var(cdc.xvar(n + m + i), rig) for i in range(1, z + 1)), rig)
    return total, pm_pair(front1, tail, src=total, rig=rig), pm_pair(front2, tail, src=total, rig=rig), (n, m, z)


def ind_pullback(X: IndObject, Y: IndObject, Z: IndObject, f: IndMorphismSame, g: IndMorphismSame):
    """Levelwise pullback of ``f: X -> Z`` and ``g: Y -> Z``.  Returns the
    diagram and its two projections."""
    if not (X.index == Y.index == Z.index):
        raise DiagramError("ind_pullback needs diagrams over one index")
    if f.target != Z or g.target != Z or f.source != X or g.source != Y:
        raise DiagramError("ind_pullback: maps do not match the diagrams")
    base = X.base
    I = X.index
    if isinstance(base, _APoly):
        data = {i: _apoly_pullback(f.family[i], g.family[i]) for i in I.objects}
        objects = {i: d[0] for i, d in data.items()}
        arrows = {}
        for u in I.arrows:
            s, t = I.ends(u)
            _, pr1, pr2, _ = data[s]
            n2, m2, z2 = data[t][3]
            a = pm_compose(X.arrows[u], pr1)
            b = pm_compose(Y.arrows[u], pr2)
            front_a = PolyMap(a.src, n2, a.components[:n2], a.rig)
            front_b = PolyMap(b.src, m2, b.components[:m2], b.rig)
            tail_a = PolyMap(a.src, z2, a.components[n2:], a.rig)
            arrows[u] = pm_pair(front_a, front_b, tail_a, src=a.src, rig=a.rig)
        P = IndObject(I, base, objects, arrows)
        pr1 = IndMorphismSame(P, X, {i: data[i][1] for i in I.objects})
        pr2 = IndMorphismSame(P, Y, {i: data[i][2] for i in I.objects})
        return P, pr1, pr2
    if isinstance(base, _Alg) and base.opposite:
        data = {i: _ring_pushout(f.family[i], g.family[i]) for i in I.objects}
        objects = {i: d[0] for i, d in data.items()}
        arrows = {}
        for u in I.arrows:
            s, t = I.ends(u)
            Ps, (i1s, i2s) = data[s]
            Pt, (i1t, i2t) = data[t]
            arrows[u] = copair(Pt, (i1t, i2t), [hom_compose(i1s, X.arrows[u]),
                                                hom_compose(i2s, Y.arrows[u])])
        P = IndObject(I, base, objects, arrows)
        pr1 = IndMorphismSame(P, X, {i: data[i][1][0] for i in I.objects})
        pr2 = IndMorphismSame(P, Y, {i: data[i][1][1] for i in I.objects})
        return P, pr1, pr2
    raise DiagramError(f"levelwise pullbacks are not available over {base.tag}")


def _ring_pushout(f: AlgebraHom, g: AlgebraHom):
    """Pushout of ring maps ``f: C -> A`` and ``g: C -> B``."""
    C, A, B = f.source, f.target, g.target
    shared = all(f.image(z) == A.gen(z) if z in A.generators else False for z in C.generators) and \
        all(g.image(z) == B.gen(z) if z in B.generators else False for z in C.generators)
    if shared:
        P, (ia, ib) = tensor_many([A, B], base=C.generators)
    else:
        P, (ia, ib) = tensor_many([A, B])
        glue = [ia(f.image(z)) - ib(g.image(z)) for z in C.generators]
        P2 = P.with_relations(glue)
        ia = AlgebraHom(A, P2, ia.image_items)
        ib = AlgebraHom(B, P2, ib.image_items)
        P = P2
    return P, (AlgebraHom(A, P, ia.image_items), AlgebraHom(B, P, ib.image_items))


# ---------- differential objects and formal schemes ----------

def diff_object_check(X: IndObject):
    """(True, None) when every transition is D-linear, else (False, arrow)."""
    if not isinstance(X.base, _APoly):
        raise DiagramError("differential-object detection needs an APoly diagram")
    for a in X.index.arrows:
        if not cdc.is_dlinear(X.arrows[a]):
            return False, a
    return True, None


def formal_spf(N: int, truncate: bool = False):
    """The chain Spec Q[t]/(t) -> ... -> Spec Q[t]/(t^N) and its tangent."""
    if N < 1:
        raise ValueError("truncation level must be at least 1")
    base = _Alg(True, truncate)
    levels = [str(n) for n in range(1, N + 1)]
    names = {n: f"inc{n}" for n in range(1, N)}
    index = FiniteCategory.from_presentation(
        levels, [(names[n], str(n), str(n + 1)) for n in range(1, N)])
    t = Polynomial.var("t", Rig.RAT)
    algebras = {str(n): PresentedAlgebra(Rig.RAT, ("t",), (t ** n,)) for n in range(1, N + 1)}
    arrows = {names[n]: AlgebraHom(algebras[str(n + 1)], algebras[str(n)], (("t", t),))
              for n in range(1, N)}
    X = IndObject(index, base, algebras, arrows)
    return X, ind_apply_functor("T", X)


# ---------- axiom suite ----------

def _family_check(report: Report, name: str, lhs: IndMorphismSame, rhs: IndMorphismSame) -> None:
    base = lhs.source.base
    for i in lhs.source.index.objects:
        if not base.equal(lhs.family[i], rhs.family[i]):
            report.add(name, False, f"level {i}: {base.format_morphism(lhs.family[i])} vs "
                                    f"{base.format_morphism(rhs.family[i])}")
            return
    report.add(name, True)


def check_ind_tangent_axioms(X: IndObject, levelwise: bool = True) -> Report:
    base = X.base
    report = Report("Ind tangent axioms")
    report.notes.append("composites of general morphisms are stored at the first terminal index "
                        "reachable from each source level; any cocone-equivalent representative is admissible")
    if not check_filtered(X.index):
        report.add("index is filtered", False, "index category is not filtered")
        return report
    fails = X.functoriality_failures()
    report.add("diagram is functorial", not fails, ", ".join(fails))
    if isinstance(base, _Alg) and not base.opposite:
        names = {"p": "zeta", "zero": "q", "plus": "add", "ell": "v", "flip": "gamma"}
    else:
        names = {k: k for k in ("p", "zero", "plus", "ell", "flip")}
    hat = {k: ind_apply_nat(v, X) for k, v in names.items()}
    TX = ind_apply_functor("T", X)
    T2X = ind_apply_functor("T2", X)
    TTX = ind_apply_functor("TT", X)
    for label, D in (("Ind(T)X", TX), ("Ind(T2)X", T2X), ("Ind(TT)X", TTX)):
        bad = D.functoriality_failures()
        report.add(f"{label} is functorial", not bad, ", ".join(bad))

    # naturality of every family against the transitions of X
    for k in ("p", "zero", "plus", "ell", "flip"):
        report.add(f"naturality of {k}^ against transitions", ind_morphism_valid(hat[k]),
                   f"{k}^ fails a naturality square")

    if base.tag != "Alg":
        # Ind-level equations in scheme/morphism direction
        _family_check(report, "Axiom 2: p^∘0^ = id", ind_compose(hat["p"], hat["zero"]), ind_identity(X))
        _family_check(report, "Axiom 5: c²=id (levelwise c^∘c^)", ind_compose(hat["flip"], hat["flip"]), ind_identity(TTX))
        _family_check(report, "Axiom 5: cℓ=ℓ (levelwise c^∘ℓ^)", ind_compose(hat["flip"], hat["ell"]), hat["ell"])
        Tell = ind_functor_on_morphism("T", hat["ell"])
        ell_T = ind_apply_nat(base.nat("ell"), TX)
        _family_check(report, "Axiom 5: T(ℓ^)∘ℓ^ = ℓ^_T∘ℓ^",
                      ind_compose(Tell, hat["ell"]), ind_compose(ell_T, hat["ell"]))
        Tp = ind_functor_on_morphism("T", hat["p"])
        p_T = ind_apply_nat(base.nat("p"), TX)
        _family_check(report, "Axiom 4: p^_T∘c^ = T(p^)", ind_compose(p_T, hat["flip"]), Tp)
        P, pr1, pr2 = ind_pullback(TX, TX, X, hat["p"], hat["p"])
        report.add("Axiom 1: T2^X is the levelwise pullback of p^ along p^", P == T2X,
                   "levelwise pullback differs from Ind(T2)X")
        _family_check(report, "Axiom 2: p^∘+^ = p^∘π1",
                      ind_compose(hat["p"], hat["plus"]), ind_compose(hat["p"], pr1))
    if isinstance(base, _APoly):
        objs = X.objects
        swap = IndMorphismSame(T2X, T2X, {i: cdc.blocks(n, 3, (1, 0, 2), base.rig) for i, n in objs.items()})
        _family_check(report, "Axiom 2: +^ commutative", ind_compose(hat["plus"], swap), hat["plus"])
        unit = IndMorphismSame(TX, T2X, {
            i: cdc._t2_pair(pm_identity(2 * n, base.rig), pm_compose(hat["zero"].family[i], hat["p"].family[i]), n)
            for i, n in objs.items()})
        _family_check(report, "Axiom 2: +^ unit against 0^", ind_compose(hat["plus"], unit), ind_identity(TX))
    if levelwise:
        for i in X.index.objects:
            obj = X.objects[i]
            if isinstance(base, _APoly):
                sub = cdc.check_tangent_axioms(obj, samples=0, rig=base.rig)
            else:
                sub = check_zariski_axioms(obj, test_homs=[], truncate=base.truncate)
            report.merge(sub, prefix=f"level {i}: ")

    if isinstance(base, _APoly):
        is_diff, witness = diff_object_check(X)
        if is_diff:
            zero_obj = IndObject(X.index, base, {i: 0 for i in X.index.objects},
                                 {u: PolyMap(0, 0, (), base.rig) for u in X.index.arrows})
            bang = IndMorphismSame(X, zero_obj, {i: PolyMap(X.objects[i], 0, (), base.rig)
                                                 for i in X.index.objects})
            prod, _, _ = ind_pullback(X, X, zero_obj, bang, bang)
            report.add("differential object: T^X = X × X levelwise", prod == TX,
                       "tangent diagram differs from the levelwise square")
        else:
            report.notes.append(f"not a differential object: arrow {witness} is not D-linear")
    return report


# ---------- documents ----------

def diagram_from_document(doc: Mapping, truncate: bool = False) -> IndObject:
    try:
        idx = doc["index"]
        base = base_category(doc.get("base", "APoly"), doc.get("rig", "Q"), truncate)
        objects = list(idx["objects"])
        gens = [(a["name"], a["src"], a["dst"]) for a in idx.get("arrows", [])]
        rels = [tuple(r) for r in idx.get("relations", [])]
        index = FiniteCategory.from_presentation(objects, gens, rels)
        objs = {o: base.object_from_document(doc["objects"][o]) for o in objects}
        arrows = {}
        for name, s, t in gens:
            arrows[name] = base.morphism_from_document(doc["arrows"][name], objs[s], objs[t])
    except KeyError as exc:
        raise DiagramError(f"diagram document is missing {exc}") from None
    return IndObject(index, base, objs, arrows)
