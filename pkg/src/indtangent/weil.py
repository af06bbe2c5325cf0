"""Weil algebras W^n = N[x1..xn]/(xi*xj) and their finite tensor products."""

from __future__ import annotations

import functools
import re
from dataclasses import dataclass
from typing import Sequence

from .algebra import AlgebraHom, PresentedAlgebra, VariableMismatch, hom_well_defined
from .symcore import Polynomial, Rig

__all__ = [
    "WeilObject",
    "weil_generate",
    "weil_tensor",
    "weil_parse",
    "weil_morphism_check",
    "augmentation",
    "block_names",
]

_LETTERS = "xyzuvwabcdefghijklmnopqrst"


def block_names(blocks: Sequence[int]) -> list:
    """Generator names per block: block k uses the k-th letter, indexed from 1
    when the block has more than one generator."""
    names = []
    for k, size in enumerate(blocks):
        letter = _LETTERS[k] if k < len(_LETTERS) else f"w{k + 1}_"
        if size == 1:
            names.append([letter])
        else:
            names.append([f"{letter}{i}" for i in range(1, size + 1)])
    return names


@dataclass(frozen=True)
class WeilObject:
    blocks: tuple
    rig: Rig = Rig.NAT

    def __post_init__(self):
        blocks = tuple(int(b) for b in self.blocks)
        if any(b < 0 for b in blocks):
            raise ValueError("block sizes must be nonnegative")
        object.__setattr__(self, "blocks", tuple(b for b in blocks if b))
        object.__setattr__(self, "rig", Rig.parse(self.rig))

    @property
    def block_generators(self) -> list:
        return block_names(self.blocks)

    @functools.cached_property
    def realized(self) -> PresentedAlgebra:
        gens, rels = [], []
        for names in self.block_generators:
            gens.extend(names)
            for i, a in enumerate(names):
                for b in names[i:]:
                    rels.append(Polynomial.var(a, self.rig) * Polynomial.var(b, self.rig))
        return PresentedAlgebra(self.rig, tuple(gens), tuple(rels))

    def over(self, rig) -> "WeilObject":
        return WeilObject(self.blocks, rig)

    def __str__(self) -> str:
        return f"W[{','.join(map(str, self.blocks))}]"


def weil_generate(n: int, rig=Rig.NAT) -> WeilObject:
    return WeilObject((n,), rig)


def weil_tensor(V: WeilObject, W: WeilObject) -> WeilObject:
    if V.rig is not W.rig:
        raise ValueError("Weil objects over different rigs")
    return WeilObject(V.blocks + W.blocks, V.rig)


_WEIL_RE = re.compile(r"^\s*W\s*\[\s*([0-9\s,]*)\]\s*$")


def weil_parse(text: str, rig=Rig.NAT) -> WeilObject:
    """Parse ``W[1,2]`` (also ``W[]`` and ``W1`` as shorthand for one block)."""
    m = _WEIL_RE.match(text)
    if m:
        body = m.group(1).strip()
        sizes = [int(s) for s in body.split(",") if s.strip()] if body else []
        return WeilObject(tuple(sizes), rig)
    short = re.match(r"^\s*W\s*(\d+)\s*$", text)
    if short:
        return weil_generate(int(short.group(1)), rig)
    raise ValueError(f"cannot parse Weil object {text!r}; expected e.g. W[1,2]")


def weil_morphism_check(phi: AlgebraHom) -> bool:
    """Relations preserved and every generator image has zero constant term."""
    if any(not img.constant_term() == 0 for img in phi.images.values()):
        return False
    return hom_well_defined(phi)


def augmentation(w: WeilObject, element: Polynomial):
    extra = element.variables() - set(w.realized.generators)
    if extra:
        raise VariableMismatch(f"{sorted(extra)} are not generators of {w}")
    return element.constant_term()

