"""Homomorphisms into pc-presented groups and commutant generators."""

from __future__ import annotations

import itertools
from typing import List, Optional, Sequence, Union

from ..freewords import Word, iterated_commutator
from .presentation import NilPresentation, PcElement, PcPresentation


def commutant_generators(gens: Sequence[Word], c: int) -> List[Word]:
    """Left-normed commutators ``[u_1, ..., u_k]`` of the inputs, ``2 <= k <= c``.

    Freely trivial commutators are dropped and repeats removed; order follows
    weight, then lexicographic order of the index tuples.
    """
    if c < 1:
        raise ValueError("class must be at least 1")
    gens = list(gens)
    out: List[Word] = []
    seen = set()
    for k in range(2, c + 1):
        for idx in itertools.product(range(len(gens)), repeat=k):
            if idx[0] == idx[1]:
                continue  # [u, u, ...] = 1
            w = iterated_commutator([gens[i] for i in idx])
            if w and w not in seen:
                seen.add(w)
                out.append(w)
    return out


class NilHom:
    """A homomorphism given by images of the source's original generators.

    ``source`` is the pc presentation (or the finite presentation) of the
    domain; ``images`` are words over the target's original alphabet.
    """

    def __init__(self, source: Union[PcPresentation, NilPresentation], target: PcPresentation, images: Sequence[Word]):
        self.source = source
        self.target = target
        self.images = tuple(images)
        nsrc = len(self.source_presentation.alphabet)
        if len(self.images) != nsrc:
            raise ValueError(f"{len(self.images)} images given for {nsrc} source generators")
        ntgt = len(target.alphabet)
        for w in self.images:
            if w.max_index() >= ntgt:
                raise ValueError("image uses a letter outside the target alphabet")
        self._image_vecs = [target._eval(w) for w in self.images]
        self._valid: Optional[bool] = None

    @property
    def source_presentation(self) -> NilPresentation:
        if isinstance(self.source, NilPresentation):
            return self.source
        if self.source.source is None:
            raise ValueError("source pc presentation has no underlying finite presentation")
        return self.source.source

    def image_element(self, i: int) -> PcElement:
        return PcElement(tuple(self._image_vecs[i]))

    def _apply_vec(self, w: Word) -> List[int]:
        G = self.target
        acc = G._zero()
        inv = {}
        for x in w.letters:
            i = abs(x) - 1
            if i >= len(self._image_vecs):
                raise IndexError(f"unknown generator index {i}")
            if x > 0:
                v = self._image_vecs[i]
            else:
                if i not in inv:
                    inv[i] = G._inv(self._image_vecs[i])
                v = inv[i]
            acc = G._mul(acc, v)
        return acc

    def __repr__(self):
        return f"<NilHom {len(self.images)} images>"


def hom_validate(phi: NilHom) -> bool:
    """Relators go to 1 and, for a class-``c`` source, so do all ``(c+1)``-fold commutators of images."""
    if phi._valid is not None:
        return phi._valid
    P = phi.source_presentation
    ok = all(not any(phi._apply_vec(r)) for r in P.relators)
    G = phi.target
    if ok and G.nilpotency_class > P.class_bound:
        k = P.class_bound + 1
        n = len(phi.images)
        for idx in itertools.product(range(n), repeat=k):
            if idx[0] == idx[1]:
                continue
            acc = phi._image_vecs[idx[0]]
            for t in idx[1:]:
                b = phi._image_vecs[t]
                acc = G._mul(G._mul(G._inv(acc), G._inv(b)), G._mul(acc, b))
            if any(acc):
                ok = False
                break
    phi._valid = ok
    return ok


def hom_apply(phi: NilHom, w: Word) -> PcElement:
    if not hom_validate(phi):
        raise ValueError("homomorphism does not respect the source relations")
    return PcElement(tuple(phi._apply_vec(w)))
