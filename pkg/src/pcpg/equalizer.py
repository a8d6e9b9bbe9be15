"""Equalizers ``{h : phi(h) = psi(h)}`` of homomorphisms between nilpotent groups.

The equalizer is built by climbing the lower central series of the target.
If ``L`` generates the set of ``h`` with ``phi(h) = psi(h)`` modulo
``gamma_c(G)``, then ``xi(h) = phi(h) psi(h)^-1`` restricted to ``<L>`` is a
homomorphism into the central layer ``gamma_c / gamma_{c+1}``.  Its kernel is
generated by the words ``h_1^m_1 ... h_k^m_k`` for ``m`` in the exponent
lattice killed by ``xi``, together with the commutator subgroup of ``<L>``.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import List, Optional, Sequence, Tuple

from .abelian import mixed_kernel
from .freewords import Alphabet, Word
from .nilpotent import (
    NilHom,
    PcPresentation,
    commutant_generators,
    free_nilpotent,
    gamma_layer,
    hom_validate,
)
from .nilpotent.subgroups import subgroup_sequence


@dataclass(frozen=True)
class EqualizerResult:
    generators: Tuple[Word, ...]
    modulo_gamma: Optional[Tuple[int, int]] = None


def _check_pair(H: PcPresentation, G: PcPresentation, phi: NilHom, psi: NilHom):
    for f in (phi, psi):
        if f.target is not G:
            raise ValueError("homomorphism target differs from G")
        if f.source is not H and f.source is not H.source:
            raise ValueError("homomorphism source differs from H")
        if not hom_validate(f):
            raise ValueError("homomorphism does not respect the source relations")


def _reduce(H: PcPresentation, words: Sequence[Word], prune: bool = False) -> List[Word]:
    elems = subgroup_sequence(H, (H.normal_form(w) for w in words)).elements()
    if prune:
        # drop generators already produced by the others, deepest first
        for i in range(len(elems) - 1, -1, -1):
            rest = elems[:i] + elems[i + 1:]
            if subgroup_sequence(H, rest).contains(elems[i]):
                elems = rest
    return [H.element_word(e) for e in elems]


def equalizer_nilpotent(H: PcPresentation, G: PcPresentation, phi: NilHom, psi: NilHom) -> EqualizerResult:
    """Words over ``H``'s generators that generate ``E(phi, psi)``."""
    _check_pair(H, G, phi, psi)
    if H.source is None or G.source is None:
        raise ValueError("presentations must come from nilpotent_quotient")
    L = _reduce(H, H.alphabet.gens())
    cH = max(H.nilpotency_class, 1)
    for c in range(1, G.nilpotency_class + 1):
        if not L:
            break
        Gc = G.truncate(c)
        f = NilHom(H, Gc, phi.images)
        g = NilHom(H, Gc, psi.images)
        layer = gamma_layer(Gc, c)
        targets = []
        for h in L:
            a, b = f._apply_vec(h), g._apply_vec(h)
            xi = Gc._mul(a, Gc._inv(b))
            if any(xi[p] for p in range(Gc.n) if Gc.weights[p] < c):
                raise RuntimeError("difference map left the central layer")
            targets.append(layer.coords(xi))
        lattice = mixed_kernel(targets, len(L), layer.canon)
        words = []
        for m in lattice:
            acc = Word()
            for h, e in zip(L, m):
                if e:
                    acc = acc * h ** e
            words.append(acc)
        words += commutant_generators(L, cH)
        L = _reduce(H, words)
    return EqualizerResult(tuple(_reduce(H, L, prune=True)))


def equalizer_free_source(n: int, c: int, G: PcPresentation, phi: Sequence[Word], psi: Sequence[Word]) -> EqualizerResult:
    """Generators of ``E(phi, psi)`` in ``F_n`` modulo ``gamma_{c+1}(F_n)``, over ``x1 .. xn``."""
    if n < 1:
        raise ValueError("need at least one source generator")
    if G.nilpotency_class > c:
        raise ValueError(f"target has class {G.nilpotency_class} > {c}")
    N = free_nilpotent(n, c)
    f = NilHom(N, G, phi)
    g = NilHom(N, G, psi)
    res = equalizer_nilpotent(N, G, f, g)
    return EqualizerResult(res.generators, modulo_gamma=(n, c + 1))
