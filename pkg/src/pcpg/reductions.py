"""Instance encoders between word problems, twisted conjugacy and GPCP.

* Hereditary word problem: ``w = 1`` in ``<A | R>`` iff the GPCP over the free
  group on ``A`` built from the pair set ``D_R`` and the constant ``w`` has a
  solution.  A solution reads as a sequence of "sandwiches" ``v (.) u`` that
  cancels ``w`` down to the empty word.
* Double twisted conjugacy ``u w^phi = w^psi v`` is GPCP with the pairs
  ``(phi(a_i), psi(a_i))`` and constants ``(u, 1, 1, v)``.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import List, Optional, Sequence, Tuple, Union

from .freewords import IDENTITY, Alphabet, Word, substitute
from .nilpotent import NilHom, NilPresentation, PcPresentation, hom_validate, nilpotent_quotient
from .pcp import GpcpInstance, WordProblemOracle, normalize_gpcp

Pair = Tuple[Word, Word]


@dataclass(frozen=True)
class HwpInstance:
    alphabet: Alphabet
    relators: Tuple[Word, ...]
    w: Word

    def __post_init__(self):
        object.__setattr__(self, "relators", tuple(self.relators))
        n = len(self.alphabet)
        for r in self.relators + (self.w,):
            if r.max_index() >= n:
                raise ValueError("word uses a letter outside the alphabet")


def build_dr(A: Alphabet, R: Sequence[Word]) -> List[Pair]:
    """``(a, a^-1)`` and ``(a^-1, a)`` per generator, then ``(r, 1)`` and ``(r^-1, 1)`` per relator."""
    pairs: List[Pair] = []
    for a in A.gens():
        pairs.append((a, ~a))
        pairs.append((~a, a))
    for r in R:
        pairs.append((r, IDENTITY))
        pairs.append((~r, IDENTITY))
    return pairs


def encode_hwp_gpcp(inst: HwpInstance) -> GpcpInstance:
    """Pairs ``(u, v^-1)`` for ``(u, v)`` in ``D_R`` with constants ``(w, 1, 1, 1)``."""
    pairs = [(u, ~v) for u, v in build_dr(inst.alphabet, inst.relators)]
    return GpcpInstance(inst.alphabet, pairs, a1=inst.w)


def sandwich_apply(w: Word, seq: Sequence[Pair]) -> Word:
    """``v_n ( ... (v_1 w u_1) ... ) u_n`` for ``seq = [(u_1, v_1), ...]``."""
    for u, v in seq:
        w = v * w * u
    return w


def witness_sandwiches(witness: Word, dr: Sequence[Pair]) -> List[Pair]:
    """The ``D_R`` sequence a solution of the encoded instance spells out.

    A letter ``x_i`` contributes pair ``i``; ``x_i^-1`` contributes its
    inverse ``(u^-1, v^-1)``, which is again in ``D_R``.
    """
    seq = []
    for x in witness.letters:
        u, v = dr[abs(x) - 1]
        seq.append((u, v) if x > 0 else (~u, ~v))
    return seq


@dataclass(frozen=True)
class DtcInstance:
    """``u w^phi = w^psi v`` over a group given by its alphabet, or by a pc presentation."""

    alphabet: Alphabet
    phi: Tuple[Word, ...]
    psi: Tuple[Word, ...]
    u: Word
    v: Word
    group: Optional[PcPresentation] = None

    def __post_init__(self):
        object.__setattr__(self, "phi", tuple(self.phi))
        object.__setattr__(self, "psi", tuple(self.psi))
        n = len(self.alphabet)
        for images in (self.phi, self.psi):
            if len(images) != n:
                raise ValueError(f"endomorphism needs {n} images, got {len(images)}")
        for w in self.phi + self.psi + (self.u, self.v):
            if w.max_index() >= n:
                raise ValueError("word uses a letter outside the alphabet")
        if self.group is not None and self.group.alphabet != self.alphabet:
            raise ValueError("group alphabet differs from the instance alphabet")

    def holds(self, w: Word, oracle: WordProblemOracle) -> bool:
        """Direct check of ``u w^phi = w^psi v``."""
        lhs = self.u * substitute(w, self.phi)
        rhs = substitute(w, self.psi) * self.v
        return oracle.is_trivial(lhs * ~rhs)


def _check_endomorphisms(inst: DtcInstance):
    G = inst.group
    if G is None:
        return  # free group: every assignment of images is an endomorphism
    for images in (inst.phi, inst.psi):
        if not hom_validate(NilHom(G, G, images)):
            raise ValueError("images do not define an endomorphism of the group")


def encode_dtc_gpcp(inst: DtcInstance) -> GpcpInstance:
    """Pairs ``(phi(a_i), psi(a_i))`` with constants ``(u, 1, 1, v)``."""
    _check_endomorphisms(inst)
    pairs = list(zip(inst.phi, inst.psi))
    return GpcpInstance(inst.alphabet, pairs, a1=inst.u, b2=inst.v)


def decode_gpcp_dtc(inst: GpcpInstance, n: int, c: int) -> DtcInstance:
    """Read a GPCP instance over ``N_{n,c}`` as twisted conjugacy.

    The target alphabet is taken as the free basis, so it must have ``n``
    letters.  Constants ``(u, 1, 1, v)`` are read directly; any other constants
    are first normalized to ``(a, 1, 1, 1)``.
    """
    if inst.n != n:
        raise ValueError(f"instance has {inst.n} pairs, expected {n}")
    if len(inst.alphabet) != n:
        raise ValueError(f"a free basis of rank {n} needs {n} target letters, got {len(inst.alphabet)}")
    if inst.b1 or inst.a2:
        inst = normalize_gpcp(inst)
    G = nilpotent_quotient(NilPresentation(inst.alphabet, (), c))
    return DtcInstance(inst.alphabet, inst.g_side(), inst.h_side(), inst.a1, inst.b2, group=G)
