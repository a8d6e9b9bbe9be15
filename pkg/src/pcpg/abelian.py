"""Finitely presented abelian groups, their homomorphisms, kernels and equalizers.

Everything goes through the Smith form of the relator matrix: a group
``<a_1..a_n | rows>`` becomes ``Z^l x Z/d_1 x ... x Z/d_t`` with
``d_1 | d_2 | ... | d_t``, each ``d_i >= 2``.  Canonical coordinates list the
free part first, then the torsion part.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import List, Optional, Sequence

from .intlinalg import Matrix, hermite_normal_form, matmul, smith_normal_form, solve_mixed


@dataclass(frozen=True)
class AbelianCanon:
    """Canonical decomposition of an abelian group given by generators and relator rows.

    ``to_canonical[g]`` holds the canonical coordinates of generator ``g``;
    ``from_canonical[k]`` is an exponent vector over the original generators
    representing canonical generator ``k``.
    """

    gens: tuple
    free_rank: int
    torsion: tuple
    to_canonical: Matrix
    from_canonical: Matrix

    @property
    def ngens(self) -> int:
        return len(self.gens)

    @property
    def rank(self) -> int:
        """Number of canonical coordinates."""
        return self.free_rank + len(self.torsion)

    @property
    def moduli(self) -> List[int]:
        return [0] * self.free_rank + list(self.torsion)

    def order(self) -> Optional[int]:
        if self.free_rank:
            return None
        out = 1
        for d in self.torsion:
            out *= d
        return out

    def reduce(self, v: Sequence[int]) -> List[int]:
        return [x % m if m else x for x, m in zip(v, self.moduli)]

    def coords(self, exponents: Sequence[int]) -> List[int]:
        """Canonical coordinates of the element with the given generator exponents."""
        if len(exponents) != self.ngens:
            raise ValueError("exponent vector has wrong length")
        out = [0] * self.rank
        for e, row in zip(exponents, self.to_canonical):
            if e:
                for k, v in enumerate(row):
                    out[k] += e * v
        return self.reduce(out)

    def lift(self, coords: Sequence[int]) -> List[int]:
        """Exponent vector over the original generators for canonical coordinates."""
        out = [0] * self.ngens
        for c, row in zip(coords, self.from_canonical):
            if c:
                for g, v in enumerate(row):
                    out[g] += c * v
        return out

    def is_zero(self, coords: Sequence[int]) -> bool:
        return not any(self.reduce(coords))

    def invariants(self):
        return (self.free_rank, tuple(self.torsion))


def canonicalize(gens: Sequence, relator_rows: Sequence[Sequence[int]]) -> AbelianCanon:
    """Canonical form of ``<gens | relator_rows>`` (one column per generator)."""
    n = len(gens)
    for row in relator_rows:
        if len(row) != n:
            raise ValueError("relator row length differs from generator count")
    snf = smith_normal_form(relator_rows, n)
    d = snf.invariants
    # Row space of A equals row space of D·V^-1, so the rows of V^-1 form a
    # basis in which the relations are diagonal.
    Vinv = _unimodular_inverse(snf.V)
    torsion_idx = [i for i, di in enumerate(d) if di != 1]
    free_idx = list(range(snf.rank, n))
    order = free_idx + torsion_idx
    torsion = tuple(d[i] for i in torsion_idx)
    moduli = [0] * len(free_idx) + list(torsion)
    to_can = []
    for g in range(n):
        row = [snf.V[g][i] for i in order]
        to_can.append([x % m if m else x for x, m in zip(row, moduli)])
    from_can = [list(Vinv[i]) for i in order]
    return AbelianCanon(
        gens=tuple(gens),
        free_rank=len(free_idx),
        torsion=torsion,
        to_canonical=to_can,
        from_canonical=from_can,
    )


def free_abelian(gens: Sequence) -> AbelianCanon:
    return canonicalize(gens, [])


def _unimodular_inverse(V: Matrix) -> Matrix:
    n = len(V)
    if n == 0:
        return []
    # Row-reduce [V | I]; V is unimodular so the HNF of V is the identity.
    aug = [list(V[i]) + [int(i == j) for j in range(n)] for i in range(n)]
    H = hermite_normal_form(aug, 2 * n)
    inv = [row[n:] for row in H]
    if len(inv) != n or any(H[i][i] != 1 for i in range(n)):
        raise ValueError("matrix is not unimodular")
    return inv


@dataclass(frozen=True)
class AbelianHom:
    """Homomorphism between canons; ``matrix[k]`` is the image of canonical source generator ``k``."""

    source: AbelianCanon
    target: AbelianCanon
    matrix: Matrix

    def __post_init__(self):
        if len(self.matrix) != self.source.rank:
            raise ValueError("matrix needs one row per canonical source generator")
        for row in self.matrix:
            if len(row) != self.target.rank:
                raise ValueError("matrix row length differs from target rank")
        object.__setattr__(self, "matrix", [self.target.reduce(r) for r in self.matrix])
        src = self.source
        for k, d in enumerate(src.torsion):
            row = self.matrix[src.free_rank + k]
            if not self.target.is_zero([d * x for x in row]):
                raise ValueError(
                    f"torsion generator of order {d} has an image not killed by {d}"
                )

    @classmethod
    def from_images(cls, source: AbelianCanon, target: AbelianCanon, images: Sequence[Sequence[int]]) -> "AbelianHom":
        """Build from images of the original source generators (exponent vectors over target gens)."""
        if len(images) != source.ngens:
            raise ValueError("need one image per source generator")
        mat = []
        for k in range(source.rank):
            lifted = source.from_canonical[k]
            acc = [0] * target.ngens
            for g, c in enumerate(lifted):
                if c:
                    for t, v in enumerate(images[g]):
                        acc[t] += c * v
            mat.append(target.coords(acc))
        hom = cls(source, target, mat)
        # relators of the source must die in the target
        for g in range(source.ngens):
            direct = target.coords(images[g])
            via = hom.apply(source.to_canonical[g])
            if direct != via:
                raise ValueError("generator images do not respect the source relators")
        return hom

    def apply(self, coords: Sequence[int]) -> List[int]:
        out = [0] * self.target.rank
        for c, row in zip(coords, self.matrix):
            if c:
                for k, v in enumerate(row):
                    out[k] += c * v
        return self.target.reduce(out)

    def __sub__(self, other: "AbelianHom") -> "AbelianHom":
        _check_same_ends(self, other)
        mat = [[a - b for a, b in zip(r1, r2)] for r1, r2 in zip(self.matrix, other.matrix)]
        return AbelianHom(self.source, self.target, mat)


def _check_same_ends(phi: AbelianHom, psi: AbelianHom):
    if phi.source.invariants() != psi.source.invariants() or phi.source.to_canonical != psi.source.to_canonical:
        raise ValueError("homomorphisms have different sources")
    if phi.target.invariants() != psi.target.invariants() or phi.target.to_canonical != psi.target.to_canonical:
        raise ValueError("homomorphisms have different targets")


def mixed_kernel(targets: Sequence[Sequence[int]], k: int, B: AbelianCanon) -> Matrix:
    """Generators of ``{m in Z^k : sum_j m_j * targets[j] = 0 in B}``.

    ``targets`` are canonical coordinates in ``B``.  The result is an HNF
    basis of the exponent lattice.
    """
    if len(targets) != k:
        raise ValueError(f"expected {k} targets, got {len(targets)}")
    rows = [[targets[j][i] for j in range(k)] for i in range(B.rank)]
    sol = solve_mixed(rows, B.moduli, [0] * B.rank, k)
    assert sol is not None  # homogeneous systems are always solvable
    return sol.kernel


def hom_kernel(phi: AbelianHom) -> Matrix:
    """Generators of ``ker phi`` in canonical source coordinates (trivial ones dropped)."""
    src = phi.source
    lattice = mixed_kernel(phi.matrix, src.rank, phi.target)
    # lattice vectors that only wrap source torsion are the identity in the source
    rows = [src.reduce(v) for v in lattice]
    rows = [r for r in rows if any(r)]
    if not rows:
        return []
    reduced = hermite_normal_form(rows, src.rank)
    out = []
    for r in reduced:
        r = src.reduce(r)
        if any(r) and r not in out:
            out.append(r)
    return out


def hom_equalizer(phi: AbelianHom, psi: AbelianHom) -> Matrix:
    """Generators of ``{g : phi(g) = psi(g)}``, the kernel of ``phi - psi``."""
    return hom_kernel(phi - psi)


def to_original(canon: AbelianCanon, vectors: Sequence[Sequence[int]]) -> Matrix:
    """Re-express canonical-coordinate vectors as exponent vectors over the original generators."""
    return [canon.lift(v) for v in vectors]


def compose(phi: AbelianHom, psi: AbelianHom) -> AbelianHom:
    """``psi ∘ phi``."""
    mat = matmul(phi.matrix, psi.matrix, psi.target.rank) if phi.matrix else []
    return AbelianHom(phi.source, psi.target, mat)
