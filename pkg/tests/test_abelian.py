import random

import pytest

from pcpg.abelian import (
    AbelianHom,
    canonicalize,
    free_abelian,
    hom_equalizer,
    hom_kernel,
    mixed_kernel,
)
from oracles import abelian_closure, abelian_elements


def cyclic_product(moduli):
    """``Z/m_1 x ... x Z/m_k`` presented on one generator per factor."""
    n = len(moduli)
    rows = [[m if i == j else 0 for j in range(n)] for i, m in enumerate(moduli)]
    return canonicalize([f"e{i}" for i in range(n)], rows)


def test_canonicalize_examples():
    assert free_abelian(["a", "b"]).invariants() == (2, ())
    assert canonicalize(["a"], [[2]]).invariants() == (0, (2,))
    assert canonicalize(["a", "b"], [[2, 0]]).invariants() == (1, (2,))
    assert canonicalize(["a", "b"], [[2, 0], [0, 3]]).invariants() == (0, (6,))
    assert canonicalize(["a", "b"], [[1, 1]]).invariants() == (1, ())


def test_coords_lift_roundtrip():
    rng = random.Random(2)
    for _ in range(50):
        n = rng.randint(1, 4)
        rows = [[rng.randint(-6, 6) for _ in range(n)] for _ in range(rng.randint(0, 3))]
        C = canonicalize(list(range(n)), rows)
        for _ in range(10):
            x = [rng.randint(-9, 9) for _ in range(n)]
            c = C.coords(x)
            assert C.coords(C.lift(c)) == c
        # relators vanish
        for r in rows:
            assert C.is_zero(C.coords(r))


def test_hom_kernel_examples():
    Z2 = free_abelian(["a", "b"])
    Z = free_abelian(["t"])
    phi = AbelianHom.from_images(Z2, Z, [[2], [3]])
    assert [Z2.lift(v) for v in hom_kernel(phi)] in ([[3, -2]], [[-3, 2]])
    T2 = canonicalize(["a"], [[2]])
    assert hom_kernel(AbelianHom.from_images(T2, T2, [[1]])) == []
    Zs = free_abelian(["a"])
    assert hom_kernel(AbelianHom.from_images(Zs, T2, [[1]])) == [[2]]


def test_hom_equalizer_examples():
    Z2 = free_abelian(["a", "b"])
    Z = free_abelian(["t"])
    phi = AbelianHom.from_images(Z2, Z, [[2], [3]])
    psi = AbelianHom.from_images(Z2, Z, [[0], [0]])
    assert [Z2.lift(v) for v in hom_equalizer(phi, psi)] in ([[3, -2]], [[-3, 2]])
    assert sorted(hom_equalizer(phi, phi)) == [[0, 1], [1, 0]]
    Zs = free_abelian(["a"])
    T2 = canonicalize(["a"], [[2]])
    f = AbelianHom.from_images(Zs, T2, [[1]])
    g = AbelianHom.from_images(Zs, T2, [[0]])
    assert hom_equalizer(f, g) == [[2]]


def test_mixed_kernel_examples():
    Z = free_abelian(["t"])
    assert mixed_kernel([[1], [1]], 2, Z) in ([[1, -1]], [[-1, 1]])
    Z3 = canonicalize(["t"], [[3]])
    assert mixed_kernel([[1]], 1, Z3) == [[3]]
    assert mixed_kernel([[2], [3]], 2, Z) in ([[3, -2]], [[-3, 2]])


def test_invalid_hom_rejected():
    Z = free_abelian(["a"])
    T2 = canonicalize(["a"], [[2]])
    with pytest.raises(ValueError):
        AbelianHom.from_images(T2, Z, [[1]])


def _random_hom(rng):
    src = [rng.choice([2, 3, 4, 5, 6]) for _ in range(rng.randint(1, 3))]
    while _prod(src) > 200:
        src.pop()
    tgt = [rng.choice([2, 3, 4, 6, 8]) for _ in range(rng.randint(1, 3))]
    while _prod(tgt) > 200:
        tgt.pop()
    images = []
    for _ in src:
        images.append([rng.randrange(m) for m in tgt])
    return src, tgt, images


def _prod(xs):
    out = 1
    for x in xs:
        out *= x
    return out


def _valid(src, tgt, images):
    return all(all((m * v) % t == 0 for v, t in zip(img, tgt)) for m, img in zip(src, images))


def enumerated_kernel(src, tgt, images):
    out = set()
    for x in abelian_elements(src):
        val = [sum(xi * img[k] for xi, img in zip(x, images)) % t for k, t in enumerate(tgt)]
        if not any(val):
            out.add(x)
    return out


def to_source_tuple(S, canon_vec, src):
    return tuple(v % m for v, m in zip(S.lift(canon_vec), src))


def test_kernel_against_enumeration():
    rng = random.Random(17)
    done = 0
    while done < 40:
        src, tgt, images = _random_hom(rng)
        if not _valid(src, tgt, images):
            continue
        S, T = cyclic_product(src), cyclic_product(tgt)
        phi = AbelianHom.from_images(S, T, images)
        gens = [to_source_tuple(S, v, src) for v in hom_kernel(phi)]
        assert abelian_closure(gens, src) == enumerated_kernel(src, tgt, images)
        done += 1
