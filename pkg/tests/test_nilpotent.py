import random

import pytest

from pcpg.freewords import Alphabet, Word, iterated_commutator
from pcpg.nilpotent import (
    NilHom,
    NilPresentation,
    commutant_generators,
    free_nilpotent,
    gamma_layer,
    hom_apply,
    hom_validate,
    is_identity,
    nilpotent_quotient,
    normal_form,
    subgroup_sequence,
    truncate,
)
from oracles import FiniteGroup, Magnus, random_word

AB = Alphabet(["a", "b"])
ABC = Alphabet(["a", "b", "c"])


def nq(alphabet, rels, c):
    return nilpotent_quotient(NilPresentation(alphabet, tuple(alphabet.parse(r) for r in rels), c))


@pytest.fixture(scope="module")
def free22():
    return nq(AB, [], 2)


@pytest.fixture(scope="module")
def order27():
    return nq(AB, ["a^3", "b^3"], 2)


def test_quotient_examples(free22, order27):
    Z = nq(Alphabet(["a"]), [], 1)
    assert Z.n == 1 and Z.orders == [0]
    assert free22.n == 3 and free22.orders == [0, 0, 0] and free22.weights == [1, 1, 2]
    assert order27.order() == 27 and order27.orders == [3, 3, 3]


def test_normal_form_examples(free22):
    assert list(normal_form(free22, AB.parse("a a^-1"))) == [0, 0, 0]
    assert list(normal_form(free22, AB.parse("b a"))) == [1, 1, -1]
    assert list(normal_form(free22, AB.parse("[a,b]"))) == [0, 0, 1]


def test_is_identity_examples(free22, order27):
    assert is_identity(free22, AB.parse("[[a,b],a]"))
    assert not is_identity(free22, AB.parse("a"))
    assert is_identity(order27, AB.parse("a^3"))


def test_gamma_layer_examples(free22, order27):
    L = gamma_layer(free22, 2)
    assert L.canon.invariants() == (1, ())
    assert L.coords(normal_form(free22, AB.parse("[a,b]"))) in ([1], [-1])
    Z2 = nq(AB, ["[a,b]"], 1)
    assert gamma_layer(Z2, 1).canon.invariants() == (2, ())
    assert nq(AB, ["[a,b]"], 2).n == 2  # gamma_2 of Z^2 is trivial
    assert gamma_layer(order27, 2).canon.invariants() == (0, (3,))
    with pytest.raises(ValueError):
        gamma_layer(free22, 3)


def test_commutant_generator_examples():
    a, b = AB.gens()
    assert commutant_generators([a], 3) == []
    assert commutant_generators([a, b], 2) == [iterated_commutator([a, b]), iterated_commutator([b, a])]
    got = commutant_generators([a, b], 3)
    expected = []
    for idx in [(0, 1), (1, 0), (0, 1, 0), (0, 1, 1), (1, 0, 0), (1, 0, 1)]:
        expected.append(iterated_commutator([[a, b][i] for i in idx]))
    assert got == expected


def test_hom_validate_examples(free22):
    assert hom_validate(NilHom(free22, free22, AB.gens()))
    w = AB.parse("b a^-1 [a,b] b")
    assert hom_apply(NilHom(free22, free22, AB.gens()), w) == normal_form(free22, w)
    A1 = Alphabet(["a"])
    Z = nq(A1, [], 1)
    bad = NilHom(nq(A1, ["a^2"], 1), Z, [A1.parse("a")])
    assert not hom_validate(bad)
    with pytest.raises(ValueError):
        hom_apply(bad, A1.parse("a"))
    Z2 = nq(AB, ["[a,b]"], 1)
    ab = NilHom(free22, Z2, AB.gens())
    assert hom_validate(ab)
    assert hom_apply(ab, AB.parse("[a,b]")).is_identity()


def test_hom_class_obstruction():
    # free class-1 source cannot map onto a non-abelian target
    Z2 = nq(AB, [], 1)
    H = nq(AB, [], 2)
    assert not hom_validate(NilHom(Z2, H, AB.gens()))
    assert hom_validate(NilHom(Z2, H, [AB.parse("a"), AB.parse("a^2")]))


@pytest.mark.parametrize("n,c", [(2, 2), (2, 3), (3, 2), (2, 4), (3, 3)])
def test_magnus_equivalence(n, c):
    rng = random.Random(100 * n + c)
    F = free_nilpotent(n, c)
    M = Magnus(n, c)
    for _ in range(150):
        u = random_word(rng, n, 8)
        v = random_word(rng, n, 8) if rng.random() < 0.5 else _perturb(rng, u, n, c)
        assert (F.normal_form(u) == F.normal_form(v)) == M.equal(u, v)
        assert M.equal(F.element_word(F.normal_form(u)), u)


def _perturb(rng, u, n, c):
    """A word equal to ``u`` modulo gamma_{c+1}, or a near miss."""
    k = iterated_commutator([random_word(rng, n, 2, 1) for _ in range(rng.choice([c, c + 1]))])
    i = rng.randint(0, len(u))
    return Word(u.letters[:i]) * k * Word(u.letters[i:])


@pytest.mark.parametrize("n,c", [(2, 3), (3, 2)])
def test_normal_form_multiplicative(n, c):
    rng = random.Random(n + c)
    F = free_nilpotent(n, c)
    for _ in range(100):
        u, v = random_word(rng, n, 8), random_word(rng, n, 8)
        assert F.normal_form(u * v) == F.mul(F.normal_form(u), F.normal_form(v))
        assert F.normal_form(~u) == F.inv(F.normal_form(u))


def test_witt_ranks():
    assert [free_nilpotent(2, 5).weights.count(i) for i in range(1, 6)] == [2, 1, 2, 3, 6]
    assert [free_nilpotent(3, 4).weights.count(i) for i in range(1, 5)] == [3, 3, 8, 18]


FINITE = [
    (AB, ["a^3", "b^3"], 2),
    (AB, ["a^2", "b^2"], 2),
    (AB, ["a^2", "b^2"], 3),
    (AB, ["a^4", "b^2"], 2),
    (AB, ["a^9", "b^3"], 2),
    (AB, ["a^3", "b^9", "[a,b]^3"], 2),
    (AB, ["a^2", "b^4", "(a b)^2"], 3),
    (AB, ["a^2 b^-2", "b^4"], 3),
    (ABC, ["a^2", "b^2", "c^2", "[a,c]", "[b,c]"], 2),
    (AB, ["a^6", "b^2", "b a b a"], 2),
]


@pytest.mark.parametrize("alphabet,rels,c", FINITE)
def test_finite_quotients_against_enumeration(alphabet, rels, c):
    P = nq(alphabet, rels, c)
    G = FiniteGroup(alphabet, [alphabet.parse(r) for r in rels], c)
    assert P.order() == G.order() <= 81
    rng = random.Random(len(rels) + c)
    for _ in range(60):
        u = random_word(rng, len(alphabet), 8)
        v = random_word(rng, len(alphabet), 8)
        assert (P.normal_form(u) == P.normal_form(v)) == (G.element(u) == G.element(v))
        assert G.element(P.element_word(P.normal_form(u))) == G.element(u)


@pytest.mark.slow
@pytest.mark.parametrize("rels,c,order", [(["a^3", "b^3"], 3, 243), (["a^4", "b^4", "[a,b]^2"], 3, 128)])
def test_larger_finite_quotients(rels, c, order):
    P = nq(AB, rels, c)
    assert P.order() == order == FiniteGroup(AB, [AB.parse(r) for r in rels], c).order()


def test_truncate_matches_lower_class():
    P = nq(AB, ["a^2", "b^2"], 3)
    T = truncate(P, 2)
    Q = nq(AB, ["a^2", "b^2"], 2)
    assert T.order() == Q.order() == 8
    rng = random.Random(4)
    for _ in range(50):
        u, v = random_word(rng, 2, 6), random_word(rng, 2, 6)
        assert (T.normal_form(u) == T.normal_form(v)) == (Q.normal_form(u) == Q.normal_form(v))


def test_commutant_generators_give_derived_subgroup():
    G = FiniteGroup(AB, [AB.parse("a^2"), AB.parse("b^2")], 3)  # dihedral of order 16
    P = nq(AB, ["a^2", "b^2"], 3)
    rng = random.Random(9)
    for _ in range(10):
        gens = [random_word(rng, 2, 4, 1) for _ in range(rng.randint(1, 3))]
        comms = commutant_generators(gens, P.nilpotency_class)
        sub = G.closure(G.element(w) for w in gens)
        derived = G.closure(x * y * x ** -1 * y ** -1 for x in sub for y in sub)
        got = G.closure(G.element(w) for w in comms)
        assert got == derived


def test_subgroup_sequence_against_closure():
    P = nq(AB, ["a^3", "b^3"], 2)
    G = FiniteGroup(AB, [AB.parse("a^3"), AB.parse("b^3")], 2)
    everything = G.words()
    rng = random.Random(12)
    for _ in range(15):
        gens = [random_word(rng, 2, 4) for _ in range(rng.randint(1, 2))]
        S = subgroup_sequence(P, [P.normal_form(w) for w in gens])
        closure = G.closure(G.element(w) for w in gens)
        assert S.order() == len(closure)
        for perm, w in everything.items():
            assert S.contains(P.normal_form(w)) == (perm in closure)


def test_presentation_validation():
    from pcpg.nilpotent import PcPresentation

    with pytest.raises(ValueError):
        PcPresentation(["x", "y"], [2, 1], [0, 0], {}, {})
    with pytest.raises(ValueError):
        PcPresentation(["x"], [1], [2], {}, {})
    with pytest.raises(ValueError):
        NilPresentation(AB, (), 0)
