import random

import pytest

from pcpg.freewords import Alphabet, Word, substitute, words_of_length
from pcpg.nilpotent import NilPresentation, nilpotent_quotient
from pcpg.pcp import (
    FreeGroupOracle,
    FunctionOracle,
    GpcpInstance,
    NilpotentOracle,
    NoneWithinBound,
    PcpInstance,
    SolutionWitness,
    bounded_gpcp_search,
    bounded_pcp_search,
    coset_structure_check,
    normalize_gpcp,
    pcp_decide_nilpotent,
    verify_solution,
)
from oracles import random_word

AB = Alphabet(["a", "b"])
A1 = Alphabet(["a"])
X = Alphabet.standard
FREE = FreeGroupOracle()
p = AB.parse


def nq(alphabet, rels, c):
    return nilpotent_quotient(NilPresentation(alphabet, tuple(alphabet.parse(r) for r in rels), c))


def test_decide_examples():
    Z = nq(A1, [], 1)
    d = pcp_decide_nilpotent(Z, PcpInstance(A1, [(A1.parse("a^5"), A1.parse("a^5"))]))
    assert d.answer and d.witness.w == X(1).parse("x1") and d.witness.common_value == A1.parse("a^5")
    assert not pcp_decide_nilpotent(Z, PcpInstance(A1, [(A1.parse("a^2"), A1.parse("a^3"))]))
    F = nq(AB, [], 2)
    d = pcp_decide_nilpotent(F, PcpInstance(AB, [(p("a"), p("a")), (p("b"), p("b [a,b]"))]))
    assert d.answer and d.witness.w == X(2).parse("x1") and d.witness.common_value == p("a")


def test_decide_trivial_images_is_no():
    # every word is a solution, but no solution has a nonvanishing value
    F = nq(AB, [], 2)
    assert not pcp_decide_nilpotent(F, PcpInstance(AB, [(Word(), Word())]))


def test_normalize_examples():
    inst = GpcpInstance(AB, [(p("a b"), p("b"))], a1=p("a"))
    assert normalize_gpcp(inst) == inst
    inst = GpcpInstance(AB, [(p("a b"), p("b"))], a2=p("a"))
    out = normalize_gpcp(inst)
    assert out.a1 == p("a^-1") and out.pairs == inst.pairs
    inst = GpcpInstance(AB, [(p("a^2"), p("b a"))], a1=p("a"), b1=p("b"))
    out = normalize_gpcp(inst)
    assert out.constants == (p("a b"), Word(), Word(), Word())
    assert out.pairs == ((p("b^-1 a^2 b"), p("b a")),)
    for k in range(5):
        for w in words_of_length(1, k):
            assert verify_solution(inst, w, FREE) == verify_solution(out, w, FREE)


def test_normalize_preserves_solutions_randomly():
    rng = random.Random(8)
    for _ in range(40):
        pairs = [(random_word(rng, 2, 3), random_word(rng, 2, 3)) for _ in range(2)]
        consts = [random_word(rng, 2, 2) for _ in range(4)]
        inst = GpcpInstance(AB, pairs, *consts)
        out = normalize_gpcp(inst)
        for _ in range(10):
            w = random_word(rng, 2, 5)
            assert verify_solution(inst, w, FREE) == verify_solution(out, w, FREE)


def test_gpcp_search_examples():
    inst = GpcpInstance(AB, [(p("b"), p("a b"))], a1=p("a"))
    found = bounded_gpcp_search(inst, FREE, 3)
    assert found.w == X(1).parse("x1") and found.common_value == p("a b")
    assert verify_solution(inst, found.w, FREE)
    hopeless = GpcpInstance(AB, [(Word(), Word())], a1=p("a"))
    for M in range(5):
        assert bounded_gpcp_search(hopeless, FREE, M) == NoneWithinBound(M)
    same = GpcpInstance(AB, [(p("a b"), p("a b"))])
    assert bounded_gpcp_search(same, FREE, 0).w == Word()


def test_pcp_search_examples():
    found = bounded_pcp_search(PcpInstance(AB, [(p("a"), p("a"))]), FREE, 3)
    assert found == SolutionWitness(X(1).parse("x1"), p("a"))
    assert not bounded_pcp_search(PcpInstance(AB, [(p("a"), p("b"))]), FREE, 3)
    assert not bounded_pcp_search(PcpInstance(A1, [(A1.parse("a"), A1.parse("a^-1"))]), FREE, 3)


def test_verify_examples():
    assert not verify_solution(PcpInstance(AB, [(p("a"), p("b"))]), X(1).parse("x1"), FREE)
    assert verify_solution(PcpInstance(AB, [(p("a"), p("b"))]), Word(), FREE)


def shortlex_first(inst, oracle, M, nonvanishing=False):
    """Plain enumeration, no state sharing."""
    if not isinstance(inst, GpcpInstance):
        inst = GpcpInstance.from_pcp(inst)
    for k in range(M + 1):
        for w in words_of_length(inst.n, k):
            if nonvanishing and oracle.is_trivial(substitute(w, inst.g_side())):
                continue
            if verify_solution(inst, w, oracle):
                return w
    return None


def test_search_matches_plain_enumeration():
    rng = random.Random(21)
    G = nq(AB, ["a^3", "b^3"], 2)
    for oracle in (FREE, NilpotentOracle(G)):
        for _ in range(25):
            pairs = [(random_word(rng, 2, 3), random_word(rng, 2, 3)) for _ in range(2)]
            inst = GpcpInstance(AB, pairs, a1=random_word(rng, 2, 2))
            expect = shortlex_first(inst, oracle, 4)
            got = bounded_gpcp_search(inst, oracle, 4)
            assert (got.w if got else None) == expect
            pinst = PcpInstance(AB, pairs)
            expect = shortlex_first(pinst, oracle, 4, nonvanishing=True)
            got = bounded_pcp_search(pinst, oracle, 4)
            assert (got.w if got else None) == expect


def test_function_oracle_agrees():
    rng = random.Random(5)
    fn = FunctionOracle(lambda w: not w.letters)
    for _ in range(15):
        pairs = [(random_word(rng, 2, 2), random_word(rng, 2, 2)) for _ in range(2)]
        inst = GpcpInstance(AB, pairs, a1=random_word(rng, 2, 1))
        a, b = bounded_gpcp_search(inst, fn, 3), bounded_gpcp_search(inst, FREE, 3)
        assert (a.w if a else None) == (b.w if b else None)


def test_monotone_and_thread_independent():
    rng = random.Random(13)
    for _ in range(15):
        pairs = [(random_word(rng, 2, 2), random_word(rng, 2, 2)) for _ in range(2)]
        inst = GpcpInstance(AB, pairs, a1=random_word(rng, 2, 2))
        first = None
        for M in range(6):
            r = bounded_gpcp_search(inst, FREE, M)
            if first is not None:
                assert r == first
            elif r:
                first = r
        for threads in (2, 3, 5):
            assert bounded_gpcp_search(inst, FREE, 5, threads=threads) == bounded_gpcp_search(inst, FREE, 5)


def test_timeout_reports_partial_bound():
    inst = GpcpInstance(AB, [(Word(), Word())] * 3, a1=p("a"))
    r = bounded_gpcp_search(inst, FREE, 50, timeout=0.0)
    assert not r and not r.completed and r.bound == 0


def test_coset_structure():
    inst = GpcpInstance(AB, [(p("b"), p("a b")), (p("a"), p("a"))], a1=p("a"))
    w0 = X(2).parse("x1")
    assert coset_structure_check(inst, w0, w0, FREE)
    sols = [w for k in range(4) for w in words_of_length(2, k) if verify_solution(inst, w, FREE)]
    assert len(sols) >= 2
    for w in sols[1:]:
        assert coset_structure_check(inst, sols[0], w, FREE)
    with pytest.raises(ValueError):
        coset_structure_check(inst, w0, X(2).parse("x2"), FREE)


def test_instance_validation():
    with pytest.raises(ValueError):
        PcpInstance(AB, [])
    with pytest.raises(ValueError):
        GpcpInstance(A1, [(A1.parse("a"), A1.parse("a"))], a1=Word((2,)))
    with pytest.raises(ValueError):
        verify_solution(PcpInstance(AB, [(p("a"), p("a"))]), X(2).parse("x2"), FREE)
