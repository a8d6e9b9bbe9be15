import itertools
import random
from math import gcd

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from pcpg.intlinalg import (
    determinant,
    hermite_normal_form,
    identity,
    kernel_basis,
    matmul,
    matvec,
    parse_matrix,
    smith_normal_form,
    solve_mixed,
)
from pcpg.textio import ParseError


def minors_gcds(A, n):
    """Determinant divisors: gcd of all k x k minors, via sympy."""
    import sympy

    m = len(A)
    out = []
    for k in range(1, min(m, n) + 1):
        g = 0
        for rows in itertools.combinations(range(m), k):
            for cols in itertools.combinations(range(n), k):
                g = gcd(g, int(sympy.Matrix([[A[r][c] for c in cols] for r in rows]).det()))
        out.append(g)
    return out


def check_snf(A, n):
    s = smith_normal_form(A, n)
    m = len(A)
    assert matmul(matmul(s.U, A, n), s.V, n) == s.D
    assert abs(determinant(s.U)) == 1 and abs(determinant(s.V)) == 1
    inv = s.invariants
    assert all(d > 0 for d in inv)
    assert all(inv[i + 1] % inv[i] == 0 for i in range(len(inv) - 1))
    for i in range(m):
        for j in range(n):
            if i != j or i >= s.rank:
                assert s.D[i][j] == 0
    return s


matrices = st.integers(0, 5).flatmap(
    lambda m: st.integers(0, 5).flatmap(
        lambda n: st.tuples(
            st.just(n),
            st.lists(st.lists(st.integers(-10, 10), min_size=n, max_size=n), min_size=m, max_size=m),
        )
    )
)


@settings(max_examples=150, deadline=None)
@given(matrices)
def test_snf_properties(nA):
    n, A = nA
    check_snf(A, n)


def test_snf_examples():
    s = smith_normal_form([[1, 0], [0, 1]])
    assert s.U == identity(2) and s.V == identity(2) and s.D == identity(2) and s.rank == 2
    assert smith_normal_form([[2, 4], [6, 8]]).invariants == [2, 4]
    z = smith_normal_form([[0, 0, 0], [0, 0, 0]])
    assert z.rank == 0 and z.D == [[0, 0, 0], [0, 0, 0]]


def test_snf_matches_determinant_divisors():
    rng = random.Random(7)
    for _ in range(60):
        m, n = rng.randint(1, 4), rng.randint(1, 4)
        A = [[rng.randint(-6, 6) for _ in range(n)] for _ in range(m)]
        inv = smith_normal_form(A, n).invariants
        dd = minors_gcds(A, n)
        prods = []
        acc = 1
        for d in inv:
            acc *= d
            prods.append(acc)
        assert prods == [d for d in dd if d][: len(prods)]
        assert len(inv) == sum(1 for d in dd if d)


def test_hnf_shape_and_lattice():
    rng = random.Random(3)
    for _ in range(100):
        m, n = rng.randint(1, 5), rng.randint(1, 5)
        A = [[rng.randint(-8, 8) for _ in range(n)] for _ in range(m)]
        H = hermite_normal_form(A, n)
        piv = [next(j for j, v in enumerate(r) if v) for r in H]
        assert piv == sorted(set(piv))
        for r, p in enumerate(piv):
            assert H[r][p] > 0
            for above in range(r):
                assert 0 <= H[above][p] < H[r][p]
        # same row lattice: each side's rows are integral combinations of the other's
        assert hermite_normal_form(H + A, n) == H
        assert len(H) == smith_normal_form(A, n).rank


def test_kernel_examples():
    assert kernel_basis([[2, 3]]) in ([[3, -2]], [[-3, 2]])
    assert kernel_basis([[1, 0], [0, 1]]) == []
    assert kernel_basis([[0, 0]]) == [[1, 0], [0, 1]]


def test_kernel_brute_force():
    rng = random.Random(11)
    for _ in range(40):
        m, n = rng.randint(1, 3), rng.randint(1, 3)
        A = [[rng.randint(-4, 4) for _ in range(n)] for _ in range(m)]
        K = kernel_basis(A, n)
        for v in K:
            assert matvec(A, v) == [0] * m
        assert len(K) == n - smith_normal_form(A, n).rank
        for x in itertools.product(range(-3, 4), repeat=n):
            if matvec(A, x) == [0] * m:
                # x lies in the lattice spanned by K
                assert hermite_normal_form(K + [list(x)], n) == K


def test_solve_mixed_examples():
    s = solve_mixed([[2]], [4], [0])
    assert s.particular == [0] and s.kernel == [[2]]
    s = solve_mixed([[1]], [0], [5])
    assert s.particular == [5] and s.kernel == []
    assert solve_mixed([[2]], [0], [1]) is None
    with pytest.raises(ValueError):
        solve_mixed([[1, 2]], [0, 0], [1], 2)


def test_solve_mixed_brute_force():
    rng = random.Random(5)
    for _ in range(80):
        m, n = rng.randint(1, 3), rng.randint(1, 3)
        A = [[rng.randint(-5, 5) for _ in range(n)] for _ in range(m)]
        mods = [rng.choice([0, 0, 2, 3, 4, 6]) for _ in range(m)]
        b = [rng.randint(-5, 5) for _ in range(m)]
        sol = solve_mixed(A, mods, b, n)

        def ok(x):
            return all((v - bi) % q == 0 if q else v == bi for v, bi, q in zip(matvec(A, x), b, mods))

        box = [x for x in itertools.product(range(-6, 7), repeat=n) if ok(x)]
        if sol is None:
            assert not box
            continue
        assert ok(sol.particular)
        for v in sol.kernel:
            assert ok([p + k for p, k in zip(sol.particular, v)])
        for x in box:
            d = [a - p for a, p in zip(x, sol.particular)]
            assert hermite_normal_form(sol.kernel + [d], n) == sol.kernel


def test_parse_matrix():
    assert parse_matrix("2 2\n2 4\n6 8\n") == [[2, 4], [6, 8]]
    assert parse_matrix("0 3") == []
    with pytest.raises(ParseError) as e:
        parse_matrix("2 2\n1 x\n3 4")
    assert e.value.line == 2 and e.value.col == 3
    with pytest.raises(ParseError):
        parse_matrix("2 2\n1 2 3")
