"""Exact integer matrix algebra.

Matrices are plain lists of rows of Python ints.  Because a matrix with no
rows cannot carry its column count, every function that may receive one takes
an explicit ``ncols`` argument.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import List, Optional, Sequence

Matrix = List[List[int]]


def identity(n: int) -> Matrix:
    return [[int(i == j) for j in range(n)] for i in range(n)]


def zeros(m: int, n: int) -> Matrix:
    return [[0] * n for _ in range(m)]


def shape(A: Sequence[Sequence[int]], ncols: Optional[int] = None) -> tuple[int, int]:
    m = len(A)
    if ncols is None:
        if m == 0:
            raise ValueError("ncols is required for a matrix with no rows")
        ncols = len(A[0])
    for row in A:
        if len(row) != ncols:
            raise ValueError("ragged matrix")
    return m, ncols


def matmul(A: Sequence[Sequence[int]], B: Sequence[Sequence[int]], ncols: Optional[int] = None) -> Matrix:
    """Product A·B. ``ncols`` is the column count of B when B has no rows."""
    if B:
        n = len(B[0])
    elif ncols is not None:
        n = ncols
    else:
        raise ValueError("ncols is required when B has no rows")
    out = []
    for row in A:
        if len(row) != len(B):
            raise ValueError("dimension mismatch in matmul")
        acc = [0] * n
        for a, brow in zip(row, B):
            if a:
                for j, b in enumerate(brow):
                    if b:
                        acc[j] += a * b
        out.append(acc)
    return out


def matvec(A: Sequence[Sequence[int]], x: Sequence[int]) -> List[int]:
    return [sum(a * b for a, b in zip(row, x)) for row in A]


def transpose(A: Sequence[Sequence[int]], ncols: Optional[int] = None) -> Matrix:
    m, n = shape(A, ncols)
    return [[A[i][j] for i in range(m)] for j in range(n)]


def determinant(A: Sequence[Sequence[int]]) -> int:
    """Fraction-free (Bareiss) determinant of a square integer matrix."""
    n = len(A)
    if n == 0:
        return 1
    M = [list(row) for row in A]
    sign = 1
    prev = 1
    for k in range(n - 1):
        if M[k][k] == 0:
            for i in range(k + 1, n):
                if M[i][k]:
                    M[k], M[i] = M[i], M[k]
                    sign = -sign
                    break
            else:
                return 0
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                M[i][j] = (M[i][j] * M[k][k] - M[i][k] * M[k][j]) // prev
        prev = M[k][k]
    return sign * M[n - 1][n - 1]


@dataclass(frozen=True)
class SmithDecomposition:
    """``U·A·V = D`` with unimodular U, V and ``D`` diagonal.

    The first ``rank`` diagonal entries of D are positive and each divides
    the next; everything else in D is zero.
    """

    U: Matrix
    D: Matrix
    V: Matrix
    rank: int

    @property
    def invariants(self) -> List[int]:
        return [self.D[i][i] for i in range(self.rank)]


def _min_abs_position(D: Matrix, t: int, m: int, n: int):
    best = None
    pos = None
    for i in range(t, m):
        row = D[i]
        for j in range(t, n):
            v = row[j]
            if v and (best is None or abs(v) < best):
                best = abs(v)
                pos = (i, j)
    return pos


def _sym_quot(a: int, b: int) -> int:
    """Quotient q with a - q*b in (-|b|/2, |b|/2]."""
    q, r = divmod(a, b)
    # r shares the sign of b, so a - (q+1)*b = r - b is the smaller remainder
    if 2 * abs(r) > abs(b):
        q += 1
    return q


def smith_normal_form(A: Sequence[Sequence[int]], ncols: Optional[int] = None) -> SmithDecomposition:
    m, n = shape(A, ncols)
    D = [list(map(int, row)) for row in A]
    U = identity(m)
    V = identity(n)

    def swap_rows(i, k):
        D[i], D[k] = D[k], D[i]
        U[i], U[k] = U[k], U[i]

    def swap_cols(j, k):
        for M in (D, V):
            for row in M:
                row[j], row[k] = row[k], row[j]

    def add_row(dst, src, q):  # row_dst -= q * row_src
        for M in (D, U):
            rd, rs = M[dst], M[src]
            for j, v in enumerate(rs):
                if v:
                    rd[j] -= q * v

    def add_col(dst, src, q):  # col_dst -= q * col_src
        for M in (D, V):
            for row in M:
                v = row[src]
                if v:
                    row[dst] -= q * v

    t = 0
    while t < min(m, n):
        pos = _min_abs_position(D, t, m, n)
        if pos is None:
            break
        i, j = pos
        if i != t:
            swap_rows(i, t)
        if j != t:
            swap_cols(j, t)
        while True:
            p = D[t][t]
            for i in range(t + 1, m):
                if D[i][t]:
                    add_row(i, t, _sym_quot(D[i][t], p))
            for j in range(t + 1, n):
                if D[t][j]:
                    add_col(j, t, _sym_quot(D[t][j], p))
            # smallest leftover in the pivot row/column becomes the new pivot
            best, where = abs(p), None
            for i in range(t + 1, m):
                if D[i][t] and abs(D[i][t]) < best:
                    best, where = abs(D[i][t]), ("r", i)
            for j in range(t + 1, n):
                if D[t][j] and abs(D[t][j]) < best:
                    best, where = abs(D[t][j]), ("c", j)
            if where is not None:
                if where[0] == "r":
                    swap_rows(where[1], t)
                else:
                    swap_cols(where[1], t)
                continue
            if any(D[i][t] for i in range(t + 1, m)) or any(D[t][j] for j in range(t + 1, n)):
                continue
            bad = None
            for i in range(t + 1, m):
                for j in range(t + 1, n):
                    if D[i][j] % p:
                        bad = i
                        break
                if bad is not None:
                    break
            if bad is None:
                break
            add_row(t, bad, -1)
        if D[t][t] < 0:
            D[t] = [-v for v in D[t]]
            U[t] = [-v for v in U[t]]
        t += 1
    return SmithDecomposition(U=U, D=D, V=V, rank=t)


def hermite_normal_form(A: Sequence[Sequence[int]], ncols: Optional[int] = None) -> Matrix:
    """Row-style Hermite normal form of the row lattice of ``A``.

    Returns the nonzero rows only: echelon, positive pivots, entries above
    each pivot reduced into ``[0, pivot)``.
    """
    m, n = shape(A, ncols)
    rows = [list(map(int, r)) for r in A if any(r)]
    out: Matrix = []
    pivots: List[int] = []
    for c in range(n):
        active = [r for r in rows if r[c]]
        rest = [r for r in rows if not r[c]]
        if not active:
            continue
        while len(active) > 1:
            active.sort(key=lambda r: abs(r[c]))
            piv = active[0]
            nxt = [piv]
            for r in active[1:]:
                q = r[c] // piv[c]
                r = [a - q * b for a, b in zip(r, piv)]
                if r[c]:
                    nxt.append(r)
                elif any(r):
                    rest.append(r)
            active = nxt
        piv = active[0]
        if piv[c] < 0:
            piv = [-v for v in piv]
        for k, prow in enumerate(out):
            q = prow[c] // piv[c]
            if q:
                out[k] = [a - q * b for a, b in zip(prow, piv)]
        out.append(piv)
        pivots.append(c)
        rows = rest
    return out


def pivot_columns(H: Sequence[Sequence[int]]) -> List[int]:
    return [next(j for j, v in enumerate(r) if v) for r in H]


def reduce_mod_lattice(x: Sequence[int], H: Sequence[Sequence[int]]) -> List[int]:
    """Reduce ``x`` modulo the lattice with HNF basis ``H`` (pivot coords into [0, p))."""
    x = list(x)
    for row in H:
        c = next(j for j, v in enumerate(row) if v)
        q = x[c] // row[c]
        if q:
            x = [a - q * b for a, b in zip(x, row)]
    return x


def kernel_basis(A: Sequence[Sequence[int]], ncols: Optional[int] = None) -> Matrix:
    """Basis of ``{x : A·x = 0}``, in Hermite normal form."""
    m, n = shape(A, ncols)
    snf = smith_normal_form(A, n)
    cols = [[snf.V[i][j] for i in range(n)] for j in range(snf.rank, n)]
    return hermite_normal_form(cols, n)


@dataclass(frozen=True)
class MixedSolution:
    particular: List[int]
    kernel: Matrix


def solve_mixed(
    A: Sequence[Sequence[int]],
    moduli: Sequence[int],
    b: Sequence[int],
    ncols: Optional[int] = None,
) -> Optional[MixedSolution]:
    """Solve ``A·x ≡ b`` where row ``i`` is taken modulo ``moduli[i]``.

    A modulus of 0 means exact equality over the integers.  Returns None when
    the system has no integer solution; otherwise a particular solution,
    reduced modulo the homogeneous lattice, and an HNF basis of that lattice.
    """
    m, n = shape(A, ncols)
    if len(moduli) != m or len(b) != m:
        raise ValueError(f"dimension mismatch: {m} rows, {len(moduli)} moduli, {len(b)} rhs entries")
    if any(q < 0 for q in moduli):
        raise ValueError("moduli must be non-negative")
    slack = [i for i, q in enumerate(moduli) if q > 0]
    M = []
    for i, row in enumerate(A):
        ext = list(row) + [0] * len(slack)
        if moduli[i] > 0:
            ext[n + slack.index(i)] = -moduli[i]
        M.append(ext)
    width = n + len(slack)
    snf = smith_normal_form(M, width)
    c = matvec(snf.U, b) if m else []
    y = [0] * width
    for i in range(m):
        if i < snf.rank:
            d = snf.D[i][i]
            if c[i] % d:
                return None
            y[i] = c[i] // d
        elif c[i]:
            return None
    z = matvec(snf.V, y) if width else []
    gens = [[snf.V[i][j] for i in range(n)] for j in range(snf.rank, width)]
    kernel = hermite_normal_form(gens, n)
    x = reduce_mod_lattice(z[:n], kernel)
    return MixedSolution(particular=x, kernel=kernel)


def parse_matrix(text: str) -> Matrix:
    """Read the ``rows cols`` header followed by row-major integers."""
    from .textio import ParseError

    tokens = []
    for lineno, line in enumerate(text.splitlines(), 1):
        for col, tok in _split_with_cols(line):
            tokens.append((tok, lineno, col))
    if len(tokens) < 2:
        raise ParseError("matrix header `rows cols` missing", 1, 1)
    try:
        vals = [int(t) for t, _, _ in tokens]
    except ValueError:
        for t, ln, col in tokens:
            try:
                int(t)
            except ValueError:
                raise ParseError(f"not an integer: {t!r}", ln, col) from None
        raise
    m, n = vals[0], vals[1]
    if m < 0 or n < 0:
        raise ParseError("negative matrix dimension", tokens[0][1], tokens[0][2])
    body = vals[2:]
    if len(body) != m * n:
        ln, col = tokens[-1][1], tokens[-1][2]
        raise ParseError(f"expected {m * n} entries, found {len(body)}", ln, col)
    return [body[i * n:(i + 1) * n] for i in range(m)]


def _split_with_cols(line: str):
    i = 0
    while i < len(line):
        if line[i].isspace():
            i += 1
            continue
        j = i
        while j < len(line) and not line[j].isspace():
            j += 1
        yield i + 1, line[i:j]
        i = j


def format_matrix(A: Sequence[Sequence[int]], ncols: Optional[int] = None) -> str:
    m, n = shape(A, ncols)
    lines = [f"{m} {n}"]
    lines += [" ".join(str(v) for v in row) for row in A]
    return "\n".join(lines)
