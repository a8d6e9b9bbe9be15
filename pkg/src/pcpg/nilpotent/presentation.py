"""Weighted polycyclic presentations and collection.

A presentation has pc generators ``g_0 .. g_{m-1}``, each with a weight (its
layer in the lower central series) and a relative order (0 for infinite).
Relations are stored as normal-form exponent vectors:

* ``powers[j]``  -- ``g_j ** orders[j]``, supported on generators after ``j``;
* ``conj[k, j]`` -- ``g_j^-1 g_k g_j`` for ``k > j``, equal to ``g_k`` times
  generators of weight greater than ``weight[k]``.  Missing pairs commute.

Conjugates by ``g_j^-1`` for infinite ``g_j`` are derived from the stored
relations, so only the forward ones are part of the data.

Multiplication works by moving a generator power leftward across the tail of
a normal form: ``P g_j^a S · g_j^x = P g_j^(a+x) S^(g_j^x)``.  Every recursive
call involves generators strictly after ``j``, so collection terminates.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Dict, Iterator, List, Optional, Sequence, Tuple

from ..abelian import AbelianCanon, canonicalize
from ..freewords import Alphabet, Word

Vec = List[int]


@dataclass(frozen=True)
class PcElement:
    """Normal form: ``g_0^e_0 g_1^e_1 ...`` with finite-order exponents in ``[0, m_i)``."""

    exponents: Tuple[int, ...]

    def __len__(self):
        return len(self.exponents)

    def is_identity(self) -> bool:
        return not any(self.exponents)

    def __iter__(self):
        return iter(self.exponents)

    def __getitem__(self, i):
        return self.exponents[i]


@dataclass(frozen=True)
class NilPresentation:
    """A finite presentation read in the variety of nilpotent groups of class at most ``class_bound``."""

    alphabet: Alphabet
    relators: Tuple[Word, ...]
    class_bound: int

    def __post_init__(self):
        object.__setattr__(self, "relators", tuple(self.relators))
        if self.class_bound < 1:
            raise ValueError("class bound must be at least 1")
        for r in self.relators:
            if r.max_index() >= len(self.alphabet):
                raise ValueError("relator uses a letter outside the alphabet")


class PcPresentation:
    def __init__(
        self,
        names: Sequence[str],
        weights: Sequence[int],
        orders: Sequence[int],
        powers: Dict[int, Sequence[int]],
        conj: Dict[Tuple[int, int], Sequence[int]],
        source: Optional[NilPresentation] = None,
        images: Optional[Sequence[Sequence[int]]] = None,
        gen_words: Optional[Sequence[Word]] = None,
        definitions: Optional[Sequence[tuple]] = None,
        check: bool = True,
    ):
        self.names = list(names)
        self.n = n = len(self.names)
        self.weights = list(weights)
        self.orders = list(orders)
        self.powers = {j: list(v) for j, v in powers.items()}
        self.conj = {}
        for (k, j), v in conj.items():
            v = list(v)
            unit = [0] * n
            unit[k] = 1
            if v != unit:
                self.conj[k, j] = v
        self.source = source
        self.images = [list(v) for v in images] if images is not None else None
        self.gen_words = list(gen_words) if gen_words is not None else None
        self.definitions = list(definitions) if definitions is not None else None
        if check:
            self._check_shape()
        # pairs that do not commute, by the conjugating generator
        self._movers: List[set] = [set() for _ in range(n)]
        for k, j in self.conj:
            self._movers[j].add(k)
        self._conj_inv: Dict[Tuple[int, int], Vec] = {}
        self._inv_ready = False
        self._image_inv: Dict[int, Vec] = {}

    # ------------------------------------------------------------------
    # structure

    def _check_shape(self):
        n = self.n
        if not (len(self.weights) == len(self.orders) == n):
            raise ValueError("weights/orders length mismatch")
        if any(w < 1 for w in self.weights) or any(
            a > b for a, b in zip(self.weights, self.weights[1:])
        ):
            raise ValueError("weights must be positive and non-decreasing")
        if any(m < 0 for m in self.orders):
            raise ValueError("relative orders must be non-negative")
        for j, m in enumerate(self.orders):
            if m and j not in self.powers:
                raise ValueError(f"finite generator {j} lacks a power relation")
        for j, v in self.powers.items():
            if not self.orders[j]:
                raise ValueError(f"power relation for infinite generator {j}")
            if len(v) != n or any(v[: j + 1]):
                raise ValueError(f"power relation of generator {j} must use later generators")
        for (k, j), v in self.conj.items():
            if not k > j:
                raise ValueError("conjugate relations need k > j")
            if len(v) != n or any(v[:k]) or v[k] != 1:
                raise ValueError(f"conjugate relation ({k},{j}) is not g_k times later generators")
            wk = self.weights[k]
            for p in range(k + 1, n):
                if v[p] and self.weights[p] <= wk:
                    raise ValueError(f"conjugate relation ({k},{j}) is not weighted")
        if self.images is not None:
            for v in self.images:
                if len(v) != n:
                    raise ValueError("origin map vectors have wrong length")

    @property
    def nilpotency_class(self) -> int:
        return max(self.weights, default=0)

    def layer_indices(self, i: int) -> List[int]:
        return [p for p, w in enumerate(self.weights) if w == i]

    def order(self) -> Optional[int]:
        """Group order, or None when infinite."""
        out = 1
        for m in self.orders:
            if not m:
                return None
            out *= m
        return out

    @property
    def alphabet(self) -> Alphabet:
        if self.source is None:
            raise ValueError("presentation has no source alphabet")
        return self.source.alphabet

    def identity(self) -> PcElement:
        return PcElement((0,) * self.n)

    def __repr__(self):
        return f"<PcPresentation {self.n} generators, class {self.nilpotency_class}>"

    # ------------------------------------------------------------------
    # collection

    def _zero(self) -> Vec:
        return [0] * self.n

    def _unit(self, k: int, e: int = 1) -> Vec:
        v = [0] * self.n
        v[k] = e
        return v

    def _conj_entry(self, k: int, j: int, s: int) -> Optional[Vec]:
        """``g_k^(g_j^s)`` or None when the two commute."""
        if k not in self._movers[j]:
            return None
        if s > 0:
            return self.conj[k, j]
        self._ensure_inverses()
        return self._conj_inv[k, j]

    def _conj_vec(self, S: Vec, j: int, s: int) -> Vec:
        """``S^(g_j^s)`` for ``S`` supported after ``j``."""
        movers = self._movers[j]
        if not any(S[l] for l in movers):
            return S
        acc = self._zero()
        for l in range(j + 1, self.n):
            e = S[l]
            if not e:
                continue
            c = self._conj_entry(l, j, s) if l in movers else None
            if c is None:
                acc = self._mul_gen(acc, l, e)
            else:
                acc = self._mul(acc, self._pow(c, e))
        return acc

    def _mul_gen(self, e: Vec, j: int, x: int) -> Vec:
        """``e * g_j^x`` as a new vector."""
        if x == 0:
            return list(e)
        m = self.orders[j]
        if m and not 0 <= x < m:
            q, r = divmod(x, m)
            out = self._mul_gen(e, j, r)
            return self._mul(out, self._pow(self.powers[j], q))
        n = self.n
        movers = self._movers[j]
        S = None
        if any(e[l] for l in movers):
            S = [0] * (j + 1) + e[j + 1:]
            step = 1 if x > 0 else -1
            for _ in range(abs(x)):
                S = self._conj_vec(S, j, step)
            out = e[: j + 1] + [0] * (n - j - 1)
        else:
            out = list(e)
            # commuting tail: exponents stay where they are
        a = out[j] + x
        if m and a >= m:
            out[j] = a - m
            if S is None:
                # out still carries its own tail; peel it off to insert the power word
                tail = [0] * (j + 1) + out[j + 1:]
                out = out[: j + 1] + [0] * (n - j - 1)
                out = self._mul(out, self.powers[j])
                out = self._mul(out, tail)
            else:
                out = self._mul(out, self.powers[j])
        else:
            out[j] = a
        if S is not None:
            out = self._mul(out, S)
        return out

    def _mul(self, e: Vec, f: Vec) -> Vec:
        acc = e
        copied = False
        for l, x in enumerate(f):
            if x:
                acc = self._mul_gen(acc, l, x)
                copied = True
        return acc if copied else list(e)

    def _inv(self, e: Vec) -> Vec:
        acc = self._zero()
        for l in range(self.n - 1, -1, -1):
            if e[l]:
                acc = self._mul_gen(acc, l, -e[l])
        return acc

    def _pow(self, e: Vec, q: int) -> Vec:
        if q < 0:
            e, q = self._inv(e), -q
        result = self._zero()
        base = list(e)
        while q:
            if q & 1:
                result = self._mul(result, base)
            q >>= 1
            if q:
                base = self._mul(base, base)
        return result

    def _ensure_inverses(self):
        if self._inv_ready:
            return
        self._inv_ready = True
        for j in range(self.n - 1, -1, -1):
            if self.orders[j]:
                continue
            for k in sorted(self._movers[j]):
                self._conj_inv[k, j] = self._solve_conj_inverse(k, j)

    def _solve_conj_inverse(self, k: int, j: int) -> Vec:
        # X with X^(g_j) = g_k; each round pushes the error one layer deeper
        target = self._unit(k)
        X = self._unit(k)
        for _ in range(self.nilpotency_class + 2):
            Y = self._conj_vec(X, j, 1)
            D = self._mul(self._inv(Y), target)
            if not any(D):
                return X
            X = self._mul(X, D)
        raise RuntimeError(f"conjugate of g_{k} by g_{j}^-1 did not stabilise")

    # public arithmetic on PcElements -------------------------------------

    def mul(self, a: PcElement, b: PcElement) -> PcElement:
        return PcElement(tuple(self._mul(list(a.exponents), list(b.exponents))))

    def inv(self, a: PcElement) -> PcElement:
        return PcElement(tuple(self._inv(list(a.exponents))))

    def pow(self, a: PcElement, k: int) -> PcElement:
        return PcElement(tuple(self._pow(list(a.exponents), k)))

    def comm(self, a: PcElement, b: PcElement) -> PcElement:
        ea, eb = list(a.exponents), list(b.exponents)
        v = self._mul(self._mul(self._inv(ea), self._inv(eb)), self._mul(ea, eb))
        return PcElement(tuple(v))

    def element(self, exponents: Sequence[int]) -> PcElement:
        """Normal form of the (possibly non-normalised) product ``prod g_i^e_i``."""
        acc = self._zero()
        for l, x in enumerate(exponents):
            if x:
                acc = self._mul_gen(acc, l, x)
        return PcElement(tuple(acc))

    def generator(self, k: int) -> PcElement:
        return self.element(self._unit(k))

    # words in the original generators ------------------------------------

    def _image(self, i: int, sign: int) -> Vec:
        if self.images is None:
            raise ValueError("presentation has no origin map")
        if sign > 0:
            return self.images[i]
        if i not in self._image_inv:
            self._image_inv[i] = self._inv(self.images[i])
        return self._image_inv[i]

    def _eval(self, w: Word) -> Vec:
        acc = self._zero()
        nimg = len(self.images) if self.images is not None else 0
        for x in w.letters:
            i = abs(x) - 1
            if i >= nimg:
                raise IndexError(f"unknown generator index {i}")
            acc = self._mul(acc, self._image(i, 1 if x > 0 else -1))
        return acc

    def normal_form(self, w: Word) -> PcElement:
        return PcElement(tuple(self._eval(w)))

    def is_identity(self, w: Word) -> bool:
        return not any(self._eval(w))

    def element_word(self, e: PcElement | Sequence[int]) -> Word:
        """A word in the original generators whose normal form is ``e``."""
        if self.gen_words is None:
            raise ValueError("presentation has no generator words")
        letters: List[int] = []
        for l, x in enumerate(e):
            if x:
                letters.extend((self.gen_words[l] ** x).letters)
        return Word(tuple(letters))

    # derived presentations -------------------------------------------------

    def truncate(self, c: int) -> "PcPresentation":
        """The presentation of ``G / gamma_{c+1}(G)``: drop generators of weight > c."""
        keep = sum(1 for w in self.weights if w <= c)
        cut = lambda v: list(v[:keep])
        return PcPresentation(
            self.names[:keep],
            self.weights[:keep],
            self.orders[:keep],
            {j: cut(v) for j, v in self.powers.items() if j < keep},
            {(k, j): cut(v) for (k, j), v in self.conj.items() if k < keep},
            source=self.source,
            images=[cut(v) for v in self.images] if self.images is not None else None,
            gen_words=self.gen_words[:keep] if self.gen_words is not None else None,
            definitions=self.definitions[:keep] if self.definitions is not None else None,
            check=False,
        )

    def elements(self) -> Iterator[PcElement]:
        """All elements of a finite presentation (normal forms in lexicographic order)."""
        if self.order() is None:
            raise ValueError("group is infinite")
        import itertools

        for e in itertools.product(*(range(m) for m in self.orders)):
            yield PcElement(tuple(e))

    def describe(self) -> str:
        lines = []
        for p, nm in enumerate(self.names):
            o = self.orders[p]
            lines.append(f"g{p} = {nm}  weight {self.weights[p]}  order {'inf' if not o else o}")
        fmt = self.format_vector
        for j in sorted(self.powers):
            lines.append(f"g{j}^{self.orders[j]} = {fmt(self.powers[j])}")
        for (k, j) in sorted(self.conj, key=lambda kj: (kj[1], kj[0])):
            lines.append(f"g{k}^g{j} = {fmt(self.conj[k, j])}")
        return "\n".join(lines)

    def format_vector(self, v: Sequence[int]) -> str:
        parts = []
        for l, x in enumerate(v):
            if x:
                parts.append(f"g{l}" if x == 1 else f"g{l}^{x}")
        return " ".join(parts) if parts else "1"


@dataclass(frozen=True)
class GammaLayer:
    """The abelian layer ``gamma_i / gamma_{i+1}`` spanned by the weight-``i`` pc generators."""

    weight: int
    indices: Tuple[int, ...]
    canon: AbelianCanon

    def coords(self, e: PcElement | Sequence[int]) -> List[int]:
        return self.canon.coords([e[p] for p in self.indices])

    def lift(self, coords: Sequence[int], n: int) -> List[int]:
        v = [0] * n
        for p, x in zip(self.indices, self.canon.lift(coords)):
            v[p] = x
        return v


def gamma_layer(P: PcPresentation, i: int) -> GammaLayer:
    """Canonical form of the ``i``-th lower central layer (equal to ``gamma_i`` when ``i`` is the class)."""
    c = P.nilpotency_class
    if not 1 <= i <= max(c, 1):
        raise ValueError(f"layer {i} out of range for class {c}")
    idx = P.layer_indices(i)
    pos = {p: t for t, p in enumerate(idx)}
    rows = []
    for p in idx:
        m = P.orders[p]
        if m:
            row = [0] * len(idx)
            row[pos[p]] += m
            for q, x in enumerate(P.powers[p]):
                if x and q in pos:
                    row[pos[q]] -= x
            rows.append(row)
    canon = canonicalize([P.names[p] for p in idx], rows)
    return GammaLayer(i, tuple(idx), canon)
