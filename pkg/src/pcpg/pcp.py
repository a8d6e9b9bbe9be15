"""Post correspondence problems in groups.

An instance is a list of pairs ``(g_i, h_i)`` of target-group words; a word
``w(x_1..x_n)`` solves it when ``w(g) = w(h)``.  The generalized form adds
constants and asks for ``a1 w(g) b1 = a2 w(h) b2``.

For PCP, a solution counts only when the common value ``w(g)`` is not the
identity.  This is the criterion that the equalizer-based decision procedure
for nilpotent groups actually decides; the alternative reading ("``w`` is not
a law of the group") disagrees with it, e.g. when every ``g_i`` and ``h_i`` is
trivial.
"""

from __future__ import annotations

import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from typing import Callable, Iterable, List, Optional, Sequence, Tuple, Union

from .equalizer import equalizer_free_source
from .freewords import IDENTITY, Alphabet, Word, substitute
from .nilpotent import PcPresentation


@dataclass(frozen=True)
class PcpInstance:
    alphabet: Alphabet
    pairs: Tuple[Tuple[Word, Word], ...]

    def __post_init__(self):
        object.__setattr__(self, "pairs", tuple((g, h) for g, h in self.pairs))
        if not self.pairs:
            raise ValueError("instance needs at least one pair")
        n = len(self.alphabet)
        for g, h in self.pairs:
            if g.max_index() >= n or h.max_index() >= n:
                raise ValueError("pair word uses a letter outside the alphabet")

    @property
    def n(self) -> int:
        return len(self.pairs)

    def g_side(self) -> List[Word]:
        return [g for g, _ in self.pairs]

    def h_side(self) -> List[Word]:
        return [h for _, h in self.pairs]


@dataclass(frozen=True)
class GpcpInstance(PcpInstance):
    a1: Word = IDENTITY
    b1: Word = IDENTITY
    a2: Word = IDENTITY
    b2: Word = IDENTITY

    def __post_init__(self):
        super().__post_init__()
        n = len(self.alphabet)
        for w in self.constants:
            if w.max_index() >= n:
                raise ValueError("constant uses a letter outside the alphabet")

    @property
    def constants(self) -> Tuple[Word, Word, Word, Word]:
        return (self.a1, self.b1, self.a2, self.b2)

    @classmethod
    def from_pcp(cls, inst: PcpInstance) -> "GpcpInstance":
        return cls(inst.alphabet, inst.pairs)


@dataclass(frozen=True)
class SolutionWitness:
    """``w`` over ``x1 .. xn`` and the value of either side in the target."""

    w: Word
    common_value: Word


@dataclass(frozen=True)
class NoneWithinBound:
    """No solution of length ``<= bound``; ``completed`` is False when a timeout cut the search short."""

    bound: int
    completed: bool = True

    def __bool__(self):
        return False


SearchResult = Union[SolutionWitness, NoneWithinBound]


# ---------------------------------------------------------------------------
# word-problem oracles


class WordProblemOracle:
    """Group arithmetic used by the searches.

    ``key`` must be injective on group elements for state deduplication; an
    oracle that cannot provide one sets ``dedup = False``.
    """

    dedup = True

    def element(self, w: Word):
        raise NotImplementedError

    def mul(self, x, y):
        raise NotImplementedError

    def inv(self, x):
        raise NotImplementedError

    def is_one(self, x) -> bool:
        raise NotImplementedError

    def key(self, x):
        raise NotImplementedError

    def is_trivial(self, w: Word) -> bool:
        return self.is_one(self.element(w))


class FreeGroupOracle(WordProblemOracle):
    """Free group: an element is its reduced word."""

    def element(self, w: Word) -> Word:
        return w

    def mul(self, x: Word, y: Word) -> Word:
        return x * y

    def inv(self, x: Word) -> Word:
        return ~x

    def is_one(self, x: Word) -> bool:
        return not x.letters

    def key(self, x: Word):
        return x.letters


class NilpotentOracle(WordProblemOracle):
    """A pc-presented group; elements are normal-form exponent vectors."""

    def __init__(self, P: PcPresentation):
        self.P = P

    def element(self, w: Word):
        return tuple(self.P._eval(w))

    def mul(self, x, y):
        return tuple(self.P._mul(list(x), list(y)))

    def inv(self, x):
        return tuple(self.P._inv(list(x)))

    def is_one(self, x) -> bool:
        return not any(x)

    def key(self, x):
        return x


class FunctionOracle(WordProblemOracle):
    """Wraps a bare triviality test; the search then enumerates words without deduplication."""

    dedup = False

    def __init__(self, is_trivial: Callable[[Word], bool]):
        self._test = is_trivial

    def element(self, w: Word) -> Word:
        return w

    def mul(self, x: Word, y: Word) -> Word:
        return x * y

    def inv(self, x: Word) -> Word:
        return ~x

    def is_one(self, x: Word) -> bool:
        return bool(self._test(x))

    def key(self, x):
        raise TypeError("FunctionOracle has no element keys")


# ---------------------------------------------------------------------------
# verification


def _value(inst: GpcpInstance, w: Word) -> Tuple[Word, Word]:
    if w.max_index() >= inst.n:
        raise ValueError(f"word uses x{w.max_index() + 1} but the instance has {inst.n} pairs")
    left = inst.a1 * substitute(w, inst.g_side()) * inst.b1
    right = inst.a2 * substitute(w, inst.h_side()) * inst.b2
    return left, right


def verify_solution(inst: PcpInstance, w: Word, oracle: WordProblemOracle) -> bool:
    """``a1 w(g) b1 = a2 w(h) b2`` according to the oracle."""
    if not isinstance(inst, GpcpInstance):
        inst = GpcpInstance.from_pcp(inst)
    left, right = _value(inst, w)
    return oracle.is_trivial(left * ~right)


def normalize_gpcp(inst: GpcpInstance) -> GpcpInstance:
    """Equivalent instance with constants ``(a, 1, 1, 1)`` and the same solutions.

    With ``b = b1 b2^-1`` and ``a = a2^-1 a1 b`` the equation becomes
    ``a w(b^-1 g b) = w(h)``.
    """
    b = inst.b1 * ~inst.b2
    a = ~inst.a2 * inst.a1 * b
    pairs = tuple((~b * g * b, h) for g, h in inst.pairs)
    return GpcpInstance(inst.alphabet, pairs, a1=a)


def coset_structure_check(inst: GpcpInstance, w0: Word, w: Word, oracle: WordProblemOracle) -> bool:
    """For two solutions, ``u = w0^-1 w`` solves the homogeneous instance of the normalized form."""
    for word in (w0, w):
        if not verify_solution(inst, word, oracle):
            raise ValueError(f"word {word.letters} does not solve the instance")
    norm = normalize_gpcp(inst)
    u = ~w0 * w
    lhs = substitute(u, norm.g_side())
    rhs = substitute(u, norm.h_side())
    return oracle.is_trivial(lhs * ~rhs)


# ---------------------------------------------------------------------------
# bounded search


def _letters(n: int) -> List[int]:
    return [x for i in range(n) for x in (i + 1, -(i + 1))]


class _Search:
    """Breadth-first enumeration of reduced words in shortlex order.

    Each prefix carries a state from which acceptance and extension are
    computed.  States are deduplicated when the oracle has keys: a prefix whose
    state was already reached by a shortlex-smaller prefix cannot start the
    shortlex-first solution, since swapping the prefixes gives a smaller one.
    """

    def __init__(self, oracle, n, start, step, accept, threads=1, timeout=None):
        self.oracle = oracle
        self.n = n
        self.start = start
        self.step = step
        self.accept = accept
        self.threads = max(1, int(threads))
        self.deadline = None if timeout is None else time.monotonic() + timeout

    def _expand(self, chunk):
        out = []
        step = self.step
        for letters, state in chunk:
            last = letters[-1] if letters else 0
            for x in _letters(self.n):
                if x == -last:
                    continue
                out.append((letters + (x,), step(state, x)))
        return out

    def run(self, M: int):
        oracle = self.oracle
        frontier = [((), self.start)]
        seen = {oracle.key(self.start)} if oracle.dedup else None
        if self.accept(self.start):
            return (), self.start
        pool = ThreadPoolExecutor(self.threads) if self.threads > 1 else None
        try:
            for length in range(1, M + 1):
                if self.deadline is not None and time.monotonic() > self.deadline:
                    return NoneWithinBound(length - 1, completed=False)
                if pool is None:
                    children = self._expand(frontier)
                else:
                    size = -(-len(frontier) // self.threads)
                    chunks = [frontier[i:i + size] for i in range(0, len(frontier), size)]
                    children = [c for part in pool.map(self._expand, chunks) for c in part]
                nxt = []
                for letters, state in children:
                    if seen is not None:
                        k = oracle.key(state)
                        if k in seen:
                            continue
                        seen.add(k)
                    if self.accept(state):
                        return letters, state
                    nxt.append((letters, state))
                frontier = nxt
                if not frontier:
                    break
        finally:
            if pool is not None:
                pool.shutdown()
        return NoneWithinBound(M)


def _pair_elements(oracle, words):
    els = [oracle.element(w) for w in words]
    return els, [oracle.inv(e) for e in els]


def bounded_gpcp_search(
    inst: PcpInstance,
    oracle: WordProblemOracle,
    M: int,
    threads: int = 1,
    timeout: Optional[float] = None,
) -> SearchResult:
    """Shortlex-first ``w`` with ``|w| <= M`` and ``a1 w(g) b1 = a2 w(h) b2``."""
    if M < 0:
        raise ValueError("bound must be non-negative")
    if not isinstance(inst, GpcpInstance):
        inst = GpcpInstance.from_pcp(inst)
    g, ginv = _pair_elements(oracle, inst.g_side())
    h, hinv = _pair_elements(oracle, inst.h_side())
    mul = oracle.mul
    # state X = w(h)^-1 a2^-1 a1 w(g); solved when X = b2 b1^-1
    start = mul(oracle.inv(oracle.element(inst.a2)), oracle.element(inst.a1))
    goal_inv = oracle.inv(oracle.element(inst.b2 * ~inst.b1))

    def step(X, x):
        i = abs(x) - 1
        if x > 0:
            return mul(mul(hinv[i], X), g[i])
        return mul(mul(h[i], X), ginv[i])

    def accept(X):
        return oracle.is_one(mul(X, goal_inv))

    found = _Search(oracle, inst.n, start, step, accept, threads, timeout).run(M)
    if isinstance(found, NoneWithinBound):
        return found
    w = Word(found[0])
    return SolutionWitness(w, _value(inst, w)[0])


def bounded_pcp_search(
    inst: PcpInstance,
    oracle: WordProblemOracle,
    M: int,
    threads: int = 1,
    timeout: Optional[float] = None,
) -> SearchResult:
    """Shortlex-first ``w`` with ``|w| <= M``, ``w(g) = w(h)`` and that value not the identity."""
    if M < 0:
        raise ValueError("bound must be non-negative")
    g, ginv = _pair_elements(oracle, inst.g_side())
    h, hinv = _pair_elements(oracle, inst.h_side())
    mul, one = oracle.mul, oracle.element(IDENTITY)

    def step(state, x):
        pg, ph = state
        i = abs(x) - 1
        if x > 0:
            return (mul(pg, g[i]), mul(ph, h[i]))
        return (mul(pg, ginv[i]), mul(ph, hinv[i]))

    def accept(state):
        pg, ph = state
        return not oracle.is_one(pg) and oracle.is_one(mul(oracle.inv(ph), pg))

    search = _Search(_PairOracle(oracle), inst.n, (one, one), step, accept, threads, timeout)
    found = search.run(M)
    if isinstance(found, NoneWithinBound):
        return found
    w = Word(found[0])
    return SolutionWitness(w, substitute(w, inst.g_side()))


class _PairOracle:
    def __init__(self, base: WordProblemOracle):
        self.dedup = base.dedup
        self._base = base

    def key(self, state):
        return (self._base.key(state[0]), self._base.key(state[1]))


# ---------------------------------------------------------------------------
# decision for nilpotent targets


@dataclass(frozen=True)
class PcpDecision:
    """``answer`` is True for YES; ``generators`` is the equalizer the decision came from."""

    answer: bool
    witness: Optional[SolutionWitness]
    generators: Tuple[Word, ...] = field(default_factory=tuple)

    def __bool__(self):
        return self.answer


def pcp_decide_nilpotent(G: PcPresentation, inst: PcpInstance) -> PcpDecision:
    """YES iff some equalizer generator of ``x_i -> g_i`` and ``x_i -> h_i`` has a nontrivial image.

    The equalizer is computed in the free nilpotent group of the target's
    class; a nonvanishing solution exists iff one of its generators maps to a
    non-identity element, because the generators' images generate the image
    of the whole equalizer.
    """
    if G.source is None or G.alphabet != inst.alphabet:
        raise ValueError("instance alphabet differs from the group's generators")
    c = max(G.nilpotency_class, 1)
    gens = inst.g_side()
    res = equalizer_free_source(inst.n, c, G, gens, inst.h_side())
    for w in res.generators:
        value = substitute(w, gens)
        if not G.is_identity(value):
            return PcpDecision(True, SolutionWitness(w, value), res.generators)
    return PcpDecision(False, None, res.generators)
