"""Words in free groups.

A letter is stored as a nonzero int: ``i + 1`` for generator ``i`` and
``-(i + 1)`` for its inverse.  Words are always kept freely reduced.

Commutators follow ``[u, v] = u^-1 v^-1 u v`` and nest to the left:
``[u, v, w] = [[u, v], w]``.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from typing import Iterable, Iterator, List, Sequence, Tuple

_NAME = re.compile(r"[A-Za-z_][A-Za-z0-9_]*")


class Alphabet:
    """An ordered list of distinct generator names."""

    __slots__ = ("names", "_index")

    def __init__(self, names: Iterable[str]):
        names = tuple(names)
        for nm in names:
            if not _NAME.fullmatch(nm):
                raise ValueError(f"invalid generator name {nm!r}")
        if len(set(names)) != len(names):
            raise ValueError("duplicate generator names")
        self.names = names
        self._index = {nm: i for i, nm in enumerate(names)}

    @classmethod
    def standard(cls, n: int, prefix: str = "x") -> "Alphabet":
        return cls(f"{prefix}{i + 1}" for i in range(n))

    def __len__(self) -> int:
        return len(self.names)

    def __iter__(self):
        return iter(self.names)

    def __eq__(self, other) -> bool:
        return isinstance(other, Alphabet) and self.names == other.names

    def __hash__(self) -> int:
        return hash(self.names)

    def __repr__(self) -> str:
        return f"Alphabet({list(self.names)!r})"

    def index(self, name: str) -> int:
        try:
            return self._index[name]
        except KeyError:
            raise KeyError(f"unknown generator {name!r}") from None

    def gen(self, i: int) -> "Word":
        if not 0 <= i < len(self.names):
            raise IndexError(i)
        return Word((i + 1,))

    def gens(self) -> List["Word"]:
        return [self.gen(i) for i in range(len(self))]

    def parse(self, text: str) -> "Word":
        return parse_word(text, self)

    def format(self, w: "Word") -> str:
        return format_word(w, self)


def _reduce(letters: Iterable[int]) -> Tuple[int, ...]:
    out: List[int] = []
    for x in letters:
        if out and out[-1] == -x:
            out.pop()
        else:
            out.append(x)
    return tuple(out)


@dataclass(frozen=True, order=False)
class Word:
    """A freely reduced word; construct through :func:`free_reduce` or the operators."""

    letters: Tuple[int, ...] = ()

    def __post_init__(self):
        for x in self.letters:
            if not isinstance(x, int) or x == 0:
                raise ValueError(f"bad letter {x!r}")
        red = _reduce(self.letters)
        if red != self.letters:
            object.__setattr__(self, "letters", red)

    def __len__(self) -> int:
        return len(self.letters)

    def __iter__(self) -> Iterator[int]:
        return iter(self.letters)

    def __bool__(self) -> bool:
        return bool(self.letters)

    def __mul__(self, other: "Word") -> "Word":
        return Word(self.letters + other.letters)

    def __invert__(self) -> "Word":
        return Word(tuple(-x for x in reversed(self.letters)))

    def inverse(self) -> "Word":
        return ~self

    def __pow__(self, k: int) -> "Word":
        if k < 0:
            return (~self) ** (-k)
        return Word(self.letters * k)

    def pairs(self) -> List[Tuple[int, int]]:
        """The letters as ``(generator index, sign)``."""
        return [(abs(x) - 1, 1 if x > 0 else -1) for x in self.letters]

    def max_index(self) -> int:
        return max((abs(x) - 1 for x in self.letters), default=-1)

    def exponent_sums(self, n: int) -> List[int]:
        sums = [0] * n
        for x in self.letters:
            sums[abs(x) - 1] += 1 if x > 0 else -1
        return sums

    @classmethod
    def from_pairs(cls, pairs: Iterable[Tuple[int, int]]) -> "Word":
        return free_reduce(pairs)

    @classmethod
    def from_exponents(cls, exponents: Sequence[int]) -> "Word":
        """``x_1^e_1 x_2^e_2 ...``"""
        letters: List[int] = []
        for i, e in enumerate(exponents):
            letters.extend([(i + 1) if e > 0 else -(i + 1)] * abs(e))
        return cls(tuple(letters))

    def shortlex_key(self):
        return (len(self.letters), tuple(_letter_rank(x) for x in self.letters))


IDENTITY = Word()


def _letter_rank(x: int) -> int:
    # x1 < x1^-1 < x2 < x2^-1 < ...
    return 2 * (abs(x) - 1) + (x < 0)


def letter(i: int, sign: int = 1) -> Word:
    return Word(((i + 1) * sign,))


def free_reduce(raw: Iterable[Tuple[int, int]], n: int | None = None) -> Word:
    """Freely reduce a sequence of ``(generator index, ±1)`` letters.

    When ``n`` is given, indices outside ``range(n)`` raise IndexError.
    """
    letters = []
    for i, s in raw:
        if i < 0 or (n is not None and i >= n):
            raise IndexError(f"unknown generator index {i}")
        if s not in (1, -1):
            raise ValueError(f"sign must be +1 or -1, got {s}")
        letters.append((i + 1) * s)
    return Word(tuple(letters))


def substitute(w: Word, images: Sequence[Word]) -> Word:
    """Replace generator ``i`` of ``w`` by ``images[i]``."""
    n = len(images)
    inv = [None] * n
    out: List[int] = []
    for x in w.letters:
        i = abs(x) - 1
        if i >= n:
            raise IndexError(f"generator index {i} has no image ({n} images)")
        if x > 0:
            seg = images[i].letters
        else:
            if inv[i] is None:
                inv[i] = (~images[i]).letters
            seg = inv[i]
        for y in seg:
            if out and out[-1] == -y:
                out.pop()
            else:
                out.append(y)
    return Word(tuple(out))


def commutator(u: Word, v: Word) -> Word:
    return ~u * ~v * u * v


def iterated_commutator(ws: Sequence[Word]) -> Word:
    """Left-normed ``[w1, w2, ..., wk]``."""
    if len(ws) < 2:
        raise ValueError("iterated commutator needs at least two entries")
    acc = ws[0]
    for w in ws[1:]:
        acc = commutator(acc, w)
    return acc


@dataclass(frozen=True)
class HomSpec:
    """A homomorphism out of a free group, given by generator images."""

    source: Alphabet
    target: Alphabet
    images: Tuple[Word, ...] = field(default_factory=tuple)

    def __post_init__(self):
        object.__setattr__(self, "images", tuple(self.images))
        if len(self.images) != len(self.source):
            raise ValueError(
                f"{len(self.images)} images given for {len(self.source)} source generators"
            )
        for img in self.images:
            if img.max_index() >= len(self.target):
                raise ValueError("image uses a letter outside the target alphabet")

    def __call__(self, w: Word) -> Word:
        return substitute(w, self.images)


def words_of_length(n: int, length: int) -> Iterator[Word]:
    """All reduced words of the given length over ``n`` generators, in shortlex order."""
    order = [x for i in range(n) for x in (i + 1, -(i + 1))]

    def rec(prefix: List[int], k: int):
        if k == 0:
            yield Word(tuple(prefix))
            return
        for x in order:
            if prefix and prefix[-1] == -x:
                continue
            prefix.append(x)
            yield from rec(prefix, k - 1)
            prefix.pop()

    yield from rec([], length)


# --------------------------------------------------------------------------
# text syntax

class _Parser:
    def __init__(self, text: str, alphabet: Alphabet, line: int, col0: int):
        self.s = text
        self.pos = 0
        self.alphabet = alphabet
        self.line = line
        self.col0 = col0

    def error(self, msg: str):
        from .textio import ParseError

        raise ParseError(msg, self.line, self.col0 + self.pos)

    def skip(self):
        while self.pos < len(self.s) and self.s[self.pos].isspace():
            self.pos += 1

    def peek(self) -> str:
        self.skip()
        return self.s[self.pos] if self.pos < len(self.s) else ""

    def word(self, stops: str) -> Word:
        parts: List[Word] = []
        while True:
            ch = self.peek()
            if ch == "" or ch in stops:
                break
            parts.append(self.factor())
        out: List[int] = []
        for p in parts:
            out.extend(p.letters)
        return Word(tuple(out))

    def factor(self) -> Word:
        ch = self.peek()
        start = self.pos
        if ch == "[":
            self.pos += 1
            entries = [self.word(",]")]
            while self.peek() == ",":
                self.pos += 1
                entries.append(self.word(",]"))
            if self.peek() != "]":
                self.error("expected ']'")
            self.pos += 1
            if len(entries) < 2:
                self.pos = start
                self.error("commutator needs at least two entries")
            base = iterated_commutator(entries)
        elif ch == "(":
            self.pos += 1
            base = self.word(")")
            if self.peek() != ")":
                self.error("expected ')'")
            self.pos += 1
        elif ch == "1" and not self._continues_number():
            self.pos += 1
            base = IDENTITY
        else:
            m = _NAME.match(self.s, self.pos)
            if not m:
                self.error(f"unexpected character {ch!r}")
            name = m.group(0)
            try:
                i = self.alphabet.index(name)
            except KeyError:
                self.error(f"unknown generator {name!r}")
            self.pos = m.end()
            base = letter(i)
        if self.pos < len(self.s) and self.s[self.pos] == "^":
            self.pos += 1
            m = re.compile(r"[+-]?\d+").match(self.s, self.pos)
            if not m:
                self.error("expected integer exponent after '^'")
            self.pos = m.end()
            base = base ** int(m.group(0))
        return base

    def _continues_number(self) -> bool:
        nxt = self.s[self.pos + 1:self.pos + 2]
        return nxt.isdigit()


def parse_word(text: str, alphabet: Alphabet, line: int = 1, col: int = 1) -> Word:
    """Parse the word grammar: ``g``, ``g^k``, ``[w1, w2, ...]``, ``(w)^k``, ``1``."""
    p = _Parser(text, alphabet, line, col)
    w = p.word("")
    if p.peek():
        p.error(f"unexpected character {p.peek()!r}")
    return w


def format_word(w: Word, alphabet: Alphabet) -> str:
    if not w.letters:
        return "1"
    out = []
    letters = w.letters
    i = 0
    while i < len(letters):
        x = letters[i]
        j = i
        while j < len(letters) and letters[j] == x:
            j += 1
        k = (j - i) * (1 if x > 0 else -1)
        name = alphabet.names[abs(x) - 1]
        out.append(name if k == 1 else f"{name}^{k}")
        i = j
    return " ".join(out)
