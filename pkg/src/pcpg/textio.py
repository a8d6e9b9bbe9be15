"""Line-oriented text formats shared by the library and the CLI."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Dict, List, Optional, Tuple

from .freewords import Alphabet, Word, parse_word


class ParseError(ValueError):
    def __init__(self, msg: str, line: int, col: int):
        super().__init__(f"line {line}, column {col}: {msg}")
        self.msg = msg
        self.line = line
        self.col = col


def _keyed_lines(text: str) -> List[Tuple[int, str, str, int]]:
    """Split ``key: value`` lines, skipping blanks and ``#`` comments.

    Yields (line number, key, value, column where value starts).  Lines without
    a key come back with key ``""``.
    """
    out = []
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].rstrip()
        if not line.strip():
            continue
        head, sep, tail = line.partition(":")
        if sep and head.strip().replace("-", "").replace("_", "").isalnum() and "|" not in head and "[" not in head:
            col = len(head) + 2
            out.append((lineno, head.strip().lower(), tail, col))
        else:
            out.append((lineno, "", line, 1))
    return out


def _split_words(value: str, sep: str, alphabet: Alphabet, lineno: int, col: int) -> List[Word]:
    words = []
    offset = 0
    if not value.strip():
        return words
    for part in value.split(sep):
        words.append(parse_word(part, alphabet, lineno, col + offset))
        offset += len(part) + len(sep)
    return words


@dataclass
class PresentationText:
    alphabet: Alphabet
    relators: List[Word]
    class_bound: Optional[int]
    extra: Dict[str, Tuple[int, str, int]]


def parse_presentation(text: str, require_class: bool = False) -> PresentationText:
    """``gens: a b``, ``rels: w1 ; w2``, ``class: c``; other keys are passed through."""
    gens = None
    rels_line = None
    cls = None
    extra: Dict[str, Tuple[int, str, int]] = {}
    for lineno, key, value, col in _keyed_lines(text):
        if key == "gens":
            try:
                gens = Alphabet(value.split())
            except ValueError as exc:
                raise ParseError(str(exc), lineno, col) from None
        elif key == "rels":
            rels_line = (lineno, value, col)
        elif key == "class":
            try:
                cls = int(value)
            except ValueError:
                raise ParseError(f"class must be an integer, got {value.strip()!r}", lineno, col) from None
            if cls < 1:
                raise ParseError("class must be at least 1", lineno, col)
        elif key:
            extra[key] = (lineno, value, col)
        else:
            raise ParseError("expected `key: value`", lineno, 1)
    if gens is None:
        raise ParseError("missing `gens:` line", 1, 1)
    relators: List[Word] = []
    if rels_line is not None:
        lineno, value, col = rels_line
        relators = [w for w in _split_words(value, ";", gens, lineno, col)]
    if require_class and cls is None:
        raise ParseError("missing `class:` line", 1, 1)
    return PresentationText(gens, relators, cls, extra)


def format_presentation(alphabet: Alphabet, relators, class_bound=None) -> str:
    lines = ["gens: " + " ".join(alphabet.names)]
    lines.append("rels: " + " ; ".join(alphabet.format(r) for r in relators))
    if class_bound is not None:
        lines.append(f"class: {class_bound}")
    return "\n".join(lines) + "\n"


def parse_hom(text: str, source: Optional[Alphabet], target: Alphabet):
    """Lines ``x -> word``.  Returns (source alphabet, images).

    When ``source`` is None the source alphabet is read off the file in order.
    """
    names: List[str] = []
    images: Dict[str, Word] = {}
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0]
        if not line.strip():
            continue
        if "->" not in line:
            raise ParseError("expected `x -> word`", lineno, 1)
        lhs, rhs = line.split("->", 1)
        name = lhs.strip()
        col = len(lhs) + 3
        if name in images:
            raise ParseError(f"generator {name!r} mapped twice", lineno, 1)
        names.append(name)
        images[name] = parse_word(rhs, target, lineno, col)
    if source is None:
        try:
            source = Alphabet(names)
        except ValueError as exc:
            raise ParseError(str(exc), 1, 1) from None
    missing = [nm for nm in source.names if nm not in images]
    if missing:
        raise ParseError(f"no image for generator(s) {', '.join(missing)}", 1, 1)
    unknown = [nm for nm in names if nm not in source.names]
    if unknown:
        raise ParseError(f"unknown source generator(s) {', '.join(unknown)}", 1, 1)
    return source, [images[nm] for nm in source.names]


def format_hom(source: Alphabet, target: Alphabet, images) -> str:
    return "".join(f"{nm} -> {target.format(w)}\n" for nm, w in zip(source.names, images))


@dataclass
class InstanceText:
    alphabet: Alphabet
    pairs: List[Tuple[Word, Word]]
    constants: Optional[Tuple[Word, Word, Word, Word]]


def _scan_names(text: str) -> List[str]:
    import re

    seen: List[str] = []
    for line in text.splitlines():
        line = line.split("#", 1)[0]
        head, sep, tail = line.partition(":")
        body = tail if sep and head.strip().lower() in ("pairs", "constants", "word") else line
        if sep and head.strip().lower() == "gens":
            continue
        for nm in re.findall(r"[A-Za-z_][A-Za-z0-9_]*", body):
            if nm not in seen:
                seen.append(nm)
    return seen


def parse_instance(text: str, alphabet: Optional[Alphabet] = None) -> InstanceText:
    """``pairs:`` then ``g | h`` lines; optional ``constants: a1 | b1 | a2 | b2``.

    An optional ``gens:`` line fixes the target alphabet; otherwise the given
    alphabet is used, or the letters are collected in order of appearance.
    """
    entries = _keyed_lines(text)
    for lineno, key, value, col in entries:
        if key == "gens":
            try:
                declared = Alphabet(value.split())
            except ValueError as exc:
                raise ParseError(str(exc), lineno, col) from None
            if alphabet is not None and declared != alphabet:
                raise ParseError("`gens:` disagrees with the group's alphabet", lineno, col)
            alphabet = declared
    if alphabet is None:
        alphabet = Alphabet(_scan_names(text))
    pairs: List[Tuple[Word, Word]] = []
    constants = None
    in_pairs = False
    for lineno, key, value, col in entries:
        if key == "gens":
            continue
        if key == "pairs":
            in_pairs = True
            if value.strip():
                raise ParseError("pairs go on the lines after `pairs:`", lineno, col)
            continue
        if key == "constants":
            ws = _split_words(value, "|", alphabet, lineno, col)
            if len(ws) != 4:
                raise ParseError(f"expected 4 constants, found {len(ws)}", lineno, col)
            constants = tuple(ws)
            continue
        if key:
            raise ParseError(f"unexpected key {key!r}", lineno, 1)
        if not in_pairs:
            raise ParseError("pair line before `pairs:`", lineno, 1)
        ws = _split_words(value, "|", alphabet, lineno, col)
        if len(ws) != 2:
            raise ParseError("expected `g | h`", lineno, col)
        pairs.append((ws[0], ws[1]))
    if not pairs:
        raise ParseError("instance has no pairs", 1, 1)
    return InstanceText(alphabet, pairs, constants)


def format_instance(alphabet: Alphabet, pairs, constants=None) -> str:
    f = alphabet.format
    lines = ["gens: " + " ".join(alphabet.names), "pairs:"]
    lines += [f"{f(g)} | {f(h)}" for g, h in pairs]
    if constants is not None:
        lines.append("constants: " + " | ".join(f(c) for c in constants))
    return "\n".join(lines) + "\n"
