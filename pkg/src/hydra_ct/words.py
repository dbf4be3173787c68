"""Reduced words in a free group on a named alphabet.

A letter is stored as the code ``2 * generator + (sign < 0)``; this packs
the ``(generator, sign)`` pair into one int so that inversion is
``code ^ 1``.  Every constructor freely reduces, so equal group elements
are equal words.

Canonical text form: whitespace-separated tokens ``name`` or ``name^e``,
with maximal runs of one generator merged (``a1 b1^-2 t^3``); the empty
word is the empty string.
"""
from __future__ import annotations

import re
from fractions import Fraction
from typing import Iterable, NamedTuple, Sequence

from . import kernels
from .errors import AlphabetMismatch, ParseError

_TOKEN = re.compile(r"([^\s^]+)(?:\^([+-]?\d+))?$")


class Letter(NamedTuple):
    generator: int
    sign: int

    @property
    def code(self) -> int:
        return 2 * self.generator + (self.sign < 0)

    @classmethod
    def from_code(cls, code: int) -> "Letter":
        return cls(code >> 1, -1 if code & 1 else 1)


class Alphabet:
    """Ordered, duplicate-free list of generator names."""

    __slots__ = ("names", "_index")

    def __init__(self, names: Iterable[str]):
        names = tuple(names)
        if not names:
            raise ValueError("alphabet must be non-empty")
        if len(set(names)) != len(names):
            raise ValueError(f"duplicate generator names in {names}")
        for name in names:
            if not name or "^" in name or any(ch.isspace() for ch in name):
                raise ValueError(f"invalid generator name {name!r}")
        self.names = names
        self._index = {name: i for i, name in enumerate(names)}

    def __len__(self) -> int:
        return len(self.names)

    def __eq__(self, other) -> bool:
        return isinstance(other, Alphabet) and self.names == other.names

    def __hash__(self) -> int:
        return hash(self.names)

    def __repr__(self) -> str:
        return f"Alphabet({list(self.names)!r})"

    def __contains__(self, name) -> bool:
        return name in self._index

    def index(self, name: str) -> int:
        try:
            return self._index[name]
        except KeyError:
            raise AlphabetMismatch(f"unknown generator {name!r} for {self!r}") from None

    def code(self, name: str, sign: int = 1) -> int:
        return 2 * self.index(name) + (sign < 0)

    def tokenize(self, text: str) -> list[int]:
        """Unreduced letter codes of a canonical-grammar string."""
        codes: list[int] = []
        for m in re.finditer(r"\S+", text):
            tok = _TOKEN.match(m.group(0))
            if tok is None:
                raise ParseError(f"malformed token {m.group(0)!r}", m.start())
            name, exp = tok.group(1), tok.group(2)
            if name not in self._index:
                raise AlphabetMismatch(
                    f"unknown generator {name!r} at position {m.start()} for {self!r}"
                )
            e = 1 if exp is None else int(exp)
            c = 2 * self._index[name]
            codes.extend([c if e > 0 else c | 1] * abs(e))
        return codes

    def parse(self, text: str) -> "Word":
        return Word(self, self.tokenize(text))

    def word(self, letters: Sequence) -> "Word":
        """Build a word from ``(name_or_index, sign)`` pairs or Letters."""
        codes = []
        for gen, sign in letters:
            if isinstance(gen, str):
                idx = self.index(gen)
            else:
                idx = int(gen)
                if not 0 <= idx < len(self.names):
                    raise AlphabetMismatch(f"generator index {idx} out of range")
            if sign not in (1, -1):
                raise ValueError(f"sign must be +1 or -1, got {sign}")
            codes.append(2 * idx + (sign < 0))
        return Word(self, codes)

    def identity(self) -> "Word":
        return Word(self, (), reduced=True)

    def generator(self, name: str, sign: int = 1) -> "Word":
        return Word(self, (self.code(name, sign),), reduced=True)


class Word:
    """Freely reduced word; immutable and hashable."""

    __slots__ = ("alphabet", "codes")

    def __init__(self, alphabet: Alphabet, codes: Iterable[int] = (), reduced: bool = False):
        self.alphabet = alphabet
        self.codes = tuple(codes) if reduced else kernels.reduce_codes(codes)

    @property
    def letters(self) -> list[Letter]:
        return [Letter.from_code(c) for c in self.codes]

    def __len__(self) -> int:
        return len(self.codes)

    def __bool__(self) -> bool:
        return bool(self.codes)

    def __eq__(self, other) -> bool:
        if not isinstance(other, Word):
            return NotImplemented
        return self.codes == other.codes and self.alphabet == other.alphabet

    def __hash__(self) -> int:
        return hash(self.codes)

    def __lt__(self, other: "Word") -> bool:
        return (len(self), self.codes) < (len(other), other.codes)

    def __mul__(self, other: "Word") -> "Word":
        return multiply(self, other)

    def __invert__(self) -> "Word":
        return invert(self)

    def __pow__(self, n: int) -> "Word":
        base = self if n >= 0 else invert(self)
        out = self.alphabet.identity()
        for _ in range(abs(n)):
            out = multiply(out, base)
        return out

    def __getitem__(self, item):
        if isinstance(item, slice):
            return Word(self.alphabet, self.codes[item])
        return Letter.from_code(self.codes[item])

    def __str__(self) -> str:
        return serialize(self)

    def __repr__(self) -> str:
        return f"Word({serialize(self)!r})"


def serialize(w: Word) -> str:
    names = w.alphabet.names
    out = []
    i, codes = 0, w.codes
    while i < len(codes):
        c = codes[i]
        j = i
        while j < len(codes) and codes[j] == c:
            j += 1
        e = (j - i) * (-1 if c & 1 else 1)
        name = names[c >> 1]
        out.append(name if e == 1 else f"{name}^{e}")
        i = j
    return " ".join(out)


def _check(u: Word, v: Word) -> None:
    if u.alphabet is not v.alphabet and u.alphabet != v.alphabet:
        raise AlphabetMismatch(f"{u.alphabet!r} vs {v.alphabet!r}")


def reduce(alphabet: Alphabet, raw) -> Word:
    """Freely reduce a raw letter sequence (text, names with signs, or codes)."""
    if isinstance(raw, str):
        return alphabet.parse(raw)
    raw = list(raw)
    if raw and isinstance(raw[0], int):
        for c in raw:
            if not 0 <= c < 2 * len(alphabet):
                raise AlphabetMismatch(f"letter code {c} out of range")
        return Word(alphabet, raw)
    return alphabet.word(raw)


def multiply(u: Word, v: Word) -> Word:
    _check(u, v)
    return Word(u.alphabet, kernels.concat_reduce(u.codes, v.codes), reduced=True)


def invert(w: Word) -> Word:
    return Word(w.alphabet, kernels.invert_codes(w.codes), reduced=True)


def gromov_product_tree(u: Word, v: Word, base: Word | None = None) -> int:
    """Gromov product ``(u.v)_base`` in the Cayley tree of the free group."""
    _check(u, v)
    if base is not None and base:
        _check(u, base)
        binv = kernels.invert_codes(base.codes)
        uc = kernels.concat_reduce(binv, u.codes)
        vc = kernels.concat_reduce(binv, v.codes)
    else:
        uc, vc = u.codes, v.codes
    return kernels.common_prefix(uc, vc)


def gromov_product_formula(u: Word, v: Word, base: Word) -> Fraction:
    """``(|b^-1 u| + |b^-1 v| - |u^-1 v|) / 2`` straight from the word metric."""
    d_u = len(multiply(invert(base), u))
    d_v = len(multiply(invert(base), v))
    d_uv = len(multiply(invert(u), v))
    return Fraction(d_u + d_v - d_uv, 2)


def tree_geodesic(u: Word, v: Word) -> list[Word]:
    """Vertices of the unique tree path from u to v, endpoints included."""
    _check(u, v)
    p = kernels.common_prefix(u.codes, v.codes)
    a = u.alphabet
    path = [Word(a, u.codes[:i], reduced=True) for i in range(len(u), p - 1, -1)]
    path.extend(Word(a, v.codes[:i], reduced=True) for i in range(p + 1, len(v) + 1))
    return path


class FreeGroup:
    """Group-operations adapter so a free group can be fed to ``cayley``."""

    def __init__(self, alphabet: Alphabet | Iterable[str]):
        if not isinstance(alphabet, Alphabet):
            alphabet = Alphabet(alphabet)
        self.alphabet = alphabet

    def __repr__(self) -> str:
        return f"FreeGroup({list(self.alphabet.names)!r})"

    def identity(self) -> Word:
        return self.alphabet.identity()

    def multiply(self, g: Word, h: Word) -> Word:
        return multiply(g, h)

    def invert(self, g: Word) -> Word:
        return invert(g)

    def generators(self) -> list[Word]:
        return [self.alphabet.generator(n) for n in self.alphabet.names]

    def parse(self, text: str) -> Word:
        text = text.strip()
        if text == "e" and "e" not in self.alphabet:
            return self.identity()
        return self.alphabet.parse(text)

    def format_element(self, g: Word) -> str:
        return serialize(g) or "e"

    def exact_length(self, g: Word) -> int:
        return len(g)
