"""Free-by-cyclic groups F x|_theta Z in normal form.

An element is stored as ``(fiber, exponent)`` meaning ``fiber * t^exponent``
with ``fiber`` reduced.  The relation ``t^-1 x t = theta(x)`` gives the
shuffle ``t^m v = theta^-m(v) t^m``, hence

    (u, m) * (v, n) = (u theta^-m(v), m + n).
"""
from __future__ import annotations

import re
from dataclasses import dataclass, field
from typing import Iterable, Iterator, NamedTuple, Sequence

from . import kernels
from .automorphisms import Automorphism, GeneratorMap, hydra_phi
from .errors import AlphabetMismatch, BudgetExceeded, ContractError, ParseError
from .words import Alphabet, Word, serialize


class Element(NamedTuple):
    fiber: Word
    exponent: int


class FcGroup:
    def __init__(self, theta: Automorphism, stable_letter: str = "t"):
        if stable_letter in theta.alphabet:
            raise AlphabetMismatch(f"stable letter {stable_letter!r} clashes with fiber alphabet")
        self.theta = theta
        self.fiber_alphabet = theta.alphabet
        self.stable_letter = stable_letter
        self.mixed_alphabet = Alphabet(theta.alphabet.names + (stable_letter,))
        self._t_code = 2 * len(theta.alphabet)

    def __repr__(self) -> str:
        return f"FcGroup({list(self.fiber_alphabet.names)!r} x| {self.theta.name})"

    # group operations --------------------------------------------------

    def identity(self) -> Element:
        return Element(self.fiber_alphabet.identity(), 0)

    def element(self, fiber: Word | str = "", exponent: int = 0) -> Element:
        if isinstance(fiber, str):
            fiber = self.fiber_alphabet.parse(fiber)
        elif fiber.alphabet != self.fiber_alphabet:
            raise AlphabetMismatch(f"{fiber!r} is not a fiber word")
        return Element(fiber, int(exponent))

    def multiply(self, g: Element, h: Element) -> Element:
        u, m = g
        v, n = h
        if not v.codes:
            return Element(u, m + n)
        if m:
            table = self.theta.level(-m)
            vc = kernels.substitute(v.codes, table, self.theta.budget)
            if vc is None:
                raise BudgetExceeded(f"theta^{-m} image", len(v), self.theta.budget)
        else:
            vc = v.codes
        fiber = Word(self.fiber_alphabet, kernels.concat_reduce(u.codes, vc), reduced=True)
        return Element(fiber, m + n)

    def invert(self, g: Element) -> Element:
        w, m = g
        winv = ~w
        return Element(self.theta.power_apply(m, winv) if m else winv, -m)

    def generators(self) -> list[Element]:
        """Fiber letters followed by t."""
        gens = [Element(self.fiber_alphabet.generator(n), 0) for n in self.fiber_alphabet.names]
        gens.append(Element(self.fiber_alphabet.identity(), 1))
        return gens

    # words and text ----------------------------------------------------

    def letter_element(self, code: int) -> Element:
        if code >> 1 == len(self.fiber_alphabet):
            return Element(self.fiber_alphabet.identity(), -1 if code & 1 else 1)
        return Element(Word(self.fiber_alphabet, (code,), reduced=True), 0)

    def normal_form(self, mixed: str | Sequence[int] | Word) -> Element:
        """Left fold of a mixed word over fiber letters and t."""
        if isinstance(mixed, str):
            codes = self.mixed_alphabet.tokenize(mixed)
        elif isinstance(mixed, Word):
            if mixed.alphabet != self.mixed_alphabet:
                raise AlphabetMismatch(f"{mixed!r} is not over {self.mixed_alphabet!r}")
            codes = mixed.codes
        else:
            codes = list(mixed)
        acc = self.identity()
        tc = self._t_code
        for c in codes:
            if c >> 1 == tc >> 1:
                acc = Element(acc.fiber, acc.exponent + (-1 if c & 1 else 1))
            else:
                acc = self.multiply(acc, Element(Word(self.fiber_alphabet, (c,), reduced=True), 0))
        return acc

    def mixed_word(self, g: Element) -> Word:
        """The canonical spelling ``fiber t^m`` as a word over fiber + t."""
        m = g.exponent
        codes = g.fiber.codes + ((self._t_code | (m < 0)),) * abs(m)
        return Word(self.mixed_alphabet, codes, reduced=True)

    def format_element(self, g: Element) -> str:
        return f"{serialize(g.fiber) or 'e'} | {g.exponent}"

    def parse(self, text: str) -> Element:
        """Parse ``<fiber> | <exponent>`` or a bare mixed word."""
        if "|" in text:
            left, _, right = text.partition("|")
            left = left.strip()
            try:
                exponent = int(right.strip())
            except ValueError:
                raise ParseError(f"bad exponent {right.strip()!r}", text.index("|") + 1) from None
            if left == "e" and "e" not in self.fiber_alphabet:
                left = ""
            return Element(self.fiber_alphabet.parse(left), exponent)
        text = text.strip()
        if text == "e" and "e" not in self.mixed_alphabet:
            return self.identity()
        return self.normal_form(text)


def multiply(G: FcGroup, g: Element, h: Element) -> Element:
    return G.multiply(g, h)


def invert(G: FcGroup, g: Element) -> Element:
    return G.invert(g)


def normal_form(G: FcGroup, mixed) -> Element:
    return G.normal_form(mixed)


def _basis_names(words: Sequence[str]) -> list[str]:
    names = ["".join(w.split()) for w in words]
    ok = (
        len(set(names)) == len(names)
        and all(n and "^" not in n for n in names)
    )
    return names if ok else [f"x{i}" for i in range(1, len(words) + 1)]


class SubgroupBasis:
    """Finite generating list of a subgroup, with an abstract free group on it.

    ``alphabet`` names the basis elements (``a1t`` for the mixed word
    ``a1 t``), so Lambda-words are ordinary Words over it.  ``free`` is a
    promise (not checked) that the words form a free basis, so that the
    reduced length of a Lambda-word is its Lambda-length.
    """

    def __init__(self, group, words: Sequence[str], names: Sequence[str] | None = None,
                 free: bool = False):
        if not words:
            raise ContractError("subgroup basis must be non-empty")
        self.group = group
        self.words = [str(w) for w in words]
        self.alphabet = Alphabet(names if names is not None else _basis_names(self.words))
        self.images = [group.parse(w) for w in self.words]
        self.free = free
        table = []
        for im in self.images:
            table.append(im)
            table.append(group.invert(im))
        self.table = table

    def __len__(self) -> int:
        return len(self.words)

    def __repr__(self) -> str:
        return f"SubgroupBasis({self.words!r})"

    def embed(self, w: Word):
        if w.alphabet != self.alphabet:
            raise AlphabetMismatch(f"{w!r} is not a word on {self.alphabet!r}")
        g = self.group
        acc = g.identity()
        for c in w.codes:
            acc = g.multiply(acc, self.table[c])
        return acc

    def parse(self, text: str) -> Word:
        return self.alphabet.parse(text)

    def sub_basis(self, names: Iterable[str]) -> list[int]:
        """Letter codes (both signs) of the named basis elements."""
        codes = []
        for n in names:
            i = self.alphabet.index(n)
            codes.extend((2 * i, 2 * i + 1))
        return codes

    def iter_words(self, radius: int, letters: Sequence[int] | None = None,
                   budget: int | None = None) -> Iterator[tuple[tuple, object]]:
        """Breadth-first reduced words of length <= radius with their images.

        Yields ``(codes, element)``; order is by length, then by letter
        order of extension, so it is deterministic.
        """
        if letters is None:
            letters = range(2 * len(self.alphabet))
        letters = list(letters)
        g = self.group
        layer = [((), g.identity())]
        count = 0
        for length in range(radius + 1):
            nxt = []
            for codes, elem in layer:
                count += 1
                if budget is not None and count > budget:
                    raise BudgetExceeded("Lambda-word enumeration", count, budget)
                yield codes, elem
                if length == radius:
                    continue
                last = codes[-1] ^ 1 if codes else -1
                for c in letters:
                    if c != last:
                        nxt.append((codes + (c,), g.multiply(elem, self.table[c])))
            layer = nxt


def lambda_embed(G, B: SubgroupBasis, lambda_word: Word):
    return B.embed(lambda_word)


def hydra_h_basis(group: FcGroup, r: int | None = None) -> SubgroupBasis:
    """H_r = <a1 t, ..., ar t> in G_k."""
    names = [n for n in group.fiber_alphabet.names if n.startswith("a")]
    k = max(int(n[1:]) for n in names)
    r = k if r is None else r
    t = group.stable_letter
    # free of rank r (hydra literature)
    return SubgroupBasis(group, [f"a{i} {t}" for i in range(1, r + 1)], free=True)


def hydra_lambda_basis(group: FcGroup, r: int | None = None) -> SubgroupBasis:
    """Lambda_r = <a0 t, ..., ar t, b1, ..., bl> in Gamma_k."""
    alpha = group.fiber_alphabet.names
    k = max(int(n[1:]) for n in alpha if n.startswith("a"))
    r = k if r is None else r
    t = group.stable_letter
    words = [f"a{i} {t}" for i in range(0, r + 1)]
    words += [n for n in alpha if n.startswith("b")]
    return SubgroupBasis(group, words, free=True)


def hydra_g(k: int, budget: int | None = None) -> FcGroup:
    phi = hydra_phi(k) if budget is None else hydra_phi(k, budget)
    return FcGroup(phi)


def _hydra_shape(alpha: Alphabet) -> tuple[int, int]:
    names = alpha.names
    a = [n for n in names if re.fullmatch(r"a\d+", n)]
    b = [n for n in names if re.fullmatch(r"b\d+", n)]
    k = len(a) - 1
    expect = [f"a{i}" for i in range(k + 1)] + [f"b{j}" for j in range(1, len(b) + 1)]
    if k < 1 or list(names) != expect:
        raise ContractError(f"{alpha!r} is not of hydra Gamma shape a0..ak, b1..bl")
    return k, len(b)


def phi_projection_map(source: FcGroup, target: FcGroup) -> GeneratorMap:
    """Fiber part of Phi: ai -> a_max(1,i), bj -> 1."""
    k, _ = _hydra_shape(source.fiber_alphabet)
    if list(target.fiber_alphabet.names) != [f"a{i}" for i in range(1, k + 1)]:
        raise ContractError(f"target {target!r} is not G_{k}")
    ta = target.fiber_alphabet
    images = []
    for n in source.fiber_alphabet.names:
        if n.startswith("a"):
            images.append(ta.generator(f"a{max(1, int(n[1:]))}"))
        else:
            images.append(ta.identity())
    return GeneratorMap(source.fiber_alphabet, images, ta)


def phi_projection(source: FcGroup, target: FcGroup, g: Element,
                   fmap: GeneratorMap | None = None) -> Element:
    """Phi: Gamma_k -> G_k; pass ``fmap`` to reuse a prebuilt fiber map."""
    if fmap is None:
        fmap = phi_projection_map(source, target)
    return Element(fmap(g.fiber), g.exponent)


@dataclass
class ExponentReport:
    radius: int
    words: int
    violations: list = field(default_factory=list)   # (fiber, exponents, witnesses)
    collisions: list = field(default_factory=list)   # (element, word1, word2)

    @property
    def ok(self) -> bool:
        return not self.violations and not self.collisions


def check_unique_exponent(G: FcGroup, B: SubgroupBasis, radius: int,
                          budget: int = 10**7) -> ExponentReport:
    """Look for two Lambda-words whose images share a fiber but not an exponent.

    Also records distinct reduced words with equal images (failure of
    injectivity).
    """
    by_fiber: dict[Word, dict[int, tuple]] = {}
    seen: dict[Element, tuple] = {}
    report = ExponentReport(radius, 0)
    for codes, elem in B.iter_words(radius, budget=budget):
        report.words += 1
        prev = seen.get(elem)
        if prev is None:
            seen[elem] = codes
        else:
            report.collisions.append(
                (elem, Word(B.alphabet, prev, reduced=True), Word(B.alphabet, codes, reduced=True))
            )
        by_fiber.setdefault(elem.fiber, {}).setdefault(elem.exponent, codes)
    for fiber, exps in by_fiber.items():
        if len(exps) > 1:
            witnesses = [Word(B.alphabet, exps[e], reduced=True) for e in sorted(exps)]
            report.violations.append((fiber, sorted(exps), witnesses))
    return report
