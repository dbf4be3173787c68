"""Subgroup distortion tables and the Ackermann reference family.

``distortion_table`` enumerates a Gamma-ball and a Lambda-word ball and
reports, for each n, the largest Lambda-length seen among subgroup
elements of Gamma-length <= n.  Elements of Lambda beyond the Lambda
radius are invisible, so the rows are lower bounds unless a row is
flagged ``saturated``.

Seeds extend the table past the enumerable range: a seed is a Gamma-word
(an upper bound on Gamma-length) together with a Lambda-word for the
same element.  Its Lambda-length is the reduced length of that word,
which is exact only when the basis is free; otherwise the seed counts
only if the Lambda-index already holds the element.
"""
from __future__ import annotations

import csv
import io
from dataclasses import dataclass, field

from .cayley import BallIndex, closed_generators
from .errors import AlphabetMismatch, BudgetExceeded, ContractError
from .free_by_cyclic import Element, FcGroup
from .words import FreeGroup, Word

# A_k(n) >= 2^n for k >= 2, so this caps results at 2^(2^17).
DEFAULT_MAX_BITS = 1 << 17

_ACK_MEMO: dict[tuple[int, int], int] = {}


def ackermann(k: int, n: int, max_bits: int = DEFAULT_MAX_BITS) -> int:
    """A_1(n) = 2n and A_(k+1)(n) = A_k iterated n times on 1."""
    if k < 1 or n < 0:
        raise ValueError(f"ackermann needs k >= 1 and n >= 0, got k={k}, n={n}")
    if k == 1:
        return 2 * n
    if n > max_bits:
        # A_k(n) >= 2^n for k >= 2
        raise BudgetExceeded(f"A_{k}({_short(n)}) bit length", n.bit_length() and max_bits + 1,
                             max_bits)
    key = (k, n)
    val = _ACK_MEMO.get(key)
    if val is not None:
        return val
    x = 1
    for _ in range(n):
        x = ackermann(k - 1, x, max_bits)
    if x.bit_length() > max_bits:
        raise BudgetExceeded(f"A_{k}({n}) bit length", x.bit_length(), max_bits)
    _ACK_MEMO[key] = x
    return x


def _short(n: int) -> str:
    return str(n) if n.bit_length() <= 64 else f"<{n.bit_length()}-bit integer>"


class AckermannRef:
    def __init__(self, k: int, max_bits: int = DEFAULT_MAX_BITS):
        if k < 1:
            raise ValueError("k must be positive")
        self.k = k
        self.max_bits = max_bits

    def __call__(self, n: int) -> int:
        return ackermann(self.k, n, self.max_bits)


@dataclass
class LengthIndex:
    """Minimal Lambda-word length of every element reached within ``radius``."""

    radius: int
    lengths: dict = field(default_factory=dict)
    words: dict = field(default_factory=dict)

    def __len__(self) -> int:
        return len(self.lengths)


def subgroup_length_index(G, B, R_lambda: int, budget: int = 5_000_000) -> LengthIndex:
    index = LengthIndex(R_lambda)
    lengths, words = index.lengths, index.words
    for codes, elem in B.iter_words(R_lambda, budget=budget):
        if elem not in lengths:
            lengths[elem] = len(codes)
            words[elem] = codes
    return index


def _check_h2(G, B) -> None:
    if not isinstance(G, FcGroup) or G.fiber_alphabet.names != ("a1", "a2"):
        raise ContractError(f"{G!r} is not G_2")
    if [G.format_element(im) for im in B.images] != ["a1 | 1", "a2 | 1"]:
        raise ContractError(f"{B!r} is not the basis a1 t, a2 t")


def h2_lambda_word(G: FcGroup, B, g: Element) -> Word | None:
    """The reduced H_2-word of ``g``, or None when ``g`` is not in H_2.

    A reduced word (a1t)^j0 (a2t)^e1 (a1t)^j1 ... (a2t)^er (a1t)^jr has
    fiber a1^c0 a2^e1 a1^c1 ... with each c_i an affine function of the
    j's solved so far, because a1 commutes with t and t^s a2 t^-s is
    a2 a1^-s.  So the j's are forced one at a time; g is in H_2 iff they
    are integers and the accumulated t-exponent matches.
    """
    _check_h2(G, B)
    blocks, signs = [0], []
    for c in g.fiber.codes:
        if c >> 1 == 0:
            blocks[-1] += -1 if c & 1 else 1
        else:
            signs.append(-1 if c & 1 else 1)
            blocks.append(0)
    s = trail = 0
    codes: list[int] = []
    for i, b in enumerate(blocks):
        e = signs[i] if i < len(signs) else 0
        if e < 0:
            # a2^-1 after t^(s+j-1) reads a1^(s+j-1) a2^-1
            twice = b - trail - s + 1
            if twice % 2:
                return None
            j = twice // 2
        else:
            j = b - trail
        codes.extend([1 if j < 0 else 0] * abs(j))
        s += j
        if e > 0:
            codes.append(2)
            trail = -s
            s += 1
        elif e < 0:
            codes.append(3)
            s -= 1
            trail = 0
    if s != g.exponent:
        return None
    return Word(B.alphabet, codes)


def h2_seed_family(p: int) -> str:
    """Gamma-word of length 2p+7 whose H_2-length is 2^(p+2) + 2."""
    if p < 1:
        raise ValueError("p must be positive")
    return f"a1 a2^{p} a1 a2 a1^-2 a2^-{p + 1} a1^-1"


@dataclass
class Seed:
    gamma_word: str
    lambda_word: Word


def h2_seeds(G: FcGroup, B, n_max: int) -> list[Seed]:
    seeds = []
    p = 1
    while 2 * p + 7 <= n_max:
        text = h2_seed_family(p)
        seeds.append(Seed(text, h2_lambda_word(G, B, G.normal_form(text))))
        p += 1
    return seeds


@dataclass
class DistortionRow:
    n: int
    dist_lb: int
    witness: object
    lambda_word: Word
    saturated: bool
    gamma_word: str | None = None   # set when the row comes from a seed


@dataclass
class DistortionTable:
    rows: list
    n_max: int
    R_lambda: int
    gamma_ball: int
    lambda_index: int
    group: object = None

    def row(self, n: int) -> DistortionRow:
        return self.rows[n]

    def to_csv(self) -> str:
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["n", "dist_lb", "saturated", "witness"])
        fmt = self.group.format_element
        for r in self.rows:
            w.writerow([r.n, r.dist_lb, str(r.saturated).lower(), fmt(r.witness)])
        return buf.getvalue()

    def summary(self) -> str:
        sat = sum(r.saturated for r in self.rows)
        kind = "exact" if sat == len(self.rows) else "certified lower bound"
        return (f"distortion n<= {self.n_max}, R_lambda={self.R_lambda}: {kind}; "
                f"saturated rows {sat}/{len(self.rows)}")


def _saturation_rule(G, B):
    """Return ``f(n, R) -> bool`` certifying that every Lambda-element of
    Gamma-length <= n has Lambda-length <= R, or None if no rule applies."""
    gens = closed_generators(G)
    imgs = closed_generators(G, B.images)
    if len(imgs) == len(gens) and all(g in gens for g in imgs):
        # Lambda = Gamma with the same generating set: the two lengths agree
        return lambda n, R: R >= n
    if isinstance(G, FreeGroup) and all(len(im) == 1 for im in B.images):
        # free factor on a sub-basis: membership is letter-support and lengths agree
        return lambda n, R: R >= n
    return None


def _seed_candidates(G, B, seeds, lam: LengthIndex, n_max: int) -> list:
    """(gamma bound, lambda length, element, lambda codes, gamma word) per usable seed."""
    out = []
    for seed in seeds:
        w = seed.lambda_word
        if w.alphabet != B.alphabet:
            raise AlphabetMismatch(f"seed Lambda-word {w!r} is not over {B.alphabet!r}")
        gw = G.mixed_alphabet.parse(seed.gamma_word) if isinstance(G, FcGroup) \
            else G.parse(seed.gamma_word)
        elem = G.normal_form(gw) if isinstance(G, FcGroup) else gw
        if B.embed(w) != elem:
            raise ContractError(f"seed {seed.gamma_word!r} and {w} name different elements")
        if len(gw) > n_max:
            continue
        if B.free:
            ll = len(w)
        elif elem in lam.lengths:
            ll, w = lam.lengths[elem], Word(B.alphabet, lam.words[elem], reduced=True)
        else:
            continue
        out.append((len(gw), ll, elem, w, seed.gamma_word))
    return out


def distortion_table(G, B, n_max: int, R_lambda: int, budget: int = 5_000_000,
                     gamma_index: BallIndex | None = None, gamma_radius: int | None = None,
                     seeds=(), membership=None) -> DistortionTable:
    """Rows 0..n_max from a Gamma-ball of radius ``gamma_radius`` (default
    ``n_max``), a Lambda-index of radius ``R_lambda`` and optional seeds.

    ``membership(g)`` may return the reduced Lambda-word of ``g`` or None;
    with a free basis it decides every ball element, so rows inside the
    ball become exact.
    """
    if gamma_index is None:
        gamma_index = BallIndex(G, budget=budget, track_parents=False)
    gamma_radius = n_max if gamma_radius is None else min(gamma_radius, n_max)
    gamma_index.grow_to(gamma_radius)
    lam = subgroup_length_index(G, B, R_lambda, budget)
    gdist = gamma_index.dist
    fmt = G.format_element

    # per Gamma-length: (max Lambda-length, [(element, lambda word, gamma word)])
    best: dict[int, tuple[int, list]] = {}

    def offer(gl, ll, cand):
        cur = best.get(gl)
        if cur is None or ll > cur[0]:
            best[gl] = (ll, [cand])
        elif ll == cur[0]:
            cur[1].append(cand)

    for elem, ll in lam.lengths.items():
        gl = gdist.get(elem)
        if gl is not None and gl <= gamma_radius:
            offer(gl, ll, (elem, Word(B.alphabet, lam.words[elem], reduced=True), None))
    exact = membership is not None and B.free
    if exact:
        for elem, gl in gdist.items():
            if gl <= gamma_radius:
                w = membership(elem)
                if w is not None:
                    offer(gl, len(w), (elem, w, None))
    for gl, ll, elem, w, text in _seed_candidates(G, B, seeds, lam, n_max):
        d = gdist.get(elem)
        if d is not None and d <= gamma_radius:
            gl, text = min(gl, d), None
        offer(gl, ll, (elem, w, text))

    rule = _saturation_rule(G, B)
    rows = []
    top, cands = -1, []
    for n in range(n_max + 1):
        if n in best:
            ll, found = best[n]
            if ll > top:
                top, cands = ll, list(found)
            elif ll == top:
                cands = cands + found
        elem, w, text = min(cands, key=lambda c: (fmt(c[0]), c[2] or ""))
        rows.append(DistortionRow(
            n=n,
            dist_lb=top,
            witness=elem,
            lambda_word=w,
            saturated=n <= gamma_radius and (exact or bool(rule and rule(n, R_lambda))),
            gamma_word=text,
        ))
    return DistortionTable(rows, n_max, R_lambda, len(gamma_index), len(lam), G)


def max_distortion_witness(table: DistortionTable, n: int):
    row = table.rows[n]
    return row.witness, row.lambda_word
