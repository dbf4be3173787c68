"""Empirical Mitra functions, geodesic avoidance checks, shadows, and the
position of the final a_r letter under powers of theta.

Everything here is a minimum or maximum over a finite enumerated range,
so a profile is an upper bound on the true infimum restricted to that
range.  The Lambda side is always the exact Cayley tree of the abstract
free group on the basis: the Gromov product of two reduced words about
e is their common prefix length.
"""
from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable

from . import kernels
from .cayley import WordMetric, geodesics_min_distance_to, gromov_product
from .errors import BudgetExceeded, ContractError
from .free_by_cyclic import FcGroup
from .words import Word, tree_geodesic


def _one_letter_tails(B, p: tuple, tail: int) -> list[tuple]:
    """Reduced words s with |s| <= tail and p s reduced (s = () included)."""
    out = [()]
    frontier = [()]
    n = 2 * len(B.alphabet)
    for _ in range(tail):
        nxt = []
        for s in frontier:
            last = (s[-1] if s else (p[-1] if p else -1))
            for c in range(n):
                if last >= 0 and c == last ^ 1:
                    continue
                nxt.append(s + (c,))
        out.extend(nxt)
        frontier = nxt
    return out


def branching_pairs(B, radius: int, tail: int = 1) -> list[tuple[tuple, tuple]]:
    """Pairs (p s, p s') whose tree product about e is exactly |p|.

    p runs over reduced Lambda-words with |p| <= radius; s, s' are distinct
    tails of length <= tail that do not start with the same letter.
    """
    pairs = []
    for p, _ in B.iter_words(radius):
        tails = _one_letter_tails(B, p, tail)
        for i, s in enumerate(tails):
            for s2 in tails[i + 1:]:
                if s and s2 and s[0] == s2[0]:
                    continue
                pairs.append((p + s, p + s2))
    return pairs


@dataclass
class MitraRow:
    N: int
    M: Fraction | None
    M_prime: int | None
    M_dprime: int | None


@dataclass
class MitraProfile:
    rows: list
    lambda_radius: int
    tail: int
    pairs: int
    prefix_pairs: int
    gamma_radius: int
    group: object = None

    def is_monotone(self) -> bool:
        for col in ("M", "M_prime", "M_dprime"):
            vals = [getattr(r, col) for r in self.rows]
            for a, b in zip(vals, vals[1:]):
                # None is +infinity
                if a is None and b is not None:
                    return False
                if a is not None and b is not None and b < a:
                    return False
        return True

    def to_csv(self) -> str:
        lines = ["N,M,M_prime,M_dprime"]
        for r in self.rows:
            lines.append(",".join([str(r.N), _fmt(r.M), _fmt(r.M_prime), _fmt(r.M_dprime)]))
        return "\n".join(lines) + "\n"

    def provenance(self) -> dict:
        return {
            "lambda_radius": self.lambda_radius,
            "tail": self.tail,
            "pairs": self.pairs,
            "prefix_pairs": self.prefix_pairs,
            "gamma_radius": self.gamma_radius,
            "bound": "range-restricted upper bound on the infimum",
        }


def _fmt(x) -> str:
    if x is None:
        return "inf"
    if isinstance(x, Fraction) and x.denominator != 1:
        return f"{x.numerator}/{x.denominator}"
    return str(int(x))


def _suffix_min(per_level: dict, n_max: int) -> list:
    out = [None] * (n_max + 1)
    cur = None
    for n in range(max(per_level, default=0), -1, -1):
        v = per_level.get(n)
        if v is not None and (cur is None or v < cur):
            cur = v
        if n <= n_max:
            out[n] = cur
    return out


def _map(fn, items, threads: int) -> list:
    if threads > 1:
        from concurrent.futures import ThreadPoolExecutor
        with ThreadPoolExecutor(threads) as pool:
            return list(pool.map(fn, items))
    return [fn(x) for x in items]


def mitra_profiles(G, B, N_max: int, lambda_radius: int | None = None, tail: int = 1,
                   metric: WordMetric | None = None, gamma_radius: int = 10,
                   budget: int = 5_000_000, threads: int = 1) -> MitraProfile:
    """M, M', M'' for N = 0..N_max over branching pairs and prefix pairs.

    M(N)   min Gamma Gromov product (f x . f y)_e over pairs with (x.y)_e >= N
    M'(N)  min d(e, [f x, f y]) over the same pairs (in a tree, (x.y)_e is
           the distance from e to [x, y])
    M''(N) min d(e, [f z, f y]) over z a prefix of y with |z| >= N
    Raises CoverageError if an image leaves the Gamma ball of radius
    ``gamma_radius``.
    """
    R = N_max if lambda_radius is None else lambda_radius
    if R < N_max:
        raise ContractError(f"Lambda radius {R} cannot witness N up to {N_max}")
    if metric is None:
        metric = WordMetric(G, max_radius=gamma_radius, budget=budget)
    embed_cache: dict = {}

    def f(codes):
        g = embed_cache.get(codes)
        if g is None:
            g = B.embed(Word(B.alphabet, codes, reduced=True))
            embed_cache[codes] = g
        return g

    pairs = branching_pairs(B, R, tail)
    if len(pairs) > budget:
        raise BudgetExceeded("Mitra pair scan", len(pairs), budget)
    e = G.identity()

    def one(pair):
        x, y = pair
        fx, fy = f(x), f(y)
        return (kernels.common_prefix(x, y), gromov_product(fx, fy, e, metric),
                geodesics_min_distance_to(e, fx, fy, metric))

    m_level: dict = {}
    mp_level: dict = {}
    for level, gp, md in _map(one, pairs, threads):
        if level not in m_level or gp < m_level[level]:
            m_level[level] = gp
        if level not in mp_level or md < mp_level[level]:
            mp_level[level] = md

    prefix_pairs = []
    for y, _ in B.iter_words(R + tail):
        for i in range(len(y)):
            prefix_pairs.append((y[:i], y))

    def two(pair):
        z, y = pair
        return len(z), geodesics_min_distance_to(e, f(z), f(y), metric)

    mdp_level: dict = {}
    for level, md in _map(two, prefix_pairs, threads):
        if level not in mdp_level or md < mdp_level[level]:
            mdp_level[level] = md

    M = _suffix_min(m_level, N_max)
    Mp = _suffix_min(mp_level, N_max)
    Mdp = _suffix_min(mdp_level, N_max)
    rows = [MitraRow(n, M[n], Mp[n], Mdp[n]) for n in range(N_max + 1)]
    prof = MitraProfile(rows, R, tail, len(pairs), len(prefix_pairs),
                        metric.index.radius, G)
    if not prof.is_monotone():
        raise AssertionError("Mitra profile is not monotone; enumeration is inconsistent")
    return prof


# Corollary: geodesics [alpha, alpha beta] avoid a ball -------------------

@dataclass
class CorollaryLine:
    alpha: Word
    beta: Word
    min_dist: int
    passed: bool

    def format(self) -> str:
        word = str(self.alpha * self.beta) or "e"
        return f"{word}, {self.min_dist}, {'pass' if self.passed else 'fail'}"


@dataclass
class CorollaryReport:
    N: int
    M_target: int
    lines: list = field(default_factory=list)

    @property
    def violations(self) -> list:
        return [ln for ln in self.lines if not ln.passed]

    @property
    def ok(self) -> bool:
        return not self.violations

    def to_text(self) -> str:
        return "".join(ln.format() + "\n" for ln in self.lines)


def random_reduced_word(alphabet, length: int, rng: random.Random) -> Word:
    codes: list[int] = []
    n = 2 * len(alphabet)
    while len(codes) < length:
        c = rng.randrange(n)
        if codes and c == codes[-1] ^ 1:
            continue
        codes.append(c)
    return Word(alphabet, codes, reduced=True)


def corollary_samples(B, N: int, beta_length: int, count: int, seed: int = 0) -> list:
    """Deterministic (alpha, beta) pairs with |alpha| = N and alpha beta reduced."""
    rng = random.Random(seed)
    out = []
    for _ in range(count):
        w = random_reduced_word(B.alphabet, N + beta_length, rng)
        out.append((w[:N], w[N:]))
    return out


def corollary_check(G, B, N: int, M_target: int, samples: Iterable[tuple[Word, Word]],
                    metric: WordMetric | None = None, gamma_radius: int = 12,
                    budget: int = 5_000_000, threads: int = 1) -> CorollaryReport:
    if metric is None:
        metric = WordMetric(G, max_radius=gamma_radius, budget=budget)
    e = G.identity()
    samples = list(samples)
    for alpha, beta in samples:
        if len(alpha) < N:
            raise ContractError(f"alpha = {alpha} is shorter than N = {N}")
        if len((alpha * beta)) != len(alpha) + len(beta):
            raise ContractError(f"{alpha} {beta} is not reduced")

    def one(s):
        alpha, beta = s
        a = B.embed(alpha)
        return geodesics_min_distance_to(e, a, B.embed(alpha * beta), metric)

    report = CorollaryReport(N, M_target)
    for (alpha, beta), md in zip(samples, _map(one, samples, threads)):
        report.lines.append(CorollaryLine(alpha, beta, md, md >= M_target))
    return report


# Shadows --------------------------------------------------------------

@dataclass
class Shadow:
    segments: list   # each a list of fiber Words, endpoints included

    def __len__(self) -> int:
        return len(self.segments)

    @property
    def vertices(self) -> list:
        seen, out = set(), []
        for seg in self.segments:
            for v in seg:
                if v not in seen:
                    seen.add(v)
                    out.append(v)
        return out

    @property
    def min_distance(self) -> int | None:
        """Tree distance from e to the shadow (None for an empty shadow)."""
        if not self.segments:
            return None
        return min(len(v) for v in self.vertices)


def shadow(G: FcGroup, B, alpha: Word, beta: Word) -> Shadow:
    w = alpha * beta
    if len(w) != len(alpha) + len(beta):
        raise ContractError(f"{alpha} {beta} is not reduced")
    pts = [B.embed(alpha * beta[:i]).fiber for i in range(len(beta) + 1)]
    return Shadow([tree_geodesic(pts[i], pts[i + 1]) for i in range(len(beta))])


# Final a_r letter under theta^n ---------------------------------------

def _final_generator(G: FcGroup, B, w: Word) -> tuple[int, int]:
    """(r, sign) of the last letter of w, which must be (a_r t)^(+-1)."""
    if not w.codes:
        raise ContractError("empty word has no final generator")
    c = w.codes[-1]
    text = B.words[c >> 1].split()
    if len(text) != 2 or text[1] != G.stable_letter or not text[0].startswith("a"):
        raise ContractError(f"{w} does not end in an (a_r t)^(+-1) generator")
    return int(text[0][1:]), (-1 if c & 1 else 1)


def _class_codes(G: FcGroup, r: int) -> set[int]:
    alpha = G.fiber_alphabet
    names = [f"a{r}"]
    if r == 1 and "a0" in alpha:
        names.append("a0")
    out = set()
    for n in names:
        i = alpha.index(n)
        out.update((2 * i, 2 * i + 1))
    return out


def final_generator_position(G: FcGroup, B, w: Word, n: int) -> int:
    """1-based position in theta^n(w-hat) of the a_r letter coming from w's
    final generator (a0 or a1 when r = 1 and a0 exists)."""
    r, sign = _final_generator(G, B, w)
    cls = _class_codes(G, r)
    full = G.theta.power_apply(n, B.embed(w).fiber).codes
    if sign < 0:
        for i in range(len(full) - 1, -1, -1):
            if full[i] in cls:
                return i + 1
        raise ContractError(f"no a{r} letter in theta^{n} of the fiber of {w}")
    head = G.theta.power_apply(n, B.embed(w[:-1]).fiber).codes
    if full[:len(head)] != head:
        raise ContractError(f"theta^{n} of the fiber of {w[:-1]} is not a prefix for {w}")
    for i in range(len(head), len(full)):
        if full[i] in cls:
            return i + 1
    raise ContractError(f"no a{r} letter after the prefix for {w}")


@dataclass
class EmpiricalN:
    N: int | None
    r: int
    A: int
    B_bound: int
    search_bound: int
    min_position: dict   # |u| -> least position seen
    note: str = "validated on enumerated range only"


def empirical_N(G: FcGroup, B, r: int, A: int, B_bound: int, search_bound: int,
                budget: int = 2_000_000) -> EmpiricalN:
    """Least N <= search_bound with position >= A for every enumerated
    u (a_r t)^(+-1), N <= |u| <= search_bound, |n| <= B_bound."""
    target = f"a{r} {G.stable_letter}"
    try:
        gi = [" ".join(x.split()) for x in B.words].index(target)
    except ValueError:
        raise ContractError(f"basis has no generator {target!r}") from None
    mins: dict[int, int] = {}
    count = 0
    for u, _ in B.iter_words(search_bound, budget=budget):
        for c in (2 * gi, 2 * gi + 1):
            if u and u[-1] == c ^ 1:
                continue
            w = Word(B.alphabet, u + (c,), reduced=True)
            for n in range(-B_bound, B_bound + 1):
                count += 1
                if count > budget:
                    raise BudgetExceeded("empirical_N scan", count, budget)
                pos = final_generator_position(G, B, w, n)
                if pos < mins.get(len(u), pos + 1):
                    mins[len(u)] = pos
    found = None
    for N in range(search_bound, -1, -1):
        if all(mins[L] >= A for L in range(N, search_bound + 1)):
            found = N
        else:
            break
    return EmpiricalN(found, r, A, B_bound, search_bound, mins)
