"""The wildness experiment: deep proxies for boundary points, translated
Gromov products, visual-metric bounds and the Ackermann modulus profile.

Lambda-side products are computed exactly in the tree of the abstract
free group on the basis (delta_Lambda = 0).  Gamma-side quantities use
enumerated distances and the empirical delta-hat, and are labelled as
upper bounds.  Logs are kept exact where they can be: with k1 = k2 = 1
the columns ``delta_in_log`` (base r) and ``eps_lb_log`` (base s) are
integers or half-integers.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import NamedTuple, Sequence

from . import kernels
from .cayley import WordMetric, geodesics_min_distance_to
from .distortion import ackermann
from .errors import (BudgetExceeded, ConfigError, CoverageError, HypothesisError,
                     StabilizationError)
from .words import Word

# |exponent| beyond which visual bounds switch to log form
LOG_THRESHOLD = 10_000
# floor(C1 log(1/eta)) snaps to an integer this close
SNAP = 1e-9


@dataclass(frozen=True)
class BoundaryProxy:
    word: Word

    @property
    def depth(self) -> int:
        return len(self.word)

    def truncate(self, depth: int) -> Word:
        return self.word[:depth]


def make_proxies(B, depth: int) -> list[BoundaryProxy]:
    """g1^d, g2^d, g3^d, or (g1 g2)^d as the third when the basis has two."""
    if depth < 1:
        raise ConfigError(f"proxy depth must be positive, got {depth}")
    n = len(B.alphabet)
    if n < 2:
        raise HypothesisError(
            "Lambda must be non-elementary: a basis of rank < 2 gives no three distinct proxies")
    a = B.alphabet
    g = [a.generator(name) for name in a.names[:3]]
    if n == 2:
        g.append(g[0] * g[1])
    return [BoundaryProxy(x ** depth) for x in g]


class LogValue(NamedTuple):
    """coeff * base ** exponent, kept symbolic."""
    coeff: Fraction
    base: Fraction
    exponent: Fraction

    def __str__(self) -> str:
        return f"{self.coeff}*{self.base}^({self.exponent})"


@dataclass(frozen=True)
class VisualParams:
    r: Fraction = Fraction(2)
    s: Fraction = Fraction(2)
    k1: Fraction = Fraction(1)
    k2: Fraction = Fraction(1)

    def __post_init__(self):
        for name in ("r", "s", "k1", "k2"):
            object.__setattr__(self, name, Fraction(str(getattr(self, name))))
        if self.r <= 1 or self.s <= 1:
            raise ConfigError(f"visual parameters need r, s > 1 (got r={self.r}, s={self.s})")
        if self.k1 <= 0 or self.k1 > self.k2:
            raise ConfigError(f"need 0 < k1 <= k2 (got k1={self.k1}, k2={self.k2})")


def _power(coeff: Fraction, base: Fraction, exponent: Fraction):
    if abs(exponent) > LOG_THRESHOLD:
        return LogValue(coeff, base, exponent)
    if exponent.denominator == 1:
        return coeff * base ** int(exponent)
    return float(coeff) * float(base) ** float(exponent)


def visual_bounds(product, params: VisualParams = VisualParams()):
    """(k1 r^-p, k2 r^-p); exact Fractions for integer p, floats for
    half-integers, LogValue when |p| is too large to expand."""
    p = Fraction(product)
    return (_power(params.k1, params.r, -p), _power(params.k2, params.r, -p))


def _log(x: Fraction, base: Fraction):
    """log_base(x), exact when x = 1 or x is an integer power of base."""
    if x == 1:
        return Fraction(0)
    v = math.log(x) / math.log(base)
    if abs(v - round(v)) < SNAP and base ** round(v) == x:
        return Fraction(round(v))
    return v


@dataclass
class WildnessRow:
    n: int
    dist_lb: int
    i: int
    j: int
    lambda_product: int
    C: int
    slack: int                     # lambda_product - (dist_lb - C), must be >= 0
    side_products: tuple           # (e . h p_i)_h, (e . h p_j)_h
    gamma_product_ub: Fraction | None
    delta_in_log: object           # log_r of beta / r^dist_lb
    eps_lb_log: object             # log_s of alpha / s^n, None if uncovered

    @property
    def holds(self) -> bool:
        return self.slack >= 0 and max(self.side_products) <= self.C


@dataclass
class WildnessReport:
    rows: list
    C: int
    depth: int
    delta_hat: Fraction
    params: VisualParams
    gamma_depth: int
    notes: list = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return all(r.holds for r in self.rows)

    def to_csv(self) -> str:
        lines = ["n,dist_lb,i,j,lambda_product,gamma_product_ub,delta_in_log,eps_lb_log"]
        for r in self.rows:
            lines.append(",".join(_cell(x) for x in (
                r.n, r.dist_lb, r.i, r.j, r.lambda_product, r.gamma_product_ub,
                r.delta_in_log, r.eps_lb_log)))
        return "\n".join(lines) + "\n"

    def ratio_violations(self) -> list[int]:
        """n where eps_lb/delta_in drops although dist_lb jumped by at
        least log_r(s) + 1 from n-1."""
        jump = math.log(self.params.s) / math.log(self.params.r) + 1
        lr, ls = math.log(self.params.r), math.log(self.params.s)
        bad = []
        for prev, cur in zip(self.rows, self.rows[1:]):
            if cur.dist_lb - prev.dist_lb < jump:
                continue
            if prev.eps_lb_log is None or cur.eps_lb_log is None:
                continue
            before = float(prev.eps_lb_log) * ls - float(prev.delta_in_log) * lr
            after = float(cur.eps_lb_log) * ls - float(cur.delta_in_log) * lr
            if after < before - 1e-9:
                bad.append(cur.n)
        return bad


def _cell(x) -> str:
    if x is None:
        return "none"
    if isinstance(x, Fraction):
        return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"
    if isinstance(x, float):
        return repr(round(x, 12))
    return str(x)


def _cp(u: tuple, v: tuple) -> int:
    return kernels.common_prefix(u, v)


def wildness_experiment(G, B, rows, proxies: Sequence[BoundaryProxy],
                        params: VisualParams = VisualParams(), delta_hat=0,
                        gamma_depth: int = 2, metric: WordMetric | None = None,
                        gamma_radius: int = 10) -> WildnessReport:
    """Run the Lambda-side chain exactly and bound the Gamma side.

    ``rows`` is a DistortionTable or any list of objects with ``n``,
    ``dist_lb`` and ``lambda_word``.
    """
    rows = list(getattr(rows, "rows", rows))
    if len(proxies) < 3:
        raise HypothesisError("Lambda must be non-elementary: need three proxies")
    images = {B.embed(p.word) for p in proxies}
    if len(images) < len(proxies):
        raise HypothesisError("Lambda must be non-elementary: proxies have equal images")
    delta_hat = Fraction(delta_hat)
    words = [p.word.codes for p in proxies]
    C = max(_cp(words[a], words[b]) for a in range(len(words)) for b in range(a + 1, len(words)))
    depth = min(p.depth for p in proxies)
    top = max((r.dist_lb for r in rows), default=0)
    if depth <= top + C:
        raise StabilizationError(
            f"proxy depth {depth} must exceed dist_lb + C = {top + C} for products to stabilize")

    if metric is None:
        metric = WordMetric(G, max_radius=gamma_radius)
    e = G.identity()
    gamma_cache: dict = {}

    def gamma_segment(i: int, j: int):
        key = (i, j)
        if key not in gamma_cache:
            try:
                a = B.embed(proxies[i].truncate(gamma_depth))
                b = B.embed(proxies[j].truncate(gamma_depth))
                gamma_cache[key] = geodesics_min_distance_to(e, a, b, metric)
            except CoverageError:
                gamma_cache[key] = None
        return gamma_cache[key]

    out = []
    log_k2 = _log(params.k2, params.r)
    log_k1 = _log(params.k1, params.s)
    for row in rows:
        h = row.lambda_word
        hinv = kernels.invert_codes(h.codes)
        side = [_cp(hinv, w) for w in words]
        i, j = sorted(sorted(range(len(words)), key=lambda k: (side[k], k))[:2])
        hp_i = kernels.concat_reduce(h.codes, words[i])
        hp_j = kernels.concat_reduce(h.codes, words[j])
        lam = _cp(hp_i, hp_j)
        seg = gamma_segment(i, j)
        gub = None if seg is None else row.n + seg + 8 * delta_hat
        d_log = log_k2 + C - row.dist_lb
        e_log = None if gub is None else log_k1 - gub
        out.append(WildnessRow(
            n=row.n, dist_lb=row.dist_lb, i=i + 1, j=j + 1, lambda_product=lam, C=C,
            slack=lam - (row.dist_lb - C), side_products=(side[i], side[j]),
            gamma_product_ub=gub, delta_in_log=d_log, eps_lb_log=e_log,
        ))
    report = WildnessReport(out, C, depth, delta_hat, params, gamma_depth)
    report.notes.append(
        f"Gamma side uses proxy segments truncated at depth {gamma_depth} and delta-hat "
        f"{delta_hat}; these stand in for bi-infinite geodesics")
    return report


# Ackermann modulus profile ---------------------------------------------

@dataclass
class ProfileRow:
    eta: float
    m: int
    delta: object   # exact exponent -A_k(m) as int, or a placeholder string

    def delta_text(self, C2) -> str:
        if isinstance(self.delta, int):
            return f"{C2}^{self.delta}"
        return self.delta


def _snap_floor(x: float) -> int:
    r = round(x)
    return r if abs(x - r) < SNAP else math.floor(x)


def modulus_profile(k: int, C0, C1, C2, etas: Sequence[float],
                    max_bits: int | None = None) -> list[ProfileRow]:
    """Rows (eta, m, log_C2 delta) with m = floor(C1 log(1/eta)) and
    delta = C2^-A_k(m).  Ackermann overflow leaves the expression."""
    C0, C1, C2 = float(C0), float(C1), float(C2)
    if k < 2:
        raise ConfigError(f"profile needs k >= 2, got {k}")
    if not 0 < C0 < 1 or C1 <= 0 or C2 <= 1:
        raise ConfigError("profile needs 0 < C0 < 1, C1 > 0, C2 > 1")
    kw = {} if max_bits is None else {"max_bits": max_bits}
    rows = []
    for eta in etas:
        eta = float(eta)
        if not 0 < eta < C0:
            raise ConfigError(f"eta = {eta} is outside (0, {C0})")
        m = _snap_floor(C1 * math.log(1 / eta))
        try:
            delta = -ackermann(k, m, **kw)
        except BudgetExceeded:
            delta = f"{C2}^-A_{k}({m})"
        rows.append(ProfileRow(eta, m, delta))
    return rows


def profile_csv(rows: Sequence[ProfileRow], C2) -> str:
    lines = ["eta,m,delta"]
    for r in rows:
        lines.append(f"{r.eta!r},{r.m},{r.delta_text(C2)}")
    return "\n".join(lines) + "\n"
