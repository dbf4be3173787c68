"""Balls, geodesics and four-point hyperbolicity in a Cayley graph.

Works for any group object exposing ``identity``, ``multiply``,
``invert``, ``generators`` and ``format_element`` (``FreeGroup`` and
``FcGroup`` both do).  Edges join ``g`` to ``g * s``; the word metric is
left-invariant, so ``d(x, y)`` is read off a ball about the identity as
the length of ``x^-1 y``.
"""
from __future__ import annotations

import random
import threading
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

import numpy as np

from . import kernels
from .errors import BudgetExceeded, CoverageError

DEFAULT_BALL_BUDGET = 5_000_000
# C(n, 4) quadruples: ~1e9 at n = 400
EXHAUSTIVE_CAP = 400


def closed_generators(group, generators=None) -> list:
    gens = list(group.generators() if generators is None else generators)
    out: list = []
    for g in gens:
        for h in (g, group.invert(g)):
            if h not in out and h != group.identity():
                out.append(h)
    return out


class BallIndex:
    """Breadth-first ball about ``center`` with exact word-metric distances.

    ``spheres[r]`` lists the elements at distance ``r`` in discovery order
    (generators in declared order, FIFO frontier), so every report built
    from an index is reproducible.
    """

    def __init__(self, group, generators=None, center=None,
                 budget: int = DEFAULT_BALL_BUDGET, track_parents: bool = True):
        self.group = group
        self.generators = closed_generators(group, generators)
        self.center = group.identity() if center is None else center
        self.budget = budget
        self.track_parents = track_parents
        self.dist = {self.center: 0}
        self.parents: dict = {self.center: []} if track_parents else {}
        self.spheres = [[self.center]]
        self._lock = threading.Lock()

    @property
    def radius(self) -> int:
        return len(self.spheres) - 1

    def __len__(self) -> int:
        return len(self.dist)

    def __contains__(self, g) -> bool:
        return g in self.dist

    def grow(self) -> None:
        r = len(self.spheres)
        mul = self.group.multiply
        dist = self.dist
        parents = self.parents if self.track_parents else None
        gens = list(enumerate(self.generators))
        new = []
        for g in self.spheres[-1]:
            for i, s in gens:
                h = mul(g, s)
                d = dist.get(h)
                if d is None:
                    dist[h] = r
                    new.append(h)
                    if parents is not None:
                        parents[h] = [(g, i)]
                elif d == r and parents is not None:
                    parents[h].append((g, i))
            if len(dist) > self.budget:
                raise BudgetExceeded(f"ball of radius {r}", len(dist), self.budget)
        self.spheres.append(new)

    def grow_to(self, radius: int) -> "BallIndex":
        while self.radius < radius:
            self.grow()
        return self

    def elements(self, max_distance: int | None = None) -> list:
        top = self.radius if max_distance is None else min(max_distance, self.radius)
        return [g for r in range(top + 1) for g in self.spheres[r]]

    def sphere_sizes(self) -> list[int]:
        return [len(s) for s in self.spheres]

    def dump(self) -> list[str]:
        fmt = self.group.format_element
        rows = sorted((d, fmt(g)) for g, d in self.dist.items())
        return [f"{d} {s}" for d, s in rows]


def enumerate_ball(group, generators=None, radius: int = 0, budget: int = DEFAULT_BALL_BUDGET,
                   center=None, track_parents: bool = True) -> BallIndex:
    return BallIndex(group, generators, center, budget, track_parents).grow_to(radius)


class WordMetric:
    """Distances in a group, backed by a growing ball about the identity.

    With ``exact=True`` and the group's own generating set, a group that
    knows its word length (a free group) answers directly.
    """

    def __init__(self, group, generators=None, max_radius: int | None = None,
                 budget: int = DEFAULT_BALL_BUDGET, exact: bool = True,
                 index: BallIndex | None = None):
        self.group = group
        self._exact = group.exact_length if (
            exact and generators is None and hasattr(group, "exact_length")) else None
        if index is None:
            index = BallIndex(group, generators, budget=budget, track_parents=False)
        elif index.center != group.identity():
            raise ValueError("WordMetric needs a ball about the identity")
        self.index = index
        self.generators = index.generators
        self.max_radius = index.radius if max_radius is None and index.radius > 0 else max_radius
        self._lock = threading.Lock()

    @classmethod
    def from_index(cls, index: BallIndex) -> "WordMetric":
        """A metric frozen to an enumerated ball (never grows)."""
        m = cls(index.group, index.generators, index=index, exact=False)
        m.max_radius = index.radius
        return m

    def length(self, g) -> int:
        if self._exact is not None:
            return self._exact(g)
        d = self.index.dist.get(g)
        if d is not None:
            return d
        with self._lock:
            while True:
                d = self.index.dist.get(g)
                if d is not None:
                    return d
                if self.max_radius is not None and self.index.radius >= self.max_radius:
                    raise CoverageError(
                        f"{self.group.format_element(g)} lies outside the ball of radius "
                        f"{self.index.radius}", [g])
                self.index.grow()

    def distance(self, x, y) -> int:
        return self.length(self.group.multiply(self.group.invert(x), y))


@dataclass
class GeodesicDag:
    x: object
    y: object
    layers: list

    @property
    def vertices(self) -> list:
        return [v for layer in self.layers for v in layer]

    def __len__(self) -> int:
        return sum(len(layer) for layer in self.layers)


def geodesic_dag(x, y, metric: WordMetric) -> GeodesicDag:
    """All vertices on some geodesic from x to y, layered by distance from x."""
    group = metric.group
    D = metric.distance(x, y)
    layers = [[x]]
    for i in range(1, D + 1):
        want = D - i
        nxt: list = []
        seen = set()
        for v in layers[-1]:
            for s in metric.generators:
                w = group.multiply(v, s)
                if w in seen:
                    continue
                try:
                    hit = metric.distance(w, y) == want
                except CoverageError:
                    # beyond the ball means farther than want < D
                    hit = False
                if hit:
                    seen.add(w)
                    nxt.append(w)
        layers.append(nxt)
    return GeodesicDag(x, y, layers)


def geodesics_min_distance_to(base, x, y, metric: WordMetric) -> int:
    """min over all geodesics [x, y] of d(base, geodesic)."""
    dag = geodesic_dag(x, y, metric)
    return min(metric.distance(base, v) for v in dag.vertices)


def gromov_product(x, y, base, metric: WordMetric) -> Fraction:
    d_x = metric.distance(base, x)
    d_y = metric.distance(base, y)
    return Fraction(d_x + d_y - metric.distance(x, y), 2)


@dataclass
class DeltaEstimate:
    value: Fraction
    witness: tuple
    points: int
    quadruples: int
    exhaustive: bool
    seed: int | None = None


def inner_points(index: BallIndex) -> list:
    """Elements within half the radius: their pairwise distances are all indexed."""
    return index.elements(index.radius // 2)


def distance_matrix(index: BallIndex, points: Sequence) -> np.ndarray:
    g = index.group
    c = index.center
    n = len(points)
    d = np.zeros((n, n), dtype=np.int64)
    inv = [g.invert(p) for p in points]
    dist = index.dist
    for i in range(n):
        for j in range(i + 1, n):
            key = g.multiply(c, g.multiply(inv[i], points[j]))
            dij = dist.get(key)
            if dij is None:
                raise CoverageError("pair distance not covered by the ball", [points[i], points[j]])
            d[i, j] = d[j, i] = dij
    return d


def estimate_delta(index: BallIndex, exhaustive: bool | None = None, samples: int = 100_000,
                   seed: int = 0, cap: int = EXHAUSTIVE_CAP) -> DeltaEstimate:
    """Largest four-point defect among points of the inner half-radius ball.

    Any subset of quadruples gives a lower bound for the delta of the
    whole group; the exhaustive scan covers every 4-subset.
    """
    points = inner_points(index)
    n = len(points)
    d = distance_matrix(index, points)
    if exhaustive is None:
        exhaustive = n <= cap
    if n < 4:
        return DeltaEstimate(Fraction(0), (), n, 0, True)
    if exhaustive:
        gap, quad = kernels.four_point_max(d)
        count = n * (n - 1) * (n - 2) * (n - 3) // 24
        return DeltaEstimate(Fraction(gap, 2), tuple(points[q] for q in quad), n, count, True)
    rng = random.Random(seed)
    best, arg = -1, None
    for _ in range(samples):
        q = sorted(rng.sample(range(n), 4))
        gap = kernels.quad_gap(d, *q)
        if gap > best:
            best, arg = gap, q
    return DeltaEstimate(Fraction(best, 2), tuple(points[q] for q in arg), n, samples, False, seed)


@dataclass
class AuditRow:
    a: object
    b: object
    distance: int
    gromov: Fraction
    min_dist: int
    defect: Fraction


@dataclass
class GeodesicAuditReport:
    delta: Fraction
    slack: Fraction
    rows: list = field(default_factory=list)
    violations: list = field(default_factory=list)
    skipped: list = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.violations

    @property
    def max_defect(self) -> Fraction:
        return max((r.defect for r in self.rows), default=Fraction(0))


def geodesic_audit(index: BallIndex, delta, pairs=None, slack=0, threads: int = 1) -> GeodesicAuditReport:
    """Check |d(e, [a,b]) - (a.b)_e| <= 6 delta over all geodesics [a,b].

    Pairs default to all unordered pairs of the inner half-radius ball.
    Pairs whose geodesic DAG leaves the ball are listed in ``skipped``.
    """
    delta = Fraction(delta)
    slack = Fraction(slack)
    metric = WordMetric.from_index(index)
    base = index.center
    if pairs is None:
        pts = inner_points(index)
        pairs = [(pts[i], pts[j]) for i in range(len(pts)) for j in range(i, len(pts))]
    bound = 6 * delta + slack

    def one(pair):
        a, b = pair
        try:
            md = geodesics_min_distance_to(base, a, b, metric)
            gp = gromov_product(a, b, base, metric)
            dist = metric.distance(a, b)
        except CoverageError:
            return pair, None
        return pair, AuditRow(a, b, dist, gp, md, abs(md - gp))

    if threads > 1:
        from concurrent.futures import ThreadPoolExecutor
        with ThreadPoolExecutor(threads) as pool:
            results = list(pool.map(one, pairs))
    else:
        results = [one(p) for p in pairs]
    report = GeodesicAuditReport(delta, slack)
    for pair, row in results:
        if row is None:
            report.skipped.append(pair)
            continue
        report.rows.append(row)
        if row.defect > bound:
            report.violations.append(row)
    return report


def four_point_defect(d, quad) -> Fraction:
    return Fraction(kernels.quad_gap(d, *quad), 2)

