from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from hydra_ct.cayley import (WordMetric, enumerate_ball, estimate_delta,
                             geodesic_dag, geodesics_min_distance_to, gromov_product,
                             inner_points, geodesic_audit)
from hydra_ct.errors import BudgetExceeded, CoverageError
from hydra_ct.free_by_cyclic import hydra_g
from hydra_ct.words import FreeGroup, gromov_product_tree, reduce, tree_geodesic

import oracles

F2 = FreeGroup(["a", "b"])
G2 = hydra_g(2)


def test_free_ball_sizes():
    b = enumerate_ball(F2, radius=4)
    assert b.sphere_sizes() == [1, 4, 12, 36, 108]
    assert len(b) == len(oracles.free_ball(["a", "b"], 4))


def test_free_ball_distances_are_lengths():
    b = enumerate_ball(F2, radius=3)
    assert all(d == len(g) for g, d in b.dist.items())


def test_g2_first_spheres():
    b = enumerate_ball(G2, radius=2)
    assert b.sphere_sizes()[:2] == [1, 6]


def test_dump_sorted_and_stable():
    d1 = enumerate_ball(G2, radius=3).dump()
    d2 = enumerate_ball(G2, radius=3).dump()
    assert d1 == d2
    keys = [(int(x.split(" ", 1)[0]), x.split(" ", 1)[1]) for x in d1]
    assert keys == sorted(keys)
    assert d1[0] == "0 e | 0"


def test_parents_are_geodesic_predecessors():
    b = enumerate_ball(G2, radius=3)
    for g, preds in b.parents.items():
        for p, i in preds:
            assert b.dist[p] == b.dist[g] - 1
            assert G2.multiply(p, b.generators[i]) == g


def test_budget():
    with pytest.raises(BudgetExceeded):
        enumerate_ball(G2, radius=6, budget=1000)


def test_metric_coverage_error():
    m = WordMetric(G2, max_radius=2)
    with pytest.raises(CoverageError):
        m.length(G2.parse("a1 a2 a1 | 2"))


def test_geodesic_dag_in_tree_is_path():
    m = WordMetric(F2)
    x, y = F2.parse("a b"), F2.parse("a b^-1 a")
    dag = geodesic_dag(x, y, m)
    assert [len(layer) for layer in dag.layers] == [1, 1, 1, 1]
    assert geodesics_min_distance_to(F2.identity(), x, y, m) == 1


def test_tree_exactness_radius_3():
    b = enumerate_ball(F2, radius=3)
    m = WordMetric(F2)
    pts = b.elements()
    e = F2.identity()
    for x in pts[:40]:
        for y in pts:
            gp = gromov_product(x, y, e, m)
            assert gp == gromov_product_tree(x, y)
            assert gp == geodesics_min_distance_to(e, x, y, m)


def test_delta_free_group_zero(backend):
    b = enumerate_ball(F2, radius=4)
    est = estimate_delta(b)
    assert est.exhaustive and est.value == 0


def test_delta_matches_brute_on_g2(backend):
    b = enumerate_ball(G2, radius=4, track_parents=False)
    est = estimate_delta(b)
    pts = inner_points(b)
    m = WordMetric.from_index(b)
    assert est.value == oracles.brute_delta(m.distance, pts)


def test_sampled_delta_is_lower_bound(backend):
    b = enumerate_ball(G2, radius=4, track_parents=False)
    full = estimate_delta(b)
    s1 = estimate_delta(b, exhaustive=False, samples=500, seed=3)
    s2 = estimate_delta(b, exhaustive=False, samples=500, seed=3)
    assert s1 == s2
    assert s1.value <= full.value and not s1.exhaustive


def test_geodesic_audit_free_group():
    b = enumerate_ball(F2, radius=4)
    rep = geodesic_audit(b, 0)
    assert rep.ok and rep.max_defect == 0 and not rep.skipped


def test_geodesic_audit_threads_same_result():
    b = enumerate_ball(G2, radius=4, track_parents=False)
    r1 = geodesic_audit(b, 2)
    r4 = geodesic_audit(b, 2, threads=4)
    assert [(r.a, r.b, r.min_dist) for r in r1.rows] == [(r.a, r.b, r.min_dist) for r in r4.rows]
    assert len(r1.skipped) == len(r4.skipped)


def test_gromov_product_is_fraction():
    m = WordMetric(F2)
    assert isinstance(gromov_product(F2.parse("a"), F2.parse("b"), F2.identity(), m), Fraction)


def test_free_rank3_sphere_sizes():
    F3 = FreeGroup(["a", "b", "c"])
    sizes = enumerate_ball(F3, radius=4, track_parents=False).sphere_sizes()
    assert sizes == [1] + [6 * 5 ** (n - 1) for n in range(1, 5)]


def test_triangle_inequality_sampled():
    import random
    b = enumerate_ball(G2, radius=6, track_parents=False)
    m = WordMetric.from_index(b)
    pts = inner_points(b)
    rng = random.Random(0)
    for _ in range(500):
        x, y, z = (rng.choice(pts) for _ in range(3))
        assert m.distance(x, z) <= m.distance(x, y) + m.distance(y, z)
        assert m.distance(x, y) == m.distance(y, x)


tree_words = st.lists(st.integers(0, 3), max_size=5).map(lambda c: reduce(F2.alphabet, c))
TREE_METRIC = WordMetric(F2)


@settings(max_examples=60, deadline=None)
@given(tree_words, tree_words)
def test_tree_dag_is_the_geodesic(x, y):
    dag = geodesic_dag(x, y, TREE_METRIC)
    assert len(dag) == len(~x * y) + 1
    assert dag.vertices == tree_geodesic(x, y)
