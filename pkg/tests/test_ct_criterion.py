from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from hydra_ct.cayley import enumerate_ball, estimate_delta
from hydra_ct.ct_criterion import (branching_pairs, corollary_check, corollary_samples,
                                   empirical_N, final_generator_position, mitra_profiles,
                                   shadow)
from hydra_ct.errors import ContractError, CoverageError
from hydra_ct.free_by_cyclic import SubgroupBasis, hydra_g, hydra_h_basis
from hydra_ct.words import FreeGroup, Word, tree_geodesic

F2 = FreeGroup(["a", "b"])
G2 = hydra_g(2)
H2 = hydra_h_basis(G2)


def test_branching_pairs_have_product_level():
    for x, y in branching_pairs(SubgroupBasis(F2, ["a", "b"]), 2):
        p = 0
        while p < min(len(x), len(y)) and x[p] == y[p]:
            p += 1
        assert len(x) - p <= 1 and len(y) - p <= 1


def test_identity_profile():
    prof = mitra_profiles(F2, SubgroupBasis(F2, ["a", "b"]), 4)
    for r in prof.rows:
        assert r.M == r.N and r.M_prime == r.N and r.M_dprime == r.N
    assert prof.to_csv().splitlines()[0] == "N,M,M_prime,M_dprime"


def test_hydra_profile_small():
    prof = mitra_profiles(G2, H2, 2, gamma_radius=7)
    assert prof.is_monotone()
    assert [r.M for r in prof.rows] == [0, 1, Fraction(3, 2)]
    assert [r.M_prime for r in prof.rows] == [0, 1, 2]


def test_hydra_profile_M_vs_M_prime():
    # in a delta-hyperbolic space the two differ by at most a multiple of delta
    delta = estimate_delta(enumerate_ball(G2, radius=4, track_parents=False)).value
    prof = mitra_profiles(G2, H2, 2, gamma_radius=7)
    for r in prof.rows:
        assert abs(r.M - r.M_prime) <= 6 * delta


def test_profile_coverage():
    with pytest.raises(CoverageError):
        mitra_profiles(G2, H2, 3, gamma_radius=4)


def test_profile_radius_contract():
    with pytest.raises(ContractError):
        mitra_profiles(F2, SubgroupBasis(F2, ["a"]), 3, lambda_radius=2)


def test_corollary_deterministic_and_format():
    s1 = corollary_samples(H2, 2, 2, 5, seed=7)
    s2 = corollary_samples(H2, 2, 2, 5, seed=7)
    assert [(str(a), str(b)) for a, b in s1] == [(str(a), str(b)) for a, b in s2]
    rep = corollary_check(G2, H2, 2, 0, s1, gamma_radius=9)
    assert rep.ok
    for line in rep.to_text().splitlines():
        word, d, verdict = line.split(", ")
        assert verdict == "pass" and int(d) >= 0


def test_corollary_identity_exact():
    B = SubgroupBasis(F2, ["a", "b"])
    rep = corollary_check(F2, B, 3, 3, corollary_samples(B, 3, 2, 20, seed=1))
    assert rep.ok and all(ln.min_dist == 3 for ln in rep.lines)


def test_corollary_rejects_unreduced():
    a, b = H2.parse("a1t"), H2.parse("a1t^-1")
    with pytest.raises(ContractError):
        corollary_check(G2, H2, 1, 0, [(a, b)])


words_h2 = st.lists(st.integers(0, 3), max_size=5).map(lambda c: Word(H2.alphabet, c))


@settings(max_examples=40, deadline=None)
@given(words_h2, words_h2)
def test_shadow_connects_and_covers(alpha, beta):
    w = alpha * beta
    if len(w) != len(alpha) + len(beta):
        with pytest.raises(ContractError):
            shadow(G2, H2, alpha, beta)
        return
    sh = shadow(G2, H2, alpha, beta)
    assert len(sh) == len(beta)
    for s1, s2 in zip(sh.segments, sh.segments[1:]):
        assert s1[-1] == s2[0]
    if sh.segments:
        start, end = sh.segments[0][0], sh.segments[-1][-1]
        assert set(tree_geodesic(start, end)) <= set(sh.vertices)
        assert start == H2.embed(alpha).fiber and end == H2.embed(w).fiber


def test_final_generator_examples():
    w = H2.parse("a2t")
    assert final_generator_position(G2, H2, w, 0) == 1
    # (a2 t)^-1 = t^-1 a2^-1 has fiber a1 a2^-1 after normal form
    wi = H2.parse("a2t^-1")
    assert final_generator_position(G2, H2, wi, 0) == len(H2.embed(wi).fiber)
    with pytest.raises(ContractError):
        final_generator_position(G2, H2, Word(H2.alphabet, []), 0)


def test_final_generator_requires_shape():
    B = SubgroupBasis(G2, ["a1", "a2 t"])
    with pytest.raises(ContractError):
        final_generator_position(G2, B, B.parse("a1"), 0)


def test_empirical_N():
    assert empirical_N(G2, H2, 2, 0, 1, 3).N == 0
    assert empirical_N(G2, H2, 2, 1, 1, 3).N == 0
    res = empirical_N(G2, H2, 2, 3, 1, 4)
    assert res.N == 4 and res.note == "validated on enumerated range only"
    assert all(res.min_position[L] >= 1 for L in res.min_position)
