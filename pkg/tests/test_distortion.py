import pytest
from hypothesis import given, settings, strategies as st

from hydra_ct.cayley import enumerate_ball
from hydra_ct.distortion import (Seed, ackermann, distortion_table, h2_lambda_word,
                                 h2_seed_family, h2_seeds, max_distortion_witness,
                                 subgroup_length_index)
from hydra_ct.errors import BudgetExceeded, ContractError
from hydra_ct.free_by_cyclic import SubgroupBasis, hydra_g, hydra_h_basis
from hydra_ct.words import FreeGroup, Word

import oracles

F2 = FreeGroup(["a", "b"])
G2 = hydra_g(2)
H2 = hydra_h_basis(G2)


def test_ackermann_values():
    assert ackermann(1, 5) == 10
    assert ackermann(2, 4) == 16
    assert ackermann(3, 3) == 16
    assert [ackermann(2, n) for n in range(21)] == [2 ** n for n in range(21)]
    assert ackermann(3, 4) == 2 ** 16
    assert ackermann(4, 2) == 4


def test_ackermann_budget():
    with pytest.raises(BudgetExceeded):
        ackermann(3, 6)
    with pytest.raises(ValueError):
        ackermann(0, 1)


@given(st.integers(1, 3), st.integers(0, 4))
def test_ackermann_monotone(k, n):
    assert ackermann(k, n + 1) > ackermann(k, n)
    if n >= 3 and k < 3:
        assert ackermann(k + 1, n) > ackermann(k, n)


def test_length_index_examples():
    assert dict(subgroup_length_index(G2, H2, 0).lengths) == {G2.identity(): 0}
    idx = subgroup_length_index(G2, H2, 2)
    assert idx.lengths[G2.parse("a2 a1 | 2")] == 2
    cyc = SubgroupBasis(F2, ["a"])
    idx = subgroup_length_index(F2, cyc, 3)
    assert sorted(str(w) for w in idx.lengths) == sorted(
        ["", "a", "a^2", "a^3", "a^-1", "a^-2", "a^-3"])


def test_identity_table_exact():
    t = distortion_table(F2, SubgroupBasis(F2, ["a", "b"]), 6, 6)
    assert [r.dist_lb for r in t.rows] == list(range(7))
    assert all(r.saturated for r in t.rows)


def test_cyclic_table_exact():
    t = distortion_table(F2, SubgroupBasis(F2, ["a"]), 6, 6)
    assert [r.dist_lb for r in t.rows] == list(range(7))
    assert all(r.saturated for r in t.rows)
    w, lw = max_distortion_witness(t, 4)
    assert str(lw) in ("x1^4", "a^4", "x1^-4", "a^-4")
    assert max_distortion_witness(t, 0)[0] == F2.identity()


def test_table_monotone_in_n_and_R():
    t1 = distortion_table(G2, H2, 6, 5)
    t2 = distortion_table(G2, H2, 6, 7)
    for a, b in zip(t1.rows, t1.rows[1:]):
        assert a.dist_lb <= b.dist_lb
    for a, b in zip(t1.rows, t2.rows):
        assert a.dist_lb <= b.dist_lb
    assert not any(r.saturated for r in t1.rows)
    assert "certified lower bound" in t1.summary()


def test_witnesses_reverify():
    t = distortion_table(G2, H2, 6, 7)
    ball = enumerate_ball(G2, radius=6, track_parents=False)
    for r in t.rows:
        assert H2.embed(r.lambda_word) == r.witness
        assert len(r.lambda_word) == r.dist_lb
        assert ball.dist[r.witness] <= r.n


def test_csv_header_and_determinism():
    a = distortion_table(G2, H2, 4, 4).to_csv()
    b = distortion_table(G2, H2, 4, 4).to_csv()
    assert a == b and a.startswith("n,dist_lb,saturated,witness\n")


@settings(max_examples=60, deadline=None)
@given(st.lists(st.integers(0, 3), max_size=9))
def test_h2_solver_matches_embedding(codes):
    w = Word(H2.alphabet, codes)
    assert h2_lambda_word(G2, H2, H2.embed(w)) == w


def test_h2_solver_non_members():
    assert h2_lambda_word(G2, H2, G2.parse("a2 | 0")) is None
    assert h2_lambda_word(G2, H2, G2.parse("e | 1")) is None
    assert h2_lambda_word(G2, H2, G2.parse("a1 a2 | 0")) is None


@pytest.mark.parametrize("text", ["a1 a2^-1 | 0", "a1^-1 a2^2 | -1", "a2 a1 | 2"])
def test_h2_solver_against_search(text):
    g = G2.parse(text)
    w = h2_lambda_word(G2, H2, g)
    fiber, exp = text.split(" | ")
    assert oracles.h2_length_by_search(fiber, int(exp), 5) == len(w)


def test_h2_solver_shape_check():
    with pytest.raises(ContractError):
        h2_lambda_word(G2, SubgroupBasis(G2, ["a1 t"]), G2.identity())


def test_seed_family_lengths():
    for p in range(1, 7):
        text = h2_seed_family(p)
        g = G2.normal_form(text)
        assert len(G2.mixed_alphabet.parse(text)) == 2 * p + 7
        assert len(h2_lambda_word(G2, H2, g)) == 2 ** (p + 2) + 2


def test_seeded_table_reaches_twice_n():
    t = distortion_table(G2, H2, 13, 6, gamma_radius=7, seeds=h2_seeds(G2, H2, 13))
    row = t.rows[13]
    assert row.dist_lb >= 26 and row.gamma_word is not None
    assert H2.embed(row.lambda_word) == row.witness
    assert G2.normal_form(row.gamma_word) == row.witness


def test_bad_seed_rejected():
    w = H2.parse("a1t")
    with pytest.raises(ContractError):
        distortion_table(G2, H2, 3, 2, seeds=[Seed("a2", w)])


def test_exact_membership_saturates():
    t = distortion_table(G2, H2, 6, 3, membership=lambda g: h2_lambda_word(G2, H2, g))
    assert all(r.saturated for r in t.rows)
    assert [r.dist_lb for r in t.rows] == [0, 0, 2, 3, 5, 7, 9]
