import pytest
from fractions import Fraction
from hypothesis import given, strategies as st

from hydra_ct.errors import AlphabetMismatch, ParseError
from hydra_ct.words import (Alphabet, FreeGroup, Letter, gromov_product_formula,
                            gromov_product_tree, reduce, serialize, tree_geodesic)

import oracles

AB = Alphabet(["a", "b"])
letters = st.lists(st.tuples(st.sampled_from(["a", "b"]), st.sampled_from([1, -1])), max_size=16)


def test_reduce_examples():
    assert serialize(reduce(AB, "a a^-1 b")) == "b"
    assert serialize(reduce(AB, "a b b^-1 a^-1")) == ""
    assert serialize(AB.parse("a a b^-1 b^-1 b^-1")) == "a^2 b^-3"
    assert serialize(AB.parse("a^0 b")) == "b"


def test_parse_errors():
    with pytest.raises(AlphabetMismatch):
        AB.parse("a c")
    with pytest.raises(ParseError) as exc:
        AB.parse("a b^x")
    assert exc.value.position == 2


def test_letter_codes():
    assert Letter(1, -1).code == 3
    assert Letter.from_code(3) == Letter(1, -1)
    assert AB.word([("b", -1), (0, 1)]).codes == (3, 0)


@given(letters)
def test_reduce_matches_stack_oracle(backend, raw):
    w = reduce(AB, raw)
    assert serialize(w) == oracles.to_text(oracles.stack_reduce(raw))


@given(letters)
def test_serialize_round_trip(raw):
    w = reduce(AB, raw)
    assert AB.parse(serialize(w)) == w


@given(letters, letters, letters)
def test_group_laws(backend, x, y, z):
    u, v, w = reduce(AB, x), reduce(AB, y), reduce(AB, z)
    e = AB.identity()
    assert (u * v) * w == u * (v * w)
    assert u * e == u == e * u
    assert u * ~u == e
    assert ~(u * v) == ~v * ~u


@given(letters, letters, letters)
def test_tree_gromov_product_agrees_with_formula(backend, x, y, z):
    u, v, b = reduce(AB, x), reduce(AB, y), reduce(AB, z)
    assert Fraction(gromov_product_tree(u, v, b)) == gromov_product_formula(u, v, b)


short = st.lists(st.tuples(st.sampled_from(["a", "b"]), st.sampled_from([1, -1])), max_size=4)


@given(short, short)
def test_tree_geodesic_is_bfs_path(x, y):
    u, v = reduce(AB, x), reduce(AB, y)
    path = tree_geodesic(u, v)
    ref = oracles.bfs_path(["a", "b"], tuple(oracles.stack_reduce(x)), tuple(oracles.stack_reduce(y)))
    assert [oracles.to_text(p) for p in ref] == [serialize(p) for p in path]


def test_gromov_examples():
    assert gromov_product_tree(AB.parse("a b"), AB.parse("a b^-1")) == 1
    assert gromov_product_tree(AB.parse("a"), AB.parse("b")) == 0
    assert gromov_product_tree(AB.parse("a b"), AB.parse("a b a")) == 2


def test_free_group_adapter():
    F = FreeGroup(["a", "b"])
    assert F.parse("e") == F.identity()
    assert F.format_element(F.identity()) == "e"
    assert F.exact_length(F.parse("a b^-2")) == 3
    assert len(F.generators()) == 2


def test_alphabet_mixing_rejected():
    with pytest.raises(AlphabetMismatch):
        AB.parse("a") * Alphabet(["x"]).parse("x")


@given(letters)
def test_reduce_idempotent(x):
    w = reduce(AB, x)
    assert reduce(AB, w.codes) == w


def _reduced_ab(max_len):
    return [AB.parse(" ".join(n if s > 0 else f"{n}^-1" for n, s in w))
            for w in oracles.free_ball(["a", "b"], max_len)]


def test_group_laws_exhaustive_short():
    ws = _reduced_ab(3)
    e = AB.identity()
    for u in ws:
        assert u * e == u == e * u
        for v in ws:
            uv = u * v
            for w in ws[:17]:
                assert uv * w == u * (v * w)


@given(letters, letters)
def test_tree_geodesic_vertex_count(x, y):
    u, v = reduce(AB, x), reduce(AB, y)
    path = tree_geodesic(u, v)
    assert len(path) == len(~u * v) + 1
    assert path[0] == u and path[-1] == v
