from itertools import permutations

import pytest
from hypothesis import given
from hypothesis import strategies as st

from prismtab.permutation import (
    Permutation,
    all_permutations,
    bigrass_set,
    bigrassmannian_for,
    bruhat_leq,
    descents,
    diagram,
    essential_set,
    is_bigrassmannian,
    is_grassmannian,
    is_vexillary,
    lehmer_code,
    length,
    one_m_times,
    parse_permutation,
    product_of_word,
    rank,
    rank_matrix,
    reduced_word,
    shape,
)

perms = st.integers(1, 7).flatmap(lambda n: st.permutations(list(range(1, n + 1)))).map(Permutation)


def P(text):
    return parse_permutation(text)


def test_parse_digits_and_commas():
    assert P("2143").window == (2, 1, 4, 3)
    assert P("10,1,2,3,4,5,6,7,8,9").window[0] == 10
    assert P(" 3, 1, 2 ") == P("312")


@pytest.mark.parametrize("bad", ["", "12x", "112", "0", "1,3"])
def test_parse_rejects(bad):
    with pytest.raises(ValueError):
        P(bad)


def test_trailing_fixed_points_do_not_matter():
    assert P("2134") == P("21")
    assert hash(P("2134")) == hash(P("21"))
    assert P("1234").is_identity()
    assert P("21").in_sn(4).window == (2, 1, 3, 4)


def test_diagram_and_length():
    assert diagram(P("2143")) == {(1, 1), (3, 3)}
    assert length(P("4321")) == 6
    assert P("35142").length == 6


def test_essential_set_35142():
    ess = essential_set(P("35142"))
    assert [(e.cell, e.rank) for e in ess] == [((2, 2), 0), ((2, 4), 1), ((4, 2), 1)]
    rows = shape(P("35142")).row_lengths()
    assert rows == {1: 2, 2: 3, 3: 1, 4: 1}


def test_rank_and_rank_matrix():
    w = P("2143")
    assert rank(w, 1, 1) == 0
    assert rank(w, 2, 2) == 2
    assert rank_matrix(w)[4][4] == 4
    with pytest.raises(ValueError):
        rank(w, 0, 1)


def test_lehmer_code():
    assert lehmer_code(P("1423")) == (0, 2, 0, 0)
    assert lehmer_code(P("2314")) == (1, 1, 0, 0)


@pytest.mark.parametrize(
    "cell, r, expected",
    [((2, 1), 0, "2314"), ((2, 3), 1, "1423"), ((1, 3), 0, "41235"), ((3, 3), 1, "14523")],
)
def test_bigrassmannian_for(cell, r, expected):
    u = bigrassmannian_for(*cell, r)
    assert u == P(expected)
    assert is_bigrassmannian(u)
    (e,) = essential_set(u)
    assert (e.cell, e.rank) == (cell, r)


def test_bigrass_sets(examples):
    for w, us in examples["bigrass"].items():
        assert {str(u.trimmed()) for u in bigrass_set(P(w))} == {str(P(u).trimmed()) for u in us}
    # the listed order of these two agrees with essential-set order
    for w in ("42513", "5361724"):
        assert [P(u) for u in examples["bigrass"][w]] == bigrass_set(P(w))


def test_predicates():
    assert is_grassmannian(P("246135"))
    assert not is_grassmannian(P("2143"))
    assert not is_vexillary(P("2143"))
    assert is_vexillary(P("1432"))
    assert descents(P("246135")) == [3]


def test_bruhat():
    assert bruhat_leq(P("1234"), P("4321"))
    assert bruhat_leq(P("2143"), P("4321"))
    assert not bruhat_leq(P("2143"), P("3124"))


def test_one_m_times():
    assert one_m_times(P("21"), 2).window == (1, 2, 4, 3)


def test_essential_set_matches_fulton_count_s5():
    for w in all_permutations(5):
        ess = essential_set(w)
        assert len(bigrass_set(w)) == len(ess)
        assert all(e.rank < min(e.cell) for e in ess)


@given(perms)
def test_reduced_word_roundtrip(w):
    word = reduced_word(w)
    assert len(word) == length(w)
    assert product_of_word(word, w.n) == w


@given(perms)
def test_inverse_and_length(w):
    assert w.inverse().inverse() == w
    assert length(w.inverse()) == length(w)
    assert len(diagram(w)) == length(w)
    assert sum(lehmer_code(w)) == length(w)


@given(perms, st.integers(1, 3))
def test_padding_is_invisible(w, extra):
    big = w.in_sn(w.n + extra)
    assert length(big) == length(w)
    assert diagram(big, big.n) == diagram(w, w.n)
    assert [(e.cell, e.rank) for e in essential_set(big)] == [(e.cell, e.rank) for e in essential_set(w)]


@given(perms)
def test_bigrassmannian_window_roundtrip(w):
    for e in essential_set(w):
        u = bigrassmannian_for(e.cell[0], e.cell[1], e.rank, w.n)
        assert [(f.cell, f.rank) for f in essential_set(u)] == [(e.cell, e.rank)]


def test_bruhat_is_a_partial_order_s4():
    ps = list(all_permutations(4))
    for a in ps:
        assert bruhat_leq(a, a)
        for b in ps:
            if a != b and bruhat_leq(a, b):
                assert not bruhat_leq(b, a)
                assert length(a) < length(b)
