import json
from itertools import combinations

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from prismtab.permutation import all_permutations, bigrass_set, is_bigrassmannian, length, parse_permutation
from prismtab.pipedream import (
    PlusDiagram,
    bottom_labels,
    chute_moves,
    contains_min_plus,
    d_bot,
    diagonal_order_labels,
    essential_antidiagonals,
    is_plus_diagram,
    is_reduced_pipe_dream,
    labels_by_antidiagonal,
    ladder_moves,
    local_moves,
    min_plus,
    min_plus_by_oracle,
    permutation_of,
    total_weight,
    weight,
    word_of,
)
from prismtab.polynomial import schubert

from .conftest import cells

P = parse_permutation


def D(n, pairs):
    return PlusDiagram(n, cells(pairs))


def test_word_convention():
    assert word_of(D(4, [(1, 1), (2, 1)])) == [1, 2]
    assert permutation_of(D(4, [(1, 1), (2, 1)])) == P("2314")
    assert word_of(D(4, [(2, 1), (2, 2)])) == [3, 2]
    assert permutation_of(D(4, [(2, 1), (2, 2)])) == P("1423")
    assert word_of(D(4, [])) == []
    assert permutation_of(D(4, [])).is_identity()


@pytest.mark.parametrize("w", ["1423", "2314", "2413"])
def test_listed_min_plus(examples, w):
    expected = {cells(d) for d in examples["min_plus"][w]}
    got = min_plus(P(w))
    assert {Q.cells for Q in got} == expected
    assert all(is_reduced_pipe_dream(Q, P(w)) for Q in got)


def test_d_bot():
    assert d_bot(P("1234")).cells == frozenset()
    assert d_bot(P("1423")).cells == {(2, 1), (2, 2)}
    assert d_bot(P("2314")).cells == {(1, 1), (2, 1)}


def test_local_move_pictures():
    sw = local_moves(D(2, [(1, 2)]), "SW")
    assert [(c, Q.cells) for c, Q in sw] == [((1, 2), {(2, 1)})]
    ne = local_moves(D(2, [(2, 1)]), "NE")
    assert [(c, Q.cells) for c, Q in ne] == [((2, 1), {(1, 2)})]
    assert local_moves(D(2, [(1, 2), (2, 2)]), "SW") == []


def test_ne_closure_of_bottom_1423():
    start = d_bot(P("1423"))
    seen, todo = {start}, [start]
    while todo:
        for _, Q in local_moves(todo.pop(), "NE"):
            if Q not in seen:
                seen.add(Q)
                todo.append(Q)
    assert seen == set(min_plus(P("1423")))


def test_essential_antidiagonals(examples):
    for w, sets in examples["essential_antidiagonals"].items():
        assert {cells(s) for s in essential_antidiagonals(P(w))} == {cells(s) for s in sets}
    assert essential_antidiagonals(P("1234")) == []


def test_plus_membership():
    w = P("14253")
    X = D(5, [(1, 3), (2, 1), (2, 2), (3, 2)])
    assert is_plus_diagram(X, w) and contains_min_plus(X, w)
    assert X not in min_plus(w)
    assert not is_plus_diagram(D(5, []), w)
    for Q in min_plus(w):
        bigger = PlusDiagram(5, Q.cells | {(4, 1)})
        assert is_plus_diagram(bigger, w)


def test_chute_move_1432(examples):
    ex = examples["chute_1432"]
    A, B = D(4, ex["P"]), D(4, ex["Q"])
    assert B in chute_moves(A)
    assert A in min_plus(P("1432")) and B in min_plus(P("1432"))
    assert chute_moves(D(4, [])) == [] and ladder_moves(D(4, [])) == []


def test_weights(examples):
    for key, text in examples["weights"]["2413"].items():
        assert weight(D(4, json.loads(key))).to_text() == text
    assert weight(D(3, [])) == 1


def test_render_and_json():
    Q = D(3, [(1, 2), (2, 1)])
    assert Q.to_text() == ". + .\n+ . .\n. . ."
    assert PlusDiagram.from_rows(Q.to_text().splitlines()) == Q
    assert Q.to_json_obj() == {"n": 3, "cells": [[1, 2], [2, 1]]}
    assert PlusDiagram.from_json_obj(Q.to_json_obj()) == Q
    with pytest.raises(ValueError):
        D(2, [(3, 1)])


def test_ladder_closure_matches_oracle_s5():
    for n in (1, 2, 3, 4, 5):
        for w in all_permutations(n):
            dreams = min_plus(w)
            assert set(dreams) == set(min_plus_by_oracle(w))
            assert all(len(Q) == length(w) for Q in dreams)


def test_weight_sum_is_schubert_s5():
    for w in all_permutations(5):
        assert total_weight(min_plus(w), 5) == schubert(w, nvars=5)


@pytest.mark.long
def test_weight_sum_is_schubert_s6():
    for w in all_permutations(6):
        assert total_weight(min_plus(w), 6) == schubert(w, nvars=6)


def test_membership_two_ways_s4():
    for w in all_permutations(4):
        for k in range(0, 5):
            for chosen in combinations([(i, j) for i in range(1, 4) for j in range(1, 5 - i)], k):
                X = D(4, chosen)
                assert is_plus_diagram(X, w) == contains_min_plus(X, w)


def test_moves_stay_inside_min_plus_s5():
    for w in all_permutations(5):
        allowed = set(min_plus(w))
        for Q in allowed:
            assert set(chute_moves(Q)) <= allowed
            assert set(ladder_moves(Q)) <= allowed


def _bigrass(n):
    return [w for w in all_permutations(n) if is_bigrassmannian(w) and length(w) > 0]


def test_bigrassmannian_closed_under_local_moves():
    for u in _bigrass(5):
        allowed = set(min_plus(u))
        for Q in allowed:
            for d in ("SW", "NE"):
                assert all(R in allowed for _, R in local_moves(Q, d))


def test_bottom_label_pattern():
    lab = bottom_labels(P("1267345"))
    assert {a: c for c, a in lab.labels.items()} == {
        1: (4, 1), 2: (3, 1), 3: (4, 2), 4: (3, 2), 5: (4, 3), 6: (3, 3)
    }


def test_labels_1267345(examples):
    u = P("1267345")
    ex = examples["labels_1267345"]
    for key in ("P", "P2"):
        pos = {int(a): tuple(c) for a, c in ex[key].items()}
        X = PlusDiagram(7, frozenset(pos.values()))
        assert diagonal_order_labels(u, X).positions() == pos
        assert labels_by_antidiagonal(u, X).positions() == pos


def test_label_transport_is_path_independent():
    for u in _bigrass(5):
        for Q in min_plus(u):
            ref = labels_by_antidiagonal(u, Q).labels
            for choose in range(3):
                assert diagonal_order_labels(u, Q, choose).labels == ref


def test_labels_reject_foreign_diagram():
    with pytest.raises(ValueError):
        diagonal_order_labels(P("1423"), D(4, [(1, 1), (2, 1)]))


def _weakly_sw(a, b):
    return a[0] >= b[0] and a[1] <= b[1]


def test_relative_order_is_constant():
    for u in _bigrass(5):
        dreams = min_plus(u)
        bottom = bottom_labels(u).positions()
        labelled = [labels_by_antidiagonal(u, Q).positions() for Q in dreams]
        labels = sorted(bottom)
        for a in labels:
            for b in labels:
                if a == b:
                    continue
                if _weakly_sw(bottom[a], bottom[b]):
                    assert all(_weakly_sw(pos[a], pos[b]) for pos in labelled)
                da = bottom[a][0] + bottom[a][1]
                db = bottom[b][0] + bottom[b][1]
                if abs(da - db) <= 1:
                    pattern = {_weakly_sw(pos[b], pos[a]) for pos in labelled}
                    assert len(pattern) == 1


bigrass5 = _bigrass(5)


@given(st.sampled_from(bigrass5), st.data())
@settings(max_examples=40, deadline=None)
def test_reduced_pipe_dreams_have_product_u(u, data):
    Q = data.draw(st.sampled_from(min_plus(u)))
    assert permutation_of(Q) == u
    assert Q.cells == labels_by_antidiagonal(u, Q).base.cells
