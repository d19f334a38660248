import pytest

from prismtab.harness import load_table1
from prismtab.multiplus import fiber_minimum
from prismtab.permutation import all_permutations, essential_set, length, parse_permutation
from prismtab.pipedream import min_plus
from prismtab.polynomial import schubert, stanley_truncation
from prismtab.prism import (
    PrismTableau,
    UnstableTriple,
    all_prism,
    color_code,
    grassmannian_reduce,
    is_minimal,
    is_valid_filling,
    min_prism,
    phi,
    phi_inv,
    prism,
    prism_polynomial,
    rect_fillings,
    rect_fillings_via_pipe_dreams,
    stable_polynomial,
    stats,
    unflagged_min_prism,
    unflagged_prism,
    unstable_triples,
    weight,
)

P = parse_permutation


def boxes(T: PrismTableau) -> dict[str, str]:
    return {
        f"{x},{y}": ",".join(f"{v}{color_code(c)}" for v, c in lst)
        for (x, y), lst in T.entries().items()
    }


def test_color_codes():
    assert [color_code(k) for k in range(3)] == ["a", "b", "c"]


def test_minimal_tableaux_42513(examples):
    ex = examples["prism_42513"]
    w = P("42513")
    got = {tuple(sorted(boxes(T).items())): T for T in min_prism(w)}
    want = [tuple(sorted(t["boxes"].items())) for t in ex["tableaux"]]
    assert set(got) == set(want)
    for t, key in zip(ex["tableaux"], want):
        T = got[key]
        assert is_minimal(T) and T.is_valid()
        assert weight(T).to_text() == t["weight"]
        assert (not unstable_triples(T)) == t["stable"]


def test_replaceable_triple_42513(examples):
    ex = examples["prism_42513"]
    r = ex["replaceable"]
    w = P("42513")
    target = ex["tableaux"][r["tableau"]]["boxes"]
    (T,) = [T for T in min_prism(w) if boxes(T) == target]
    triples = unstable_triples(T)
    assert any(
        t.antidiagonal == r["antidiagonal"] and t.label == r["label"]
        and t.color_c == r["color"] and t.larger == r["by"]
        for t in triples
    )
    assert all(isinstance(t, UnstableTriple) for t in triples)


def test_prism_42513_polynomial():
    w = P("42513")
    assert len(prism(w)) == 2
    assert prism_polynomial(w) == schubert(w, nvars=5)


def test_prism_1432(examples):
    got = {tuple(sorted(boxes(T).items())) for T in prism(P("1432"))}
    want = {tuple(sorted(t.items())) for t in examples["prism_1432"]}
    assert got == want


def test_grassmannian_246135(examples):
    w = P("246135")
    tabs = prism(w)
    assert len(tabs) == len(examples["grassmannian_246135"])
    got = set()
    for T in tabs:
        vals = grassmannian_reduce(T)
        rows = max(x for x, _ in vals)
        got.add(tuple(tuple(vals[(x, y)] for y in sorted(c for r, c in vals if r == x)) for x in range(1, rows + 1)))
    want = {tuple(tuple(r) for r in t) for t in examples["grassmannian_246135"]}
    assert got == want


def test_grassmannian_reduce_rejects_other():
    T = prism(P("1432"))[0]
    with pytest.raises(ValueError):
        grassmannian_reduce(T)


def test_identity_has_one_empty_tableau():
    (T,) = prism(P("123"))
    assert T.to_text() == "(empty)"
    assert prism_polynomial(P("123")) == 1


def test_text_render():
    T = prism(P("2143"))
    assert sorted(t.to_text() for t in T) == ["{1a}\n.\n{1b}", "{1a}\n.\n{2b}", "{1a}\n.\n{3b}"]
    wide = prism(P("42513"))[0].to_text().splitlines()
    assert wide[0] == "{1a,1b} {1a}    {1a}"
    obj = T[0].to_json_obj()
    assert obj["w"] == [2, 1, 4, 3]
    assert [f["color"] for f in obj["fillings"]] == ["a", "b"]


def test_table1(examples):
    rows = load_table1()["rows"]
    assert len(rows) == 24
    for row in rows:
        w = P(row["w"])
        assert prism_polynomial(w).to_text() == row["polynomial"]
        assert len(prism(w)) == row["count"]


def test_fillings_equal_pipe_dreams_s5():
    for w in all_permutations(5):
        for e in essential_set(w):
            direct = rect_fillings(e)
            assert all(is_valid_filling(e, f) for f in direct)
            assert sorted(direct) == sorted(rect_fillings_via_pipe_dreams(e, w.n))


def test_minimal_search_matches_brute_force_s4():
    for w in all_permutations(4):
        brute = {T.fillings for T in all_prism(w) if stats(T).total == length(w)}
        assert brute == {T.fillings for T in min_prism(w)}


def test_theorem_s5():
    for w in all_permutations(5):
        assert prism_polynomial(w) == schubert(w, nvars=5), w


@pytest.mark.long
def test_theorem_s6():
    for w in all_permutations(6):
        assert prism_polynomial(w) == schubert(w, nvars=6), w


def test_phi_roundtrip_and_fiber_minima_s5():
    for w in all_permutations(5):
        tabs = prism(w)
        images = {phi(T) for T in tabs}
        for T in tabs:
            assert phi_inv(phi(T)).fillings == T.fillings
        minima = {fiber_minimum(w, Q) for Q in min_plus(w)}
        assert images == minima, w


def test_every_triple_is_genuine():
    for w in all_permutations(4):
        for T in min_prism(w):
            for t in unstable_triples(T):
                lst = T.by_antidiagonal()[t.antidiagonal]
                assert (t.label, t.color_c) in {(v, c) for v, c, _ in lst}
                assert (t.label, t.color_d) in {(v, c) for v, c, _ in lst}
                assert (t.larger, t.color_e) in {(v, c) for v, c, _ in lst}
                assert t.color_c != t.color_d and t.label < t.larger


@pytest.mark.parametrize("m", [1, 2, 3])
def test_stable_limit_s4(m):
    for w in all_permutations(4):
        assert stable_polynomial(w, m) == stanley_truncation(w, m), (w, m)


def test_unflagged_sets_nest():
    w = P("2143")
    assert set(t.fillings for t in unflagged_prism(w, 2)) <= set(t.fillings for t in unflagged_min_prism(w, 2))
    assert all(t.bound == 2 for t in unflagged_min_prism(w, 2))
