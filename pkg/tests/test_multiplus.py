import pytest

from prismtab.permutation import all_permutations, bigrass_set, is_bigrassmannian, length, parse_permutation
from prismtab.multiplus import (
    MultiPlusDiagram,
    all_multi,
    check_move_overlays,
    components_for,
    fiber,
    fiber_minimum,
    hasse_edges,
    join,
    join_component,
    label_rows,
    lambda_sequence,
    leq,
    leq_by_reachability,
    long_moves,
    meet,
    meet_component,
    multi_leq,
    poset_join,
    poset_meet,
    push_run,
    supp,
    verify_structure,
)
from prismtab.pipedream import PlusDiagram, min_plus

from .conftest import cells

P = parse_permutation


def test_components_match_bigrass(examples):
    for w, us in examples["bigrass"].items():
        w = P(w)
        got = components_for(w)
        assert {u.trimmed() for u in got} == {P(x).trimmed() for x in us}
        assert all(u.n == w.n for u in components_for(w))


def test_support_is_union():
    w = P("42513")
    for Q in all_multi(w):
        assert supp(Q).cells == frozenset().union(*(c.cells for c in Q.components))


@pytest.mark.parametrize("key,w", [("fiber_42513", "42513"), ("fiber_14253", "14253")])
def test_small_fibers(examples, key, w):
    ex = examples[key]
    F = fiber(P(w), PlusDiagram(len(w), cells(ex["support"])))
    assert len(F) == ex["size"]
    assert all(supp(Q).cells == cells(ex["support"]) for Q in F)


def test_fiber_14253_is_an_antichain():
    ex_support = frozenset({(1, 3), (2, 1), (2, 2), (3, 2)})
    F = fiber(P("14253"), PlusDiagram(5, ex_support))
    a, b = F.members
    assert not multi_leq(a, b) and not multi_leq(b, a)


def test_fiber_rejects_non_plus_diagram():
    with pytest.raises(ValueError):
        fiber(P("2413"), PlusDiagram(4, frozenset()))


def _fiber_5361724(examples):
    ex = examples["fiber_5361724"]
    w = P("5361724")
    support = PlusDiagram(7, cells(ex["support"]))
    named = {
        name: MultiPlusDiagram(w, tuple(PlusDiagram(7, cells(c)) for c in comps))
        for name, comps in ex["vertices"].items()
    }
    return ex, w, support, named


def test_fiber_5361724_members(examples):
    ex, w, support, named = _fiber_5361724(examples)
    F = fiber(w, support)
    assert set(F.members) == set(named.values())
    assert len(F) == 6


def test_fiber_5361724_hasse_diagram(examples):
    ex, w, support, named = _fiber_5361724(examples)
    members = list(fiber(w, support).members)
    back = {Q: k for k, Q in named.items()}
    got = {frozenset((back[members[i]], back[members[j]])) for i, j in hasse_edges(members)}
    assert got == {frozenset(e) for e in ex["edges"]}
    bottom = named[ex["bottom"]]
    assert all(multi_leq(bottom, Q) for Q in members)
    assert fiber_minimum(w, support) == bottom


def test_fiber_5361724_long_move_graph(examples):
    ex, w, support, named = _fiber_5361724(examples)
    members = set(named.values())
    edges = set()
    for Q in members:
        for R in long_moves(Q, support_preserving=True):
            assert R in members
            edges.add(frozenset((Q, R)))
    assert len(edges) == len(ex["edges"])


def test_label_order_1267345(examples):
    u = P("1267345")
    ex = examples["labels_1267345"]
    X = PlusDiagram(7, frozenset(tuple(c) for c in ex["P"].values()))
    Y = PlusDiagram(7, frozenset(tuple(c) for c in ex["P2"].values()))
    assert label_rows(u, X) == tuple(ex["P"][str(a)][0] for a in range(1, 7))
    seq = lambda_sequence(u, X, Y, "meet")
    assert list(seq.order) == ex["lambda"]
    meet_cells = frozenset(tuple(c) for c in ex["meet"].values())
    assert meet_component(u, X, Y).cells == meet_cells
    assert seq.diagrams[0] == X and seq.diagrams[-1] == Y


def test_lambda_rejects_unknown_kind():
    u = P("1423")
    X = min_plus(u)[0]
    with pytest.raises(ValueError):
        lambda_sequence(u, X, X, "middle")


def _bigrass(n):
    return [w for w in all_permutations(n) if is_bigrassmannian(w) and length(w) > 0]


def _check_lattice(u):
    dreams = min_plus(u)
    order = lambda a, b: leq(a, b, u)
    for a in dreams:
        for b in dreams:
            assert leq(a, b, u) == leq_by_reachability(a, b, u)
    for a in dreams:
        for b in dreams:
            assert meet_component(u, a, b) == poset_meet(dreams, order, a, b)
            assert join_component(u, a, b) == poset_join(dreams, order, a, b)


@pytest.mark.parametrize("u", _bigrass(5), ids=str)
def test_bigrassmannian_lattice_s5(u):
    _check_lattice(u)


@pytest.mark.long
def test_bigrassmannian_lattice_s6():
    for u in _bigrass(6):
        _check_lattice(u)


def test_meet_and_join_are_componentwise():
    w = P("42513")
    qs = list(all_multi(w))
    for x in qs:
        for y in qs:
            m, j = meet(x, y), join(x, y)
            assert multi_leq(m, x) and multi_leq(m, y)
            assert multi_leq(x, j) and multi_leq(y, j)


def test_fiber_structure_s5():
    for w in all_permutations(5):
        r = verify_structure(w)
        assert r.passed, r.failures[:3]
        assert r.supports == len(min_plus(w))


@pytest.mark.long
def test_fiber_structure_s6():
    for w in all_permutations(6):
        assert verify_structure(w).passed


def test_push_run_blocked_returns_none():
    w = P("1432")
    Q = next(iter(all_multi(w)))
    start = min(supp(Q).cells)
    R = push_run(Q, start, "chute")
    assert R is None or isinstance(R, MultiPlusDiagram)


@pytest.mark.parametrize("kind", ["chute", "ladder"])
def test_move_overlays_s5(kind):
    total = 0
    for w in all_permutations(5):
        r = check_move_overlays(w, kind)
        assert r.passed, r.failures[:3]
        total += r.moves
    assert total > 0


def test_multi_text_and_json():
    w = P("42513")
    Q = fiber(w, min_plus(w)[0]).members[0]
    lines = Q.to_text().splitlines()
    assert len(lines) == 5
    assert len(Q.to_json_obj()) == len(bigrass_set(w))
