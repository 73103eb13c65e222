import pytest

from shiftcolor import audit, colorer, qo, upseq
from shiftcolor.shiftgraph import cycle_color
from shiftcolor.upseq import make_up

A2 = qo.antichain("ab")
a, b, c = 0, 1, 2
L, R = qo.LEFT, qo.RIGHT


def branches(res):
    return [e["branch"] for e in res.trace]


def test_color_base_examples():
    assert colorer.color_base(A2, make_up([], [a, b])) == 0
    assert colorer.color_base(A2, make_up([], [b, a])) == 1
    X = make_up([], [a, b, c])
    assert [colorer.color_base(qo.antichain("abc"), X.shift_by(i)) for i in range(3)] == [0, 1, 2]


def test_chain_has_no_bad_points():
    assert audit.exhaustive_bad(qo.chain("ab"), 2, 4) == []
    with pytest.raises(colorer.NotBadError):
        colorer.color_base(qo.chain("ab"), make_up([], [a, b]))


def test_color_union_examples():
    u = qo.union(A2, A2)
    mixed = colorer.color(u, make_up([], [(L, a), (R, a)]))
    assert branches(mixed) == ["binary-factor"]
    assert mixed.color == cycle_color(make_up([], [1, 0]))
    left = colorer.color(u, make_up([], [(L, a), (L, b)]))
    assert left.color == 0 and branches(left) == ["union-left", "base"]
    X = make_up([(R, a)], [(L, a), (L, b)])
    tail = colorer.color(u, X)
    assert branches(tail) == ["tail-step", "union-left", "base"]
    assert tail.color == (colorer.color(u, X.shift()).color + 1) % 3


def test_color_product_examples():
    r = colorer.color(qo.product(A2, A2), make_up([], [(a, a), (b, b)]))
    assert r.color == 0 and branches(r) == ["product-pi1", "base"]
    r = colorer.color(qo.product(qo.chain("ab"), A2), make_up([], [(a, a), (a, b)]))
    assert r.color == 0 and branches(r) == ["product-pi2", "base"]


def test_color_seq_worked_chain():
    sq = qo.seq(A2)
    X = make_up([], [(a, b), (b, a)])
    r = colorer.color(sq, X)
    assert r.color == 0
    assert branches(r) == ["B", "d-infty", "witness", "base"]
    assert r.trace[1]["M"] == {"pre": [], "per": [1]}
    assert r.trace[2]["y"] == {"pre": [], "per": ["a", "b"]}
    assert colorer.color(sq, X.shift()).color == 1
    assert colorer.color_seq(sq, X) == 0


def test_color_seq_length_pattern():
    sq = qo.seq(A2)
    r = colorer.color(sq, make_up([], [(a,), (b, b)]))
    assert branches(r) == ["binary-factor"]
    assert r.color == cycle_color(make_up([], [1, 0]))


def test_color_seq_stable_input_skips_derivation():
    sq = qo.seq(A2)
    r = colorer.color(sq, make_up([], [(a,), (b,)]))
    assert r.trace[1]["M"] == {"pre": [], "per": [0]}
    assert branches(r) == ["B", "d-infty", "witness", "base"]


def test_color_tree_examples():
    t1 = qo.tree1(A2)
    X = make_up([], [qo.make_tree(t1, a), qo.make_tree(t1, b)])
    r = colorer.color(t1, X)
    assert branches(r)[:2] == ["linearized", "B"]
    assert r.color == colorer.color(qo.seq(A2), make_up([], [(a,), (b,)])).color

    abc = qo.antichain(["a", "b", "c0"])
    t = qo.tree1(abc)
    chain = qo.make_tree(t, a, [qo.make_tree(t, b)])
    fork = qo.make_tree(t, c, [qo.make_tree(t, a), qo.make_tree(t, b)])
    X = make_up([], [chain, fork])
    assert upseq.is_bad(t, X)
    assert not upseq.is_bad(qo.seq(abc), X.map(qo.linearize))
    r = colorer.color(t, X)
    # the linearization pattern alternates here, so the binary factor decides
    assert branches(r) == ["binary-factor"]
    assert r.color != colorer.color(t, X.shift()).color


def test_tree_fallback_fires_on_homogeneous_linearization_failure():
    abc = qo.antichain(["a", "b", "c0"])
    t = qo.tree1(abc)
    lit = {"pre": [], "per": [
        {"tree": {"label": "b", "children": [{"label": "a", "children": [
            {"label": "c0", "children": []}, {"label": "c0", "children": []}]}]}},
        {"tree": {"label": "b", "children": [{"label": "a", "children": []},
                                            {"label": "c0", "children": [
                                                {"label": "c0", "children": []}]}]}}]}
    X = upseq.parse_up(t, lit)
    r = colorer.color(t, X)
    assert branches(r) == ["fallback"]
    assert r.color != colorer.color(t, X.shift()).color


def test_color_finset_examples():
    fs = qo.finset(A2)
    r = colorer.color(fs, make_up([], [(a,), (b,)]))
    assert branches(r)[0] == "finset-sorted"
    assert r.color == 0
    with pytest.raises(colorer.NotBadError):
        colorer.color_finset(fs, make_up([], [(a,), (a, b)]))


def test_nested_specs_recurse():
    ss = qo.seq(qo.seq(A2))
    inner = make_up([], [(a, b), (b, a)])
    # outer terms are single inner words; the witness is the inner sequence
    X = make_up([], [((a, b),), ((b, a),)])
    r = colorer.color(ss, X)
    assert branches(r).count("B") == 2
    assert r.color == colorer.color(qo.seq(A2), inner).color

    u = qo.union(A2, qo.product(A2, A2))
    r = colorer.color(u, make_up([], [(R, (a, a)), (R, (b, b))]))
    assert branches(r) == ["union-right", "product-pi1", "base"]


def test_split_color_examples():
    C3 = qo.chain("abc")
    seen = []
    hom = lambda Z: seen.append("hom") or 0
    anti = lambda Z: seen.append("anti") or 1
    col = colorer.split_color(C3, lambda p, q: p < q, hom, anti)
    # pattern (10)^w: the binary branch
    assert col(make_up([], [a, b])) == cycle_color(make_up([], [1, 0]))
    # homogeneous from the start
    assert col(make_up([], [c])) == 1 and seen == ["anti"]
    # two tail steps before the anti piece
    assert col(make_up([a, b], [c])) == (1 + 2) % 3


def test_replay_and_errors():
    sq = qo.seq(A2)
    r = colorer.color(sq, make_up([(b, b, b)], [(a, b), (b, a)]))
    assert r.trace[0] == {"branch": "tail-step", "split": "length", "steps": 1}
    assert colorer.replay(r.trace) == r.color
    with pytest.raises(ValueError):
        colorer.replay([{"branch": "B"}])
    with pytest.raises(colorer.NotBadError):
        colorer.color(sq, make_up([], [(a,), (a,)]))
    with pytest.raises(ValueError):
        colorer.color_seq(A2, make_up([], [a, b]))


@pytest.mark.parametrize("name", ["A2+A2", "A2xA2", "Seq(A2)", "Tree1(A2)"])
def test_small_audit_has_no_violations(name):
    rep = audit.audit_properness(audit.zoo()[name], seed=3, count=150)
    assert rep.valid > 0 and rep.violations == []
