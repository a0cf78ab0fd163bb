import pytest
from hypothesis import given

from qpdom.bounds import (
    augment_code,
    extremal_check,
    perfect_closure,
    support_vertex_lemma_check,
    upper_bound,
)
from qpdom.errors import BadK, BadParam, NotDominating, NotExtremal, NotGammaCode, TooSmall
from qpdom.generators import all_free_trees, comb, path, star
from qpdom.oracle import brute_min, chain_profile, is_k_quasiperfect
from qpdom.tree_core import from_edge_list

from strategies import trees


def test_upper_bound_values():
    assert upper_bound(5, 1) == 9
    assert upper_bound(5, 2) == 7
    assert upper_bound(3, 5) == 3
    with pytest.raises(BadK):
        upper_bound(3, 0)
    with pytest.raises(BadParam):
        upper_bound(0, 1)


def test_augment_star_leaves():
    t = star(4)
    tr = augment_code(t, {2, 3, 4}, 2)
    assert tr.added == [1]
    assert tr.result == {1, 2, 3, 4}
    assert is_k_quasiperfect(t, tr.result, 2)


def test_augment_noop_and_errors():
    tr = augment_code(path(5), {1, 4}, 1)
    assert tr.added == [] and tr.result == {1, 4}
    assert tr.to_dict()["component_counts"] == [2]
    with pytest.raises(NotDominating):
        augment_code(path(5), {1}, 1)
    with pytest.raises(BadK):
        augment_code(path(5), {2, 4}, 0)


@given(trees(max_n=12))
def test_augment_from_gamma_codes(t):
    delta = max(t.max_degree, 1)
    codes = brute_min(t, delta, collect_all=True)
    g = codes.value
    for k in range(1, delta + 1):
        for s in codes.witnesses:
            tr = augment_code(t, s, k)
            assert is_k_quasiperfect(t, tr.result, k)
            assert len(tr.result) <= upper_bound(g, k)
            counts = tr.component_counts
            assert all(b <= a - k for a, b in zip(counts, counts[1:]))


def test_perfect_closure_examples():
    assert perfect_closure(comb(3), {1, 2, 3}) == {1, 2, 3}
    assert perfect_closure(path(3), {2}) == {2}
    with pytest.raises(NotGammaCode):
        perfect_closure(path(3), {1, 2})
    with pytest.raises(NotGammaCode):
        perfect_closure(path(4), {1})


def _free_trees(lo, hi):
    return [t for n in range(lo, hi + 1) for t in all_free_trees(n)]


def _superset_ok(t, s, closure):
    # closure must sit inside every perfect dominating superset of s
    rest = sorted(set(range(1, t.n + 1)) - s)
    for mask in range(1 << len(rest)):
        sup = set(s) | {v for i, v in enumerate(rest) if mask >> i & 1}
        if is_k_quasiperfect(t, sup, 1) and not closure <= sup:
            return False
    return True


@pytest.mark.parametrize("n", range(1, 11))
def test_perfect_closure_all_free_trees(n):
    for t in all_free_trees(n):
        codes = brute_min(t, max(t.max_degree, 1), collect_all=True)
        for s in codes.witnesses:
            c = perfect_closure(t, s)
            assert s <= c
            assert is_k_quasiperfect(t, c, 1)
            assert len(c) <= 2 * codes.value - 1
            if n <= 8:
                assert _superset_ok(t, s, c)


def test_extremal_examples():
    r = extremal_check(path(3))
    assert r.is_extremal and r.strong_supports == {2}
    assert r.to_dict()["failing_component"] is None
    r = extremal_check(comb(3))
    assert not r.is_extremal and not r.condition1
    with pytest.raises(TooSmall):
        extremal_check(path(1))


def test_extremal_p2_exception():
    # gamma_11(P2) = 1 = 2 gamma - 1, but P2 has no strong support vertex
    assert chain_profile(path(2)) == [1]
    assert not extremal_check(path(2)).is_extremal


def test_extremal_failing_component():
    # strong supports 1 and 4 joined by the path 1-2-3-4: component {2, 3} sees only 2 of them
    t = from_edge_list([(1, 2), (2, 3), (3, 4), (1, 5), (1, 6), (4, 7), (4, 8)])
    r = extremal_check(t)
    assert r.strong_supports == {1, 4}
    assert r.condition1 and not r.condition2 and not r.is_extremal
    assert r.failing_component == {2, 3}


@pytest.mark.parametrize("n", range(3, 11))
def test_extremal_matches_oracle(n):
    for t in all_free_trees(n):
        prof = chain_profile(t)
        assert extremal_check(t).is_extremal == (prof[0] == 2 * prof[-1] - 1)


def test_support_vertex_lemma():
    assert support_vertex_lemma_check(path(3)) is True
    with pytest.raises(NotExtremal):
        support_vertex_lemma_check(comb(3))
    # spider: center with two legs of length 2 and two pendant leaves
    spider = from_edge_list([(1, 2), (2, 3), (1, 4), (4, 5), (1, 6), (1, 7)])
    ext = extremal_check(spider).is_extremal
    prof = chain_profile(spider)
    assert ext == (prof[0] == 2 * prof[-1] - 1)
    if ext:
        assert support_vertex_lemma_check(spider)


@pytest.mark.parametrize("n", range(3, 11))
def test_support_vertex_lemma_on_extremal_trees(n):
    for t in all_free_trees(n):
        if extremal_check(t).is_extremal:
            assert support_vertex_lemma_check(t)
            codes = brute_min(t, max(t.max_degree, 1), collect_all=True).witnesses
            assert codes == [extremal_check(t).strong_supports]
