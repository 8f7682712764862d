import pytest
from hypothesis import given
from hypothesis import strategies as st

from conftest import make_index
from keylift.enhancer import (
    annotate_hits,
    apply_prune,
    order_by_informativeness,
    parse_prune,
    prune_extremes,
    prune_least_frequent,
    prune_threshold,
)
from keylift.errors import ParameterError
from keylift.keyphrases import INFORMATIVENESS, Keyphrase, KeyphraseList
from printed_lists import PRINTED_ORDER, shuffled_list


def texts(kplist):
    return [kp.text for kp in kplist]


def removed(before, after):
    kept = set(texts(after))
    return {t for t in texts(before) if t not in kept}


def test_annotate_hits():
    index = make_index("a b", "b c", "c")
    kplist = KeyphraseList("d", [Keyphrase("c", 1), Keyphrase("a b", 2), Keyphrase("expasy needs", 3)])
    out = annotate_hits(kplist, index)
    assert [kp.hit_count for kp in out] == [2, 1, 0]
    assert texts(out) == texts(kplist)
    assert kplist.keyphrases[0].hit_count is None  # input untouched
    assert len(annotate_hits(KeyphraseList("e", []), index)) == 0


@pytest.mark.parametrize("doc_id", sorted(PRINTED_ORDER))
@pytest.mark.parametrize("seed", [0, 1, 2])
def test_order_reproduces_printed_lists(doc_id, seed):
    out = order_by_informativeness(shuffled_list(doc_id, seed))
    assert texts(out) == [t for t, _ in PRINTED_ORDER[doc_id]]
    assert out.ordering == INFORMATIVENESS


def test_order_stable_for_equal_counts():
    kps = [Keyphrase(t, r, None, 7) for r, t in enumerate("abcde", start=1)]
    assert texts(order_by_informativeness(KeyphraseList("x", kps))) == list("abcde")


def test_order_requires_hits():
    with pytest.raises(ParameterError):
        order_by_informativeness(KeyphraseList("x", [Keyphrase("a", 1)]))


def test_threshold_printed_lists():
    l = shuffled_list("doc040")
    out = prune_threshold(l, 100)
    assert removed(l, out) == {"exising latex code"}
    assert {"html formatting commands", "html modes"} <= set(texts(out))
    l = shuffled_list("doc006")
    assert removed(l, prune_threshold(l, 100)) == {
        "pioneer molecular biology", "premier SwissProt", "ExPASy Needs"}
    assert texts(prune_threshold(l, 0)) == texts(l)


def test_least_frequent_doc008():
    l = shuffled_list("doc008")
    assert removed(l, prune_least_frequent(l, 5)) == {
        "nosibork", "zebrafish servers", "Gilbert Lab Home",
        "vertebrate developmental biology", "Zebrafish Book"}
    assert texts(prune_least_frequent(l, 0)) == texts(l)
    empty = prune_least_frequent(l, 15)
    assert len(empty) == 0 and empty.warning


def test_least_frequent_tie_removes_less_confident_first():
    kps = [Keyphrase("a", 1, None, 5), Keyphrase("b", 2, None, 5), Keyphrase("c", 3, None, 9)]
    assert texts(prune_least_frequent(KeyphraseList("x", kps), 1)) == ["a", "c"]


def test_extremes_doc016():
    l = shuffled_list("doc016")
    assert removed(l, prune_extremes(l, 3, 2)) == {
        "Pig Rig", "Macallan Boycott", "SCOTTISH NOTES", "food", "parties"}
    assert texts(prune_extremes(l, 0, 0)) == texts(l)


def test_extremes_boundaries():
    kps = [Keyphrase(t, r, None, r * 10) for r, t in enumerate("abcde", start=1)]
    l = KeyphraseList("x", kps)
    assert len(prune_extremes(l, 3, 2)) == 0
    with pytest.raises(ParameterError):
        prune_extremes(l, 4, 2)


def test_extremes_overlap_counts_against_low_pool():
    kps = [Keyphrase("a", 1, None, 5), Keyphrase("b", 2, None, 5)]
    assert texts(prune_extremes(KeyphraseList("x", kps), 1, 1)) == []
    kps = [Keyphrase("a", 1, None, 5), Keyphrase("b", 2, None, 5), Keyphrase("c", 3, None, 5)]
    # low removes c (largest rank), high then removes b among the rest
    assert texts(prune_extremes(KeyphraseList("x", kps), 1, 1)) == ["a"]


def test_threshold_removes_injected_misspelling():
    index = make_index("html latex code", "latex code", "html formatting")
    kplist = KeyphraseList("x", [Keyphrase("html", 1), Keyphrase("exising latex code", 2), Keyphrase("latex code", 3)])
    out = prune_threshold(annotate_hits(kplist, index), 1)
    assert "exising latex code" not in texts(out)


def test_parse_prune():
    assert parse_prune("threshold:100") == ("threshold", (100,))
    assert parse_prune("extremes:3,2") == ("extremes", (3, 2))
    assert parse_prune("tail") == ("tail", ())
    for bad in ("bogus:1", "tail:x", "extremes:3", "threshold:1,2"):
        with pytest.raises(ParameterError):
            parse_prune(bad)
    l = shuffled_list("doc016")
    assert texts(apply_prune(l, "extremes:3,2")) == texts(prune_extremes(l, 3, 2))


hit_lists = st.lists(st.integers(0, 500), max_size=20).map(
    lambda hits: KeyphraseList(
        "h", [Keyphrase(f"p{i}", i + 1, None, h) for i, h in enumerate(hits)]
    )
)


@given(hit_lists)
def test_ordering_is_a_sorted_permutation(l):
    out = order_by_informativeness(l)
    assert sorted(texts(out)) == sorted(texts(l))
    hits = [kp.hit_count for kp in out]
    assert hits == sorted(hits, reverse=True)


@given(hit_lists, st.integers(0, 600))
def test_threshold_properties(l, m):
    once = prune_threshold(l, m)
    assert all(kp.hit_count >= m for kp in once)
    assert texts(prune_threshold(once, m)) == texts(once)
    assert len(once) == sum(kp.hit_count >= m for kp in l)


@given(hit_lists, st.integers(0, 25))
def test_tail_size(l, n):
    out = prune_least_frequent(l, n)
    assert len(out) == max(0, len(l) - n)
    if len(out):
        assert min(kp.hit_count for kp in out) >= max(
            sorted(kp.hit_count for kp in l)[:n], default=0
        )


@given(hit_lists, st.integers(0, 5), st.integers(0, 5))
def test_extremes_size(l, low, high):
    if low + high > len(l):
        with pytest.raises(ParameterError):
            prune_extremes(l, low, high)
    else:
        assert len(prune_extremes(l, low, high)) == len(l) - low - high
