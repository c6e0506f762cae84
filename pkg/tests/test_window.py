import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from hlhitters import OracleWindow, SlidingWindow


def test_new_window():
    assert len(SlidingWindow(4)) == 0
    w = SlidingWindow(1)
    assert w.push("A") is None
    assert w.push("B") == "A"
    assert w.counts() == {"B": 1}
    with pytest.raises(ValueError):
        SlidingWindow(0)


def test_push_evicts_fifo():
    w = SlidingWindow(2)
    assert w.push("A") is None
    assert w.push("B") is None
    assert w.counts() == {"A": 1, "B": 1}
    assert w.push("C") == "A"
    assert w.counts() == {"B": 1, "C": 1}
    assert w.items() == ["B", "C"]


def test_self_eviction():
    w = SlidingWindow(3)
    for _ in range(3):
        w.push("A")
    assert w.push("A") == "A"
    assert w.count("A") == 3


def test_passthroughs():
    w = SlidingWindow(4)
    w.extend("ABAC")
    assert w.heaviest(1) == [("A", 2)]
    assert set(w.lightest(2)) == {("B", 1), ("C", 1)}
    assert w.max_group() == [("A", 2)]
    assert set(w.min_group()) == {("B", 1), ("C", 1)}
    assert w.heaviest_fraction(0.5) == [("A", 2)]
    assert set(w.lightest_fraction(0.25)) == {("B", 1), ("C", 1)}
    assert w.cumulative_heaviest(3)[0] == ("A", 2)
    assert len(w.cumulative_lightest(fraction=0.5)) == 2
    assert (w.occupancy, w.distinct_count) == (4, 3)


def test_passthrough_after_eviction():
    w = SlidingWindow(3)
    w.extend("ABAC")
    assert w.counts() == {"B": 1, "A": 1, "C": 1}
    assert w.heaviest(1)[0].count == 1


@settings(max_examples=300, deadline=None)
@given(
    capacity=st.integers(min_value=1, max_value=9),
    stream=st.lists(st.integers(min_value=0, max_value=6), max_size=80),
)
def test_window_tracks_suffix(capacity, stream):
    w = SlidingWindow(capacity)
    for i, x in enumerate(stream):
        before = w.items()
        evicted = w.push(x)
        if len(before) == capacity:
            assert evicted == before[0]
        else:
            assert evicted is None
        suffix = stream[max(0, i + 1 - capacity) : i + 1]
        assert w.items() == suffix
        assert len(w) == w.occupancy == len(suffix)
        expected = {}
        for y in suffix:
            expected[y] = expected.get(y, 0) + 1
        assert w.counts() == expected
    w.hitters.check_invariants()


class TestOracle:
    def test_push(self):
        o = OracleWindow(2)
        assert [o.push(x) for x in "ABC"] == [None, None, "A"]
        o = OracleWindow(1)
        assert [o.push(x) for x in "AA"] == [None, "A"]
        o = OracleWindow(3)
        assert [o.push(x) for x in "AB"] == [None, None]

    def test_heaviest(self):
        o = OracleWindow(3)
        for x in "AAB":
            o.push(x)
        assert o.query_heaviest(1) == [("A", 2)]
        assert o.query_heaviest(2) == [("A", 2), ("B", 1)]
        tie = OracleWindow(2)
        tie.push("A")
        tie.push("B")
        assert tie.query_heaviest(1)[0] in {("A", 1), ("B", 1)}
        assert OracleWindow(3).query_heaviest(4) == []

    def test_lightest(self):
        o = OracleWindow(3)
        for x in "AAB":
            o.push(x)
        assert o.query_lightest(1) == [("B", 1)]
        o = OracleWindow(2)
        o.push("A")
        o.push("A")
        assert o.query_lightest(2) == [("A", 2)]
        assert OracleWindow(3).query_lightest(3) == []

    def test_groups_and_fractions(self):
        o = OracleWindow(10)
        for x in "AAAAABBBCC":
            o.push(x)
        assert o.query_max_group() == [("A", 5)]
        assert o.query_min_group() == [("C", 2)]
        assert set(o.query_heaviest_fraction(0.3)) == {("A", 5), ("B", 3)}
        assert o.query_lightest_fraction(0.2) == [("C", 2)]
        assert OracleWindow(2).query_max_group() == []
        assert OracleWindow(2).query_min_group() == []

    def test_rejects(self):
        with pytest.raises(ValueError):
            OracleWindow(0)
        with pytest.raises(ValueError):
            OracleWindow(2).query_heaviest(-1)
