import pytest

from quiverchains.quiver import Quiver, QuiverError, a2_quiver, fork_quiver, line_quiver


def test_a2_paths():
    q = a2_quiver()
    assert q.paths("1", "2") == (("a",),)
    assert q.paths("1", "1") == ((),)
    assert q.paths("2", "1") == ()


def test_trivial_path_only_on_acyclic(vect):
    q = line_quiver(3)
    for v in q.vertices:
        assert q.paths(v, v) == ((),)


def test_fork_paths():
    q = fork_quiver()
    assert q.paths("2", "3") == ()
    assert q.paths("1", "2") == (("a",),)
    assert q.paths("1", "3") == (("b",),)


def test_cycle_rejected():
    with pytest.raises(QuiverError):
        Quiver(("1", "2"), (("a", "1", "2"), ("b", "2", "1")))
    with pytest.raises(QuiverError):
        Quiver(("1",), (("a", "1", "1"),))


def test_topological_order():
    assert a2_quiver().topological_order() == ("1", "2")
    assert Quiver(("v",), ()).topological_order() == ("v",)
    assert fork_quiver().topological_order() == ("1", "2", "3")
    assert fork_quiver().reverse_topological_order() == ("3", "2", "1")


def test_longer_path_enumeration():
    q = Quiver(("1", "2", "3"), (("a", "1", "2"), ("b", "2", "3"), ("c", "1", "3")))
    # oracle by hand: 1 -> 3 via c or via a then b
    assert q.paths("1", "3") == (("a", "b"), ("c",))
    assert q.paths("1", "2") == (("a",),)


def test_arrows_go_forward_in_topological_order():
    q = Quiver(("x", "y", "z", "w"),
               (("a", "x", "z"), ("b", "y", "z"), ("c", "z", "w"), ("d", "x", "y")))
    order = q.topological_order()
    pos = {v: i for i, v in enumerate(order)}
    for _, s, t in q.arrows:
        assert pos[s] < pos[t]


def test_bad_endpoint_rejected():
    with pytest.raises(QuiverError):
        Quiver(("1",), (("a", "1", "9"),))
