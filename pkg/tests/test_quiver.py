import pytest

from surfqp.quiver import (
    Arrow, Quiver, delete_two_cycles, mutate_quiver, premutate_quiver,
    quiver_from_text, quiver_to_text, restrict_quiver,
)


def a3_cycle():
    return Quiver(
        ["1", "2", "3"],
        [("a", "1", "2"), ("b", "2", "3"), ("c", "3", "1")],
    )


def test_constructor_validation():
    with pytest.raises(ValueError):
        Quiver(["1", "1"], [])
    with pytest.raises(ValueError):
        Quiver(["1"], [("a", "1", "2")])
    with pytest.raises(ValueError):
        Quiver(["1", "2"], [("a", "1", "2"), ("a", "2", "1")])


def test_two_acyclicity():
    q = a3_cycle()
    assert q.is_two_acyclic()
    bad = Quiver(["1", "2"], [("a", "1", "2"), ("b", "2", "1")])
    assert not bad.is_two_acyclic()
    assert bad.has_loop_or_two_cycle_at("1")


def test_premutate_adds_stars_and_composites():
    q = a3_cycle()
    pm = premutate_quiver(q, "2")
    names = {a.name for a in pm.arrows}
    # a: 1->2 and b: 2->3 are replaced by stars, plus the composite [ba]
    assert "a*" in names and "b*" in names
    assert pm.arrow("a*").tail == "2" and pm.arrow("a*").head == "1"
    composites = [a for a in pm.arrows if a.tail == "1" and a.head == "3"]
    assert len(composites) == 1


def test_mutation_involutive_on_arrow_counts():
    q = a3_cycle()
    m2 = mutate_quiver(mutate_quiver(q, "2"), "2")
    assert m2.same_arrow_counts(q)


def test_delete_two_cycles():
    q = Quiver(
        ["1", "2"],
        [("a", "1", "2"), ("b", "2", "1"), ("c", "1", "2")],
    )
    reduced = delete_two_cycles(q)
    assert reduced.is_two_acyclic()
    assert len(reduced.arrows) == 1


def test_restrict():
    q = a3_cycle()
    # the vertex set is kept; only arrows among the kept vertices survive
    r = restrict_quiver(q, ["1", "2"])
    assert set(r.vertices) == set(q.vertices)
    assert [a.name for a in r.arrows] == ["a"]


def test_text_roundtrip():
    q = a3_cycle()
    again = quiver_from_text(quiver_to_text(q))
    assert again == q
