import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from surfqp.pathalg import (
    JacobianIdeal, Path, PathElement, cyclic_derivative, cyclic_normal_form,
    cyclically_equivalent, is_composable, is_cycle, path_head, path_tail,
    rotations, substitute,
)
from surfqp.quiver import Quiver
from surfqp.surface import surface_qp

from conftest import load_tri


def a3_cycle():
    return Quiver(
        ["1", "2", "3"],
        [("a", "1", "2"), ("b", "2", "3"), ("c", "3", "1")],
    )


def test_path_conventions():
    q = a3_cycle()
    # arrows[0] is applied last: composable means arrows[i].tail == arrows[i+1].head
    p = Path(("c", "b", "a"))
    assert is_composable(q, p)
    assert path_tail(q, p) == "1" and path_head(q, p) == "1"
    assert is_cycle(q, p)
    assert not is_composable(q, Path(("a", "b")))
    with pytest.raises(ValueError):
        Path((), at=None)


def test_cyclic_normal_form():
    q = a3_cycle()
    p = Path(("c", "b", "a"))
    forms = {cyclic_normal_form(r) for r in rotations(p)}
    assert len(forms) == 1
    e1, e2 = (PathElement.path(q, r.arrows) for r in list(rotations(p))[:2])
    assert cyclically_equivalent(e1, e2)


def test_cyclic_derivative_explicit():
    q = a3_cycle()
    s = PathElement.path(q, ("c", "b", "a"))
    d = cyclic_derivative(s, "a")
    # removing a from the cycle cba leaves the path cb rotated to start after a
    assert d == PathElement.path(q, ("c", "b"))
    assert cyclic_derivative(s, "b") == PathElement.path(q, ("a", "c"))


def test_cyclic_derivative_rotation_invariance():
    q = a3_cycle()
    p = Path(("c", "b", "a"))
    derivs = {
        name: cyclic_derivative(PathElement.path(q, r.arrows), name)
        for r in rotations(p)
        for name in ("a", "b", "c")
    }
    for r in rotations(p):
        s = PathElement.path(q, r.arrows)
        for name in ("a", "b", "c"):
            assert cyclic_derivative(s, name) == derivs[name]


def test_substitute_identity_and_zero():
    q = a3_cycle()
    s = PathElement.path(q, ("c", "b", "a"), coeff=2)
    ident = {a.name: PathElement.arrow(q, a.name) for a in q.arrows}
    assert substitute(s, ident, q, bound=10) == PathElement(q, dict(s.terms))
    killed = dict(ident)
    killed["a"] = PathElement.zero(q)
    assert substitute(s, killed, q, bound=10).is_zero()


@settings(max_examples=40, deadline=None)
@given(st.integers(min_value=0, max_value=2), st.integers(min_value=1, max_value=3))
def test_scale_linearity(rot, c):
    q = a3_cycle()
    p = list(rotations(Path(("c", "b", "a"))))[rot]
    s = PathElement.path(q, p.arrows)
    assert s.scale(c).scale(0).is_zero()
    d1 = cyclic_derivative(s.scale(c), "a")
    d2 = cyclic_derivative(s, "a").scale(c)
    assert d1 == d2


def test_jacobian_ideal_square():
    t = load_tri("square1p")
    qp = surface_qp(t, bound=10)
    ideal = JacobianIdeal(qp.quiver, qp.potential, bound=10)
    # each cyclic derivative lies in the ideal by construction
    for a in qp.quiver.arrows:
        d = cyclic_derivative(qp.potential, a.name)
        if not d.is_zero():
            assert ideal.contains(d)
    # a single arrow never does
    first = qp.quiver.arrows[0].name
    assert not ideal.contains(PathElement.arrow(qp.quiver, first))


def test_jacobian_paths_of_length():
    t = load_tri("square1p")
    qp = surface_qp(t, bound=10)
    ideal = JacobianIdeal(qp.quiver, qp.potential, bound=10)
    for w in ideal.all_paths_of_length(2):
        assert isinstance(w, tuple) and len(w) == 2
