import pytest

from surfqp.arcrep import arc_representation
from surfqp.ratmat import Matrix
from surfqp.rep import (
    DecRep, boundary_rep, direct_sum_rep, is_isomorphic, negative_simple,
    simple_rep,
)
from surfqp.surface import surface_qp

from conftest import load_arc, load_tri


@pytest.fixture(scope="module")
def nice_rep():
    t = load_tri("hexagon2p")
    arc = load_arc("hexagon2p_nice", t)
    return arc_representation(t, arc)


def test_negative_simple(square1p):
    qp = surface_qp(square1p)
    ns = negative_simple(qp, "p1")
    assert ns.total_dim() == 0
    assert ns.dec == {"p1": 1, "p2": 0, "p3": 0, "p4": 0}
    assert ns.check_relations()
    assert is_isomorphic(ns, ns) is True
    assert is_isomorphic(ns, negative_simple(qp, "p2")) is False


def test_simple_rep(square1p):
    qp = surface_qp(square1p)
    s = simple_rep(qp, "p1")
    assert s.dims["p1"] == 1 and s.total_dim() == 1
    assert s.check_relations() and s.check_nilpotent()


def test_map_shape_validation(square1p):
    qp = surface_qp(square1p)
    with pytest.raises(ValueError):
        DecRep(qp, {"p1": 1, "p2": 1},
               maps={"T4:p1->p4": Matrix.zero(2, 1)})


def test_relations_and_nilpotency(nice_rep):
    assert nice_rep.check_relations()
    assert nice_rep.check_nilpotent()


def test_path_matrix_composition(nice_rep):
    q = nice_rep.quiver
    a = "T_qEB:j1->qB"
    b = "T_qEB:qE->j1"
    composed = nice_rep.path_matrix((a, b))
    assert composed == nice_rep.map(a) * nice_rep.map(b)


def test_direct_sum(square1p):
    qp = surface_qp(square1p)
    s = simple_rep(qp, "p1")
    total = direct_sum_rep(s, s)
    assert total.dims["p1"] == 2
    assert total.check_relations()


def test_isomorphism_respects_basis_change(nice_rep):
    # conjugating one vertex space by an invertible matrix keeps the iso class
    twisted_maps = dict(nice_rep.maps)
    g = Matrix.from_rows([[1, 1, 0], [0, 1, 2], [0, 0, 1]])
    ginv = g.inverse()
    q = nice_rep.quiver
    for name, m in list(twisted_maps.items()):
        arr = q.arrow(name)
        if arr.head == "j1":
            m = g * m
        if arr.tail == "j1":
            m = m * ginv
        twisted_maps[name] = m
    twisted = DecRep(nice_rep.qp, nice_rep.dims, twisted_maps, nice_rep.dec)
    assert is_isomorphic(nice_rep, twisted) is True


def test_not_isomorphic_when_dims_differ(nice_rep):
    smaller = DecRep(nice_rep.qp, {v: 0 for v in nice_rep.dims}, {}, nice_rep.dec)
    assert is_isomorphic(nice_rep, smaller) is False


def test_restriction(square1p):
    sp = load_tri("sphere6p")
    arc = load_arc("square1p_around", sp)
    big = arc_representation(sp, arc)
    keep = ["p1", "p2", "p3", "p4"]
    assert big.is_path_restrictable(keep)
    small = big.restrict(keep)
    direct = arc_representation(square1p, load_arc("square1p_around", square1p))
    # the restriction keeps the big vertex set: zero outside, matching inside
    assert {v: small.dims[v] for v in keep} == direct.dims
    assert all(small.dims[v] == 0
               for v in small.dims if v not in keep)
    for a in direct.qp.quiver.arrows:
        assert small.map(a.name) == direct.map(a.name)


def test_boundary_rep_components(nice_rep):
    br = boundary_rep(nice_rep, "j1")
    comps = br.components()
    assert len(comps) >= 1
