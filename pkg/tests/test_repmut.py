import pytest

from surfqp.arcrep import arc_representation
from surfqp.rep import is_isomorphic, negative_simple, simple_rep
from surfqp.repmut import (
    MutationWorkspace, g_vector, mutate_rep, mutate_rep_twice_relabeled,
    mutate_rep_via_boundary,
)
from surfqp.surface import surface_qp

from conftest import load_arc, load_tri


@pytest.fixture(scope="module")
def nice_rep():
    t = load_tri("hexagon2p")
    return arc_representation(t, load_arc("hexagon2p_nice", t))


def test_workspace_shapes(nice_rep):
    ws = MutationWorkspace(nice_rep, "j1")
    assert ws.amat.rows == nice_rep.dims["j1"]
    assert ws.bmat.cols == nice_rep.dims["j1"]
    assert ws.check_identities()


def test_mutation_of_negative_simple(square1p):
    qp = surface_qp(square1p)
    ns = negative_simple(qp, "p1")
    mu = mutate_rep(ns, "p1")
    # the negative simple turns into the plain simple module at p1
    assert mu.dims["p1"] == 1 and mu.total_dim() == 1
    assert all(v == 0 for v in mu.dec.values())


def test_mutation_of_simple(square1p):
    qp = surface_qp(square1p)
    s = simple_rep(qp, "p1")
    mu = mutate_rep(s, "p1")
    assert mu.total_dim() == 0 and mu.dec["p1"] == 1


def test_involutivity_single():
    t = load_tri("hexagon1p")
    rep = arc_representation(t, load_arc("hexagon1p_motivating", t))
    back = mutate_rep_twice_relabeled(rep, "PE")
    assert is_isomorphic(back, rep) is True


def test_mutated_rep_satisfies_relations(nice_rep):
    mu = mutate_rep(nice_rep, "j1")
    assert mu.check_relations()
    assert mu.check_nilpotent()


def test_via_boundary_agrees(nice_rep):
    for j in ("j1", "qB"):
        assert is_isomorphic(
            mutate_rep(nice_rep, j), mutate_rep_via_boundary(nice_rep, j)
        ) is True


def test_g_vector_negative_simple(square1p):
    qp = surface_qp(square1p)
    assert g_vector(negative_simple(qp, "p3")) == {
        "p1": 0, "p2": 0, "p3": 1, "p4": 0
    }


def test_g_vector_golden(nice_rep):
    assert g_vector(nice_rep) == {
        "j1": 0, "pA": 0, "pB": 2, "pE": -1, "pF": 0,
        "qB": -2, "qC": 1, "qD": 0, "qE": 1,
    }
