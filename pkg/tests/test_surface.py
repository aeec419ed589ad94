import pytest

from surfqp.surface import (
    Triangulation, TriangulationError, flip, flip_matches_mutation,
    reduced_quiver, surface_qp, triangulation_from_text, triangulation_to_text,
    unreduced_quiver,
)

from conftest import TRIANGULATIONS, corpus_text, load_tri


@pytest.mark.parametrize("name", TRIANGULATIONS)
def test_text_roundtrip(name):
    t = load_tri(name)
    again = triangulation_from_text(triangulation_to_text(t))
    assert again.triangles == t.triangles
    assert again.boundary == t.boundary
    assert again.scalars == t.scalars


def test_validation_rejects_bad_gluing():
    text = corpus_text("square1p.tri").replace("p4@m4", "p3@m4")
    with pytest.raises(TriangulationError):
        triangulation_from_text(text)


def test_square_structure(square1p):
    assert square1p.arcs == ["p1", "p2", "p3", "p4"]
    assert square1p.valence("P") == 4
    q = reduced_quiver(square1p)
    assert set(q.vertices) == {"p1", "p2", "p3", "p4"}
    # one arrow per interior corner: the 4-cycle around P
    assert len(q.arrows) == 4


def test_unreduced_vs_reduced(hexagon2p):
    qu = unreduced_quiver(hexagon2p)
    qr = reduced_quiver(hexagon2p)
    assert len(qu.arrows) >= len(qr.arrows)
    assert qr.is_two_acyclic()


def test_potential_terms(square1p):
    qp = surface_qp(square1p)
    # one interior triangle (T4 has all-arc sides... each triangle with >= 2
    # interior sides contributes) plus the puncture cycle at P
    assert len(qp.potential.terms) >= 1
    assert all(len(p.arrows) >= 3 for p in qp.potential.terms)


def test_flip_basic(square1p):
    fr = flip(square1p, "p1")
    assert fr.arc == "p1"
    assert set(fr.triangulation.arcs) == set(square1p.arcs)
    # flipping twice restores the arrow counts of the quiver
    back = flip(fr.triangulation, "p1")
    assert reduced_quiver(back.triangulation).same_arrow_counts(
        reduced_quiver(square1p)
    )


def test_flip_rejects_self_folded():
    t = load_tri("sphere7p")
    with pytest.raises(TriangulationError):
        flip(t, "i2")


def test_flip_matches_mutation_single(square1p):
    ok, rename = flip_matches_mutation(square1p, "p1")
    assert ok is True


def test_puncture_walk(square1p):
    walk = list(square1p.puncture_walk("P"))
    assert len(walk) == 4
