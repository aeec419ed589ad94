"""Shared corpus loaders for the test suite."""

from importlib import resources

import pytest

from surfqp.arcrep import arc_from_text
from surfqp.surface import triangulation_from_text

CORPUS = resources.files("surfqp") / "corpus"

TRIANGULATIONS = [
    "annulus1p", "digon1p", "hexagon1p", "hexagon2p",
    "sphere6p", "sphere7p", "sphere9p", "square1p", "torus",
]

# (triangulation, arc file) pairs; every arc file loads on its base surface
# and on the closed-surface extension containing it.
ARC_CASES = [
    ("square1p", "square1p_around"),
    ("annulus1p", "annulus1p_cross"),
    ("hexagon1p", "hexagon1p_motivating"),
    ("hexagon2p", "hexagon2p_nice"),
    ("hexagon2p", "hexagon2p_monogon"),
    ("sphere6p", "square1p_around"),
    ("sphere7p", "annulus1p_cross"),
    ("sphere9p", "hexagon2p_nice"),
    ("sphere9p", "hexagon2p_monogon"),
]


def corpus_text(filename):
    return (CORPUS / filename).read_text()


def load_tri(name):
    return triangulation_from_text(corpus_text(name + ".tri"))


def load_arc(name, t=None):
    return arc_from_text(corpus_text(name + ".arc"), t)


@pytest.fixture(scope="session")
def square1p():
    return load_tri("square1p")


@pytest.fixture(scope="session")
def hexagon2p():
    return load_tri("hexagon2p")


@pytest.fixture(scope="session")
def torus():
    return load_tri("torus")
