"""Exact-arithmetic tools for quivers with potentials on triangulated
surfaces and their decorated representations."""

__all__ = [
    "ratmat",
    "quiver",
    "pathalg",
    "qp",
    "rep",
    "repmut",
    "surface",
    "arcrep",
    "cli",
]
